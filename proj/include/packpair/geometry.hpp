#pragma once

#include <cmath>
#include <vector>

#include "packpair/errors.hpp"

namespace packpair {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // scalar cross product (z component of the 3D cross)
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        double n = norm();
        if (n <= 0.0) throw DegenerateInput("cannot normalize zero vector");
        return {x / n, y / n};
    }
    Vec2 perp() const { return {-y, x}; }
};

using Point2 = Vec2;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec2 xy() const { return {x, y}; }
};

// Wraps an angle to (-pi, pi]; the half turn is canonically +pi.
double wrap_angle(double a);

/// Two-argument arctangent of (reference x target, reference . target),
/// in (-pi, pi]. Throws DegenerateInput on a zero vector.
double signed_angle(const Vec2& reference, const Vec2& target);

// Rigid pose: position in mm, orientation as fixed-axis roll/pitch/yaw
// (R = Rz(yaw) * Ry(pitch) * Rx(roll)), each wrapped to (-pi, pi].
struct Pose {
    Vec3 position;
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;

    Pose() = default;
    Pose(Vec3 p, double roll_, double pitch_, double yaw_)
        : position(p),
          roll(wrap_angle(roll_)),
          pitch(wrap_angle(pitch_)),
          yaw(wrap_angle(yaw_)) {}

    Vec3 rotate(const Vec3& v) const;
    Vec3 transform(const Vec3& v) const { return rotate(v) + position; }
};

struct Polygon {
    std::vector<Point2> vertices;
};

double polygon_area(const Polygon& poly);

// Signed-area containment test against a counter-clockwise convex polygon.
bool point_in_convex_polygon(const Polygon& hull, const Point2& p, double tol = 1e-9);

/// Convex hull (monotone chain). Output is strictly convex,
/// counter-clockwise, without duplicate or collinear vertices.
/// Throws DegenerateInput for fewer than 3 distinct points or a
/// collinear input set.
Polygon convex_hull(const std::vector<Point2>& points);

struct RectFit {
    Point2 center;
    Vec2 half_extents;  // along `angle` and `angle + pi/2` respectively
    double angle = 0.0;  // normalized to [0, pi/2)
};

/// Minimum-area enclosing rectangle via rotating calipers: one rectangle
/// side is collinear with a hull edge. Throws DegenerateInput for
/// zero-area polygons.
RectFit min_area_rect(const Polygon& poly);

Vec2 rotate2(const Vec2& v, double angle);

// Rodrigues rotation of `point` about the line (line_point, unit axis).
Vec3 rotate_about_line(const Vec3& point, const Vec3& line_point, const Vec3& axis,
                       double angle);

}  // namespace packpair
