#include "packpair/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace packpair {

double wrap_angle(double a) {
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

double signed_angle(const Vec2& reference, const Vec2& target) {
    if (reference.norm() == 0.0 || target.norm() == 0.0)
        throw DegenerateInput("signed_angle: zero vector");
    return wrap_angle(std::atan2(reference.cross(target), reference.dot(target)));
}

Vec3 Pose::rotate(const Vec3& v) const {
    const double cr = std::cos(roll), sr = std::sin(roll);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    // Rx
    Vec3 a{v.x, cr * v.y - sr * v.z, sr * v.y + cr * v.z};
    // Ry
    Vec3 b{cp * a.x + sp * a.z, a.y, -sp * a.x + cp * a.z};
    // Rz
    return {cy * b.x - sy * b.y, sy * b.x + cy * b.y, b.z};
}

double polygon_area(const Polygon& poly) {
    double twice = 0.0;
    const auto& v = poly.vertices;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

bool point_in_convex_polygon(const Polygon& hull, const Point2& p, double tol) {
    const auto& v = hull.vertices;
    if (v.size() < 3) return false;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if ((b - a).cross(p - a) < -tol) return false;
    }
    return true;
}

namespace {

double orient(const Point2& a, const Point2& b, const Point2& c) {
    return (b - a).cross(c - a);
}

}  // namespace

Polygon convex_hull(const std::vector<Point2>& points) {
    std::vector<Point2> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

    const size_t n = pts.size();
    std::vector<Point2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInput("convex_hull: collinear input");
    return Polygon{hull};
}

Vec2 rotate2(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

RectFit min_area_rect(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3 || std::abs(polygon_area(poly)) <= 0.0)
        throw DegenerateInput("min_area_rect: degenerate polygon");

    RectFit best;
    double best_area = -1.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 edge = v[(i + 1) % v.size()] - v[i];
        if (edge.norm() == 0.0) continue;
        const double theta = std::atan2(edge.y, edge.x);
        double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
        bool first = true;
        for (const Point2& p : v) {
            const Vec2 q = rotate2(p, -theta);
            if (first) {
                lo_x = hi_x = q.x;
                lo_y = hi_y = q.y;
                first = false;
            } else {
                lo_x = std::min(lo_x, q.x);
                hi_x = std::max(hi_x, q.x);
                lo_y = std::min(lo_y, q.y);
                hi_y = std::max(hi_y, q.y);
            }
        }
        const double area = (hi_x - lo_x) * (hi_y - lo_y);
        if (best_area < 0.0 || area < best_area) {
            best_area = area;
            const Vec2 c_local{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
            best.center = rotate2(c_local, theta);
            best.half_extents = {0.5 * (hi_x - lo_x), 0.5 * (hi_y - lo_y)};
            best.angle = theta;
        }
    }
    // Canonical angle in [0, pi/2); extents swap when the angle folds.
    double a = std::fmod(best.angle, kPi);
    if (a < 0.0) a += kPi;
    if (a >= kPi / 2.0) {
        a -= kPi / 2.0;
        std::swap(best.half_extents.x, best.half_extents.y);
    }
    best.angle = a;
    return best;
}

Vec3 rotate_about_line(const Vec3& point, const Vec3& line_point, const Vec3& axis,
                       double angle) {
    const Vec3 k = axis * (1.0 / axis.norm());
    const Vec3 r = point - line_point;
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec3 rotated = r * c + k.cross(r) * s + k * (k.dot(r) * (1.0 - c));
    return rotated + line_point;
}

}  // namespace packpair
