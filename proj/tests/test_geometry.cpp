#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "packpair/geometry.hpp"

using namespace packpair;

namespace {

// Independent O(n^3) hull oracle: a point is a hull vertex iff some line
// through it and another point keeps every remaining point on one side.
std::vector<Point2> brute_force_hull_vertices(const std::vector<Point2>& pts) {
    std::vector<Point2> vertices;
    const auto cross3 = [](const Point2& a, const Point2& b, const Point2& c) {
        return (b - a).cross(c - a);
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        bool on_hull = false;
        for (size_t j = 0; j < pts.size() && !on_hull; ++j) {
            if (i == j) continue;
            bool all_left = true, all_right = true;
            for (size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                const double c = cross3(pts[i], pts[j], pts[k]);
                if (c < -1e-12) all_left = false;
                if (c > 1e-12) all_right = false;
            }
            if (all_left || all_right) on_hull = true;
        }
        if (on_hull) vertices.push_back(pts[i]);
    }
    return vertices;
}

bool contains_point(const std::vector<Point2>& set, const Point2& p, double tol = 1e-9) {
    return std::any_of(set.begin(), set.end(), [&](const Point2& q) {
        return (q - p).norm() <= tol;
    });
}

}  // namespace

TEST_CASE("wrap_angle canonicalizes to (-pi, pi]") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
    CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
}

TEST_CASE("signed_angle basic directions") {
    CHECK(signed_angle({1, 0}, {1, 0}) == doctest::Approx(0.0));
    CHECK(signed_angle({1, 0}, {0, 1}) == doctest::Approx(kPi / 2.0));
    // Half turn lands on +pi, never -pi.
    CHECK(signed_angle({1, 0}, {-1, 0}) == doctest::Approx(kPi));
    CHECK(signed_angle({1, 0}, {-1, -1e-9}) < 0.0);
    CHECK_THROWS_AS(signed_angle({0, 0}, {1, 0}), DegenerateInput);
}

TEST_CASE("signed_angle antisymmetry away from the branch cut") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Vec2 a{uni(rng), uni(rng)};
        const Vec2 b{uni(rng), uni(rng)};
        if (a.norm() < 1e-3 || b.norm() < 1e-3) continue;
        const double ab = signed_angle(a, b);
        if (std::abs(std::abs(ab) - kPi) < 1e-9) continue;
        CHECK(signed_angle(b, a) == doctest::Approx(-ab).epsilon(1e-12));
    }
}

TEST_CASE("convex_hull removes interior points and keeps triangles") {
    const Polygon square = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(square.vertices.size() == 4);
    const Polygon tri = convex_hull({{0, 0}, {2, 0}, {1, 1}});
    CHECK(tri.vertices.size() == 3);
    CHECK(polygon_area(tri) == doctest::Approx(1.0));
    CHECK(polygon_area(square) > 0.0);  // counter-clockwise
}

TEST_CASE("convex_hull degenerate inputs") {
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), DegenerateInput);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateInput);
    CHECK_THROWS_AS(convex_hull({{1, 1}, {1, 1}, {1, 1}}), DegenerateInput);
}

TEST_CASE("convex_hull matches the brute-force oracle on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-50.0, 50.0);
    for (int round = 0; round < 10; ++round) {
        std::vector<Point2> pts;
        for (int i = 0; i < 60; ++i) pts.push_back({uni(rng), uni(rng)});
        const Polygon hull = convex_hull(pts);
        const auto oracle = brute_force_hull_vertices(pts);
        for (const Point2& v : hull.vertices) CHECK(contains_point(oracle, v));
        for (const Point2& p : pts) CHECK(point_in_convex_polygon(hull, p, 1e-9));
        // Idempotence.
        const Polygon again = convex_hull(hull.vertices);
        CHECK(again.vertices.size() == hull.vertices.size());
    }
}

TEST_CASE("hull of points sampled in a rotated rectangle stays inside it") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double angle = 0.61;
    const Vec2 ux = rotate2({1, 0}, angle), uy = rotate2({0, 1}, angle);
    const Vec2 origin{12.0, -3.0};
    std::vector<Point2> pts;
    for (int i = 0; i < 1000; ++i) {
        const double a = uni(rng) * 200.0, b = uni(rng) * 120.0;
        pts.push_back(origin + ux * a + uy * b);
    }
    const Polygon hull = convex_hull(pts);
    for (const Point2& v : hull.vertices) {
        const Vec2 rel = v - origin;
        CHECK(rel.dot(ux) >= -1e-9);
        CHECK(rel.dot(ux) <= 200.0 + 1e-9);
        CHECK(rel.dot(uy) >= -1e-9);
        CHECK(rel.dot(uy) <= 120.0 + 1e-9);
    }
}

TEST_CASE("min_area_rect on axis-aligned and rotated squares") {
    const Polygon square = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const RectFit fit = min_area_rect(square);
    CHECK(fit.center.x == doctest::Approx(0.5));
    CHECK(fit.center.y == doctest::Approx(0.5));
    CHECK(fit.half_extents.x == doctest::Approx(0.5));
    CHECK(fit.half_extents.y == doctest::Approx(0.5));
    CHECK(fit.angle == doctest::Approx(0.0));

    const double rot = 30.0 * kPi / 180.0;
    std::vector<Point2> pts;
    for (const Point2& p : square.vertices) pts.push_back(rotate2(p, rot));
    const RectFit fit30 = min_area_rect(convex_hull(pts));
    CHECK(std::fmod(fit30.angle, kPi / 2.0) == doctest::Approx(rot));
    CHECK(fit30.half_extents.x == doctest::Approx(0.5));
    CHECK(fit30.half_extents.y == doctest::Approx(0.5));
}

TEST_CASE("min_area_rect matches a dense angle sweep on random octagons") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int round = 0; round < 5; ++round) {
        std::vector<Point2> pts;
        for (int i = 0; i < 8; ++i) pts.push_back({uni(rng) * 40.0, uni(rng) * 25.0});
        Polygon hull;
        try {
            hull = convex_hull(pts);
        } catch (const DegenerateInput&) {
            continue;
        }
        const RectFit fit = min_area_rect(hull);
        const double area = 4.0 * fit.half_extents.x * fit.half_extents.y;

        double best = 1e300;
        for (double deg = 0.0; deg < 90.0; deg += 0.01) {
            const double ang = deg * kPi / 180.0;
            double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
            for (const Point2& p : hull.vertices) {
                const Vec2 q = rotate2(p, -ang);
                lo_x = std::min(lo_x, q.x);
                hi_x = std::max(hi_x, q.x);
                lo_y = std::min(lo_y, q.y);
                hi_y = std::max(hi_y, q.y);
            }
            best = std::min(best, (hi_x - lo_x) * (hi_y - lo_y));
        }
        CHECK(area <= best * 1.001);
        CHECK(area >= best * 0.999);

        // Never worse than the axis-aligned bounding box.
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (const Point2& p : hull.vertices) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
        CHECK(area <= (hi_x - lo_x) * (hi_y - lo_y) + 1e-9);
    }
}

TEST_CASE("min_area_rect rejects degenerate polygons") {
    Polygon line;
    line.vertices = {{0, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(min_area_rect(line), DegenerateInput);
}

TEST_CASE("rotate_about_line turns a point around an arbitrary axis") {
    const Vec3 q = rotate_about_line({1, 0, 0}, {0, 0, 0}, {0, 0, 1}, kPi / 2.0);
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(1.0));
    const Vec3 r = rotate_about_line({2, 3, 4}, {2, 3, 0}, {0, 0, 1}, 1.234);
    CHECK(r.x == doctest::Approx(2.0));
    CHECK(r.y == doctest::Approx(3.0));
    CHECK(r.z == doctest::Approx(4.0));
}

TEST_CASE("pose rotation composes roll, pitch, yaw about fixed axes") {
    const Pose pose({0, 0, 0}, kPi / 2.0, 0.0, kPi / 2.0);
    const Vec3 v = pose.rotate({0, 0, 1});
    // Rx(pi/2) sends z to -y, then Rz(pi/2) sends -y to x.
    CHECK(v.x == doctest::Approx(1.0));
    CHECK(v.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(v.z == doctest::Approx(0.0).epsilon(1e-12));
}
