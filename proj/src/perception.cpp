#include "packpair/perception.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace packpair {

ShoeState opposite_side(ShoeState s) {
    if (s == ShoeState::SideInsideUp) return ShoeState::SideOutsideUp;
    if (s == ShoeState::SideOutsideUp) return ShoeState::SideInsideUp;
    throw WrongState("opposite_side: not a side state");
}

std::string to_string(ShoeState s) {
    switch (s) {
        case ShoeState::Top: return "top";
        case ShoeState::Bottom: return "bottom";
        case ShoeState::SideInsideUp: return "side_inside_up";
        case ShoeState::SideOutsideUp: return "side_outside_up";
    }
    return "top";
}

ShoeState shoe_state_from_string(const std::string& name) {
    if (name == "top") return ShoeState::Top;
    if (name == "bottom") return ShoeState::Bottom;
    if (name == "side_inside_up") return ShoeState::SideInsideUp;
    if (name == "side_outside_up") return ShoeState::SideOutsideUp;
    throw ParseError("unknown shoe state: " + name);
}

double state_roll(ShoeState s) {
    switch (s) {
        case ShoeState::Top: return 0.0;
        case ShoeState::Bottom: return kPi;
        case ShoeState::SideInsideUp: return kPi / 2.0;
        case ShoeState::SideOutsideUp: return -kPi / 2.0;
    }
    return 0.0;
}

std::array<Vec3, 5> body_keypoints(const ShoeModel& m) {
    const double h_th = KeypointChart::toe_heel_height * m.height;
    const double h_lat = KeypointChart::lateral_height * m.height;
    return {
        Vec3{m.length / 2.0, 0.0, h_th},                       // toe
        Vec3{-m.length / 2.0, 0.0, h_th},                      // heel
        Vec3{KeypointChart::topline_x * m.length, 0.0, m.height},  // topline
        Vec3{0.0, -m.width / 2.0, h_lat},                      // outside
        Vec3{0.0, m.width / 2.0, h_lat},                       // inside
    };
}

double resting_height(const ShoeModel& m, ShoeState state) {
    const double h_th = KeypointChart::toe_heel_height * m.height;
    switch (state) {
        case ShoeState::Top: return h_th;
        case ShoeState::Bottom: return m.height - h_th;
        case ShoeState::SideInsideUp:
        case ShoeState::SideOutsideUp: return m.width / 2.0;
    }
    return h_th;
}

ShoeState classify_state(const KeypointSet& k) {
    if (!k.toe || !k.heel)
        throw InconsistentKeypoints("toe and heel must always be visible");
    const bool tl = k.topline.has_value();
    const bool in = k.inside.has_value();
    const bool out = k.outside.has_value();
    if (tl && in && out) return ShoeState::Top;
    if (!tl && in && out) return ShoeState::Bottom;
    if (tl && !in && out) return ShoeState::SideOutsideUp;
    if (tl && in && !out) return ShoeState::SideInsideUp;
    throw InconsistentKeypoints("visibility pattern matches no state");
}

ShoePose estimate_shoe_pose(const KeypointSet& k, ShoeState s, const Vec2& reference_axis) {
    if (!k.toe || !k.heel) throw InconsistentKeypoints("toe and heel required");
    if (reference_axis.norm() == 0.0) throw DegenerateInput("zero reference axis");
    const Vec3 toe = *k.toe;
    const Vec3 heel = *k.heel;
    const Vec2 heel_to_toe = (toe - heel).xy();
    if (heel_to_toe.norm() <= 0.0)
        throw DegenerateInput("toe and heel coincide in the table plane");
    ShoePose pose;
    pose.position = (toe + heel) * 0.5;
    pose.yaw = signed_angle(reference_axis, heel_to_toe);
    pose.roll = state_roll(s);
    return pose;
}

GraspPose grasp_pose(const ShoePose& p) { return GraspPose{p.position, p.yaw}; }

namespace {

std::array<Point2, 4> rect_corners_ccw(const RectFit& rect) {
    const Vec2 ux = rotate2({1.0, 0.0}, rect.angle);
    const Vec2 uy = ux.perp();
    const double hx = rect.half_extents.x;
    const double hy = rect.half_extents.y;
    return {
        rect.center + ux * hx + uy * hy,
        rect.center - ux * hx + uy * hy,
        rect.center - ux * hx - uy * hy,
        rect.center + ux * hx - uy * hy,
    };
}

BoxPose assemble_box_pose(const std::array<Point2, 4>& corners, const Point2& hinge_hint,
                          bool have_hint, double floor_z = 0.0) {
    struct Side {
        Point2 mid;
        Vec2 dir;
        double len;
    };
    std::array<Side, 4> sides;
    Point2 center{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const Point2& a = corners[i];
        const Point2& b = corners[(i + 1) % 4];
        sides[i] = {(a + b) * 0.5, (b - a).normalized(), (b - a).norm()};
        center = center + a * 0.25;
    }
    // Opposite sides pair up; the longer pair carries pA.
    const bool even_long = sides[0].len + sides[2].len >= sides[1].len + sides[3].len;
    const int long_a = even_long ? 0 : 1;
    const int long_b = long_a + 2;
    const int short_a = even_long ? 1 : 0;
    const int short_b = short_a + 2;

    int hinge = long_a;
    if (have_hint) {
        const double da = (sides[long_a].mid - hinge_hint).norm();
        const double db = (sides[long_b].mid - hinge_hint).norm();
        hinge = da <= db ? long_a : long_b;
    } else {
        const double da = sides[long_a].mid.norm();
        const double db = sides[long_b].mid.norm();
        hinge = da <= db ? long_a : long_b;
    }

    const Vec2 toward_center = (center - sides[hinge].mid).normalized();
    int b_side = short_a;
    if (toward_center.cross(sides[short_a].mid - center) >= 0.0) b_side = short_b;
    const int c_side = b_side == short_a ? short_b : short_a;

    auto side_pose = [floor_z](const Side& s) {
        return Pose(Vec3{s.mid.x, s.mid.y, floor_z}, 0.0, 0.0, std::atan2(s.dir.y, s.dir.x));
    };
    BoxPose out;
    out.corners = corners;
    out.pA = side_pose(sides[hinge]);
    out.pB = side_pose(sides[b_side]);
    out.pC = side_pose(sides[c_side]);
    return out;
}

}  // namespace

BoxPose estimate_box_pose(const std::vector<Point2>& contour, const BoxModel& dims) {
    if (contour.size() < 4) throw DegenerateInput("box contour needs at least 4 points");
    const Polygon hull = convex_hull(contour);
    const RectFit rect = min_area_rect(hull);

    const double fit_long = 2.0 * std::max(rect.half_extents.x, rect.half_extents.y);
    const double fit_short = 2.0 * std::min(rect.half_extents.x, rect.half_extents.y);
    const double want_long = std::max(dims.length, dims.width);
    const double want_short = std::min(dims.length, dims.width);
    if (std::abs(fit_long - want_long) > 0.25 * want_long ||
        std::abs(fit_short - want_short) > 0.25 * want_short)
        throw DegenerateInput("contour does not match the box dimensions");

    const auto rc = rect_corners_ccw(rect);
    if (hull.vertices.size() < 4)
        throw AmbiguousCorners("hull has fewer than 4 vertices");

    // Per rect corner, the four nearest hull vertices; exhaustive injective
    // assignment minimizing the total distance.
    const size_t n = hull.vertices.size();
    std::array<std::vector<size_t>, 4> cand;
    for (int c = 0; c < 4; ++c) {
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        std::partial_sort(idx.begin(), idx.begin() + std::min<size_t>(4, n), idx.end(),
                          [&](size_t a, size_t b) {
                              return (hull.vertices[a] - rc[c]).norm() <
                                     (hull.vertices[b] - rc[c]).norm();
                          });
        idx.resize(std::min<size_t>(4, n));
        cand[c] = idx;
    }
    double best = std::numeric_limits<double>::infinity();
    std::array<size_t, 4> pick{};
    bool found = false;
    for (size_t a : cand[0])
        for (size_t b : cand[1])
            for (size_t c : cand[2])
                for (size_t d : cand[3]) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    const double total = (hull.vertices[a] - rc[0]).norm() +
                                         (hull.vertices[b] - rc[1]).norm() +
                                         (hull.vertices[c] - rc[2]).norm() +
                                         (hull.vertices[d] - rc[3]).norm();
                    if (total < best) {
                        best = total;
                        pick = {a, b, c, d};
                        found = true;
                    }
                }
    if (!found) throw AmbiguousCorners("rect corners collapse onto the same hull points");

    std::array<Point2, 4> corners{hull.vertices[pick[0]], hull.vertices[pick[1]],
                                  hull.vertices[pick[2]], hull.vertices[pick[3]]};

    // Lid mass: contour points clearly outside the fitted corner quad.
    Polygon quad{std::vector<Point2>(corners.begin(), corners.end())};
    Point2 lid_centroid{0.0, 0.0};
    int lid_count = 0;
    for (const Point2& p : contour) {
        if (!point_in_convex_polygon(quad, p, 1.0)) {
            lid_centroid = lid_centroid + p;
            ++lid_count;
        }
    }
    if (lid_count > 0) lid_centroid = lid_centroid * (1.0 / lid_count);
    return assemble_box_pose(corners, lid_centroid, lid_count > 0);
}

BoxPose box_pose_from_model(const BoxModel& dims, const Vec2& center, double yaw,
                            double floor_z) {
    const Vec2 ux = rotate2({1.0, 0.0}, yaw);
    const Vec2 uy = ux.perp();
    const double hl = dims.length / 2.0;
    const double hw = dims.width / 2.0;
    const std::array<Point2, 4> corners = {
        center + ux * hl + uy * hw,
        center - ux * hl + uy * hw,
        center - ux * hl - uy * hw,
        center + ux * hl - uy * hw,
    };
    // Hinge convention for modeled boxes: the long side on the local -Y.
    return assemble_box_pose(corners, center - uy * hw, true, floor_z);
}

double side_x_sign(const BoxPose& box, ShoeState variant) {
    if (!is_side(variant)) throw WrongState("side_x_sign needs a side variant");
    const Vec2 pb = box.pB.position.xy();
    const Vec2 pc = box.pC.position.xy();
    const Vec2 long_dir = (pc - pb).normalized();
    const Vec2 lat_dir = long_dir.perp();
    const Vec2 center = (pb + pc) * 0.5;
    const double eps = lat_dir.dot(box.pA.position.xy() - center) > 0.0 ? 1.0 : -1.0;
    // With X = s * long_dir, the sole normal of SideInsideUp is -s * lat_dir
    // and of SideOutsideUp is +s * lat_dir; it must point toward pA.
    return variant == ShoeState::SideInsideUp ? -eps : eps;
}

KeypointSet synthesize_keypoints(const ShoeModel& model, const ShoePose& pose,
                                 ShoeState state, double noise_sigma, std::uint64_t seed) {
    const auto body = body_keypoints(model);
    const Vec3 body_mid{0.0, 0.0, KeypointChart::toe_heel_height * model.height};
    const Pose frame(pose.position, pose.roll, 0.0, pose.yaw);

    std::array<std::optional<Vec3>, 5> world;
    for (int i = 0; i < 5; ++i) world[i] = frame.transform(body[i] - body_mid);

    switch (state) {
        case ShoeState::Top: break;
        case ShoeState::Bottom: world[2].reset(); break;       // topline occluded
        case ShoeState::SideInsideUp: world[3].reset(); break;  // outside faces the table
        case ShoeState::SideOutsideUp: world[4].reset(); break;  // inside faces the table
    }

    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (auto& kp : world) {
            if (!kp) continue;
            kp->x += noise(rng);
            kp->y += noise(rng);
            kp->z += noise(rng);
        }
    }
    return KeypointSet{world[0], world[1], world[2], world[3], world[4]};
}

}  // namespace packpair
