#include "packpair/reorientation.hpp"

#include <algorithm>
#include <cmath>

namespace packpair {

namespace {

constexpr double kPushOvertravel = 1.2;  // multiple of the shoe width

Vec2 shoe_axis(const ShoePose& pose) { return {std::cos(pose.yaw), std::sin(pose.yaw)}; }

double lateral_distance(const Vec3& a, const Vec3& b, const Vec2& axis) {
    const Vec2 d = (a - b).xy();
    return std::abs(d.cross(axis));
}

}  // namespace

std::string to_string(TopplingKind k) {
    switch (k) {
        case TopplingKind::Push: return "push";
        case TopplingKind::RotateSide: return "rotate_side";
        case TopplingKind::RotateTop: return "rotate_top";
    }
    return "push";
}

ShoeExtent shoe_extent(const KeypointSet& k, const ShoePose& pose, ShoeState state,
                       double table_height) {
    if (classify_state(k) != state)
        throw InconsistentKeypoints("keypoint pattern disagrees with the stated state");
    const Vec2 axis = shoe_axis(pose);
    constexpr double f_th = KeypointChart::toe_heel_height;

    ShoeExtent ext;
    switch (state) {
        case ShoeState::Top:
            ext.width = lateral_distance(*k.inside, *k.outside, axis);
            ext.height = k.topline->z - table_height;
            break;
        case ShoeState::Bottom: {
            ext.width = lateral_distance(*k.inside, *k.outside, axis);
            // Toe/heel sit highest when the sole faces up, at (1 - f_th) * H.
            const double top = std::max(k.toe->z, k.heel->z) - table_height;
            ext.height = top / (1.0 - f_th);
            break;
        }
        case ShoeState::SideInsideUp:
        case ShoeState::SideOutsideUp: {
            const Vec3& up = state == ShoeState::SideInsideUp ? *k.inside : *k.outside;
            ext.width = up.z - table_height;
            // Topline lies (1 - f_th) * H from the toe-heel axis, horizontally.
            const Vec2 off = (*k.topline - pose.position).xy();
            ext.height = std::abs(off.cross(axis)) / (1.0 - f_th);
            break;
        }
    }
    if (ext.width <= 0.0 || ext.height <= 0.0)
        throw InconsistentKeypoints("non-positive extent from keypoints");
    return ext;
}

TopplingSolution solve_side_toppling(const ShoeExtent& ext, const GripperModel& g) {
    const double W = ext.width, H = ext.height, L = g.length;
    if (W <= 0.0 || H <= 0.0 || L <= 0.0) throw DegenerateInput("non-positive dimensions");
    TopplingSolution s;
    s.theta = std::atan2(H, W);
    const double required = (W / L) * std::sin(s.theta / 2.0);
    if (required > 1.0) throw NoSolution("gripper too short for the side rotation chord");
    if (W >= L) throw Infeasible("shoe width reaches the gripper length");
    s.alpha = 2.0 * std::asin(required);
    s.beta = s.alpha / 2.0 + s.theta / 2.0;
    // Collision bound: the tilted tip may descend at most the lying height.
    // The record reports it; the dispatcher rejects plans that violate it.
    s.beta_max = std::acos(1.0 - W / L);
    return s;
}

TopplingSolution solve_top_toppling(const ShoeExtent& ext, const GripperModel& g) {
    const double W = ext.width, H = ext.height, L = g.length;
    if (W <= 0.0 || H <= 0.0 || L <= 0.0) throw DegenerateInput("non-positive dimensions");
    TopplingSolution s;
    s.theta = std::atan2(W, H);
    const double radius = std::hypot(W / 2.0, H);
    const double required = (radius / L) * std::sin(s.theta / 2.0);
    if (required > 1.0) throw NoSolution("gripper too short for the top rotation chord");
    if (H >= L) throw Infeasible("shoe height reaches the gripper length");
    s.alpha = 2.0 * std::asin(required);
    s.beta = s.alpha / 2.0 + s.theta / 2.0 - std::atan2(W / 2.0, H);
    s.beta_max = std::acos(1.0 - H / L);
    if (s.beta < 0.0) throw Infeasible("negative initial gripper angle");
    return s;
}

Vec2 topple_direction(const KeypointSet& k, const ShoePose& pose) {
    if (!k.topline) throw InconsistentKeypoints("topline not visible");
    const ShoeState state = classify_state(k);
    if (!is_side(state)) throw InconsistentKeypoints("topple_direction needs a side state");
    const Vec2 axis = shoe_axis(pose);
    const Vec2 off = (*k.topline - pose.position).xy();
    const Vec2 lateral = off - axis * off.dot(axis);
    if (lateral.norm() <= 1e-12)
        throw InconsistentKeypoints("topline has no lateral offset");
    return lateral.normalized();
}

TopplingPlan push_plan(const KeypointSet& k, const ShoePose& pose, ShoeState target_side,
                       double table_height) {
    if (classify_state(k) != ShoeState::Bottom) throw WrongState("push requires the bottom state");
    if (!is_side(target_side)) throw WrongState("push target must be a side variant");

    const Vec3& from = target_side == ShoeState::SideInsideUp ? *k.inside : *k.outside;
    const Vec3& to = target_side == ShoeState::SideInsideUp ? *k.outside : *k.inside;
    // Exactly lateral even with noisy keypoints.
    const Vec2 lateral = shoe_axis(pose).perp();
    const double span = (to - from).xy().dot(lateral);
    if (std::abs(span) <= 1e-9) throw InconsistentKeypoints("lateral keypoints coincide");
    const Vec2 direction = span >= 0.0 ? lateral : lateral * -1.0;
    const double width = std::abs(span);
    const double mid_height =
        table_height + 0.5 * (std::max(k.toe->z, k.heel->z) - table_height);

    const Vec3 contact{from.x, from.y, mid_height};
    const Vec3 start = contact - Vec3{direction.x, direction.y, 0.0} * width;
    const Vec3 end = start + Vec3{direction.x, direction.y, 0.0} * (width * kPushOvertravel);
    const double push_yaw = std::atan2(direction.y, direction.x);

    TopplingPlan plan;
    plan.kind = TopplingKind::Push;
    plan.start = Pose(start, 0.0, 0.0, push_yaw);
    plan.end = Pose(end, 0.0, 0.0, push_yaw);
    plan.direction = direction;
    plan.resulting_state = target_side;
    return plan;
}

TopplingPlan plan_toppling(const KeypointSet& k, const ShoePose& pose, ShoeState state,
                           double table_height, const GripperModel& g,
                           std::optional<ShoeState> target_side) {
    if (classify_state(k) != state)
        throw InconsistentKeypoints("keypoint pattern disagrees with the stated state");

    if (state == ShoeState::Bottom)
        return push_plan(k, pose, target_side.value_or(ShoeState::SideInsideUp), table_height);

    const ShoeExtent ext = shoe_extent(k, pose, state, table_height);
    const Vec2 axis = shoe_axis(pose);
    const Vec2 y_axis = axis.perp();
    const Vec3 axis3{axis.x, axis.y, 0.0};

    if (is_side(state)) {
        const TopplingSolution sol = solve_side_toppling(ext, g);
        if (sol.beta > sol.beta_max)
            throw Infeasible("side rotation: initial gripper angle exceeds the collision bound");
        const Vec2 dir = topple_direction(k, pose);
        // Sole contact line lies opposite the topline, under the toe-heel axis.
        const double sole_offset = KeypointChart::toe_heel_height * ext.height;
        const Vec3 edge_point{pose.position.x - dir.x * sole_offset,
                              pose.position.y - dir.y * sole_offset, table_height};
        const Vec3 contact = edge_point + Vec3{0.0, 0.0, ext.width};
        // Body rotation sense about the shoe X axis that lifts the shoe onto
        // its sole (contact swings away from the topline side).
        const double sense = dir.dot(y_axis) >= 0.0 ? 1.0 : -1.0;

        TopplingPlan plan;
        plan.kind = TopplingKind::RotateSide;
        plan.start = Pose(contact, 0.0, 0.0, pose.yaw);
        plan.start.roll = sense * sol.beta;
        plan.end = Pose(rotate_about_line(contact, edge_point, axis3, sense * sol.theta), 0.0,
                        0.0, pose.yaw);
        plan.end.roll = sense * (sol.beta - sol.alpha);
        plan.solution = sol;
        plan.direction = dir;
        plan.resulting_state = ShoeState::Top;
        return plan;
    }

    if (state == ShoeState::Top) {
        const TopplingSolution sol = solve_top_toppling(ext, g);
        if (sol.beta > sol.beta_max)
            throw Infeasible("top rotation: initial gripper angle exceeds the collision bound");
        const ShoeState target = target_side.value_or(ShoeState::SideInsideUp);
        if (!is_side(target)) throw WrongState("top toppling target must be a side variant");
        // The face that lands on the table is the one toward the fall
        // direction; body +Y carries the inside keypoint.
        const Vec2 dir = target == ShoeState::SideInsideUp ? y_axis * -1.0 : y_axis;
        const Vec3 edge_point{pose.position.x + dir.x * ext.width / 2.0,
                              pose.position.y + dir.y * ext.width / 2.0, table_height};
        const Vec3 contact{pose.position.x, pose.position.y, table_height + ext.height};
        const double sense = dir.dot(y_axis) >= 0.0 ? -1.0 : 1.0;

        TopplingPlan plan;
        plan.kind = TopplingKind::RotateTop;
        plan.start = Pose(contact, 0.0, 0.0, pose.yaw);
        plan.start.roll = sense * sol.beta;
        plan.end = Pose(rotate_about_line(contact, edge_point, axis3, sense * sol.theta), 0.0,
                        0.0, pose.yaw);
        plan.end.roll = sense * (sol.beta - sol.alpha);
        plan.solution = sol;
        plan.direction = dir;
        plan.resulting_state = target;
        return plan;
    }
    throw WrongState("no toppling rule for this state");
}

}  // namespace packpair
