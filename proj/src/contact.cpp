#include "packpair/contact.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace packpair {

CrossSection cross_section(const ShoeModel& model) {
    return CrossSection{model.width, model.height, model.height / 2.0, 0.0};
}

namespace {

void validate(const CrossSection& cs, const EdgePlacement& p) {
    if (cs.width <= 0.0 || cs.height <= 0.0) throw DegenerateInput("non-positive cross-section");
    if (cs.com_height <= 0.0 || cs.com_height >= cs.height)
        throw DegenerateInput("com_height outside (0, H)");
    if (std::abs(cs.com_lateral) >= cs.width / 2.0)
        throw DegenerateInput("com_lateral outside (-W/2, W/2)");
    if (std::abs(p.offset) >= cs.width / 2.0)
        throw DegenerateInput("offset magnitude reaches half the width");
    if (p.drop_height < 0.0) throw DegenerateInput("negative drop height");
}

}  // namespace

ContactOutcome predict_contact_outcome(const CrossSection& cs, const EdgePlacement& placement) {
    validate(cs, placement);
    const double sigma = placement.offset >= 0.0 ? 1.0 : -1.0;
    const double arm = sigma * (placement.offset - cs.com_lateral);
    if (arm <= 0.0) throw NoRotation("gravity torque about the edge is not positive");

    const double lean = std::atan2(arm, cs.com_height);
    const double ratio = std::min(1.0, placement.drop_height / (cs.width / 2.0));
    const double phi_floor = std::asin(ratio);

    ContactOutcome out;
    out.rotation_at_floor = lean + phi_floor;
    out.settled = true;
    if (out.rotation_at_floor >= kPi / 2.0 - 1e-12) {
        // Landing on the leading face: positive offsets lead with the
        // inside face, so the outside keypoint ends facing up.
        out.final_state = sigma > 0.0 ? ShoeState::SideOutsideUp : ShoeState::SideInsideUp;
    } else {
        out.final_state = ShoeState::Bottom;
    }
    return out;
}

EdgePlacement plan_edge_placement(const BoxPose& box, const BoxModel& dims,
                                  const ShoeModel& model, ShoeState desired_final,
                                  bool second_shoe) {
    if (!is_side(desired_final)) throw WrongState("edge placement targets a side variant");

    const Vec2 pb = box.pB.position.xy();
    const Vec2 pc = box.pC.position.xy();
    const double box_length = (pc - pb).norm();
    const Vec2 long_dir = (pc - pb).normalized();
    const Vec2 lat_dir = long_dir.perp();
    const Vec2 center = (pb + pc) * 0.5;

    // The alignment convention fixes the X sign per side variant; opposing
    // the complementary first shoe lands on the same sign, so the desired
    // variant alone decides it.
    const Vec2 second_x = long_dir * side_x_sign(box, desired_final);
    const Vec2 second_y = second_x.perp();  // world direction of the inside keypoint

    const bool need_inside_leading = desired_final == ShoeState::SideOutsideUp;
    Vec2 fall_dir = lat_dir;
    if ((second_y.dot(fall_dir) > 0.0) != need_inside_leading) fall_dir = lat_dir * -1.0;
    const double sigma = need_inside_leading ? 1.0 : -1.0;

    // Lengthwise position: trisection toward pC for the second shoe,
    // toward pB for the first, clamped so the shoe fits the box.
    const double margin = 2.0;
    double t = second_shoe ? 2.0 * box_length / 3.0 : box_length / 3.0;
    const double half = model.length / 2.0;
    t = std::clamp(t, std::min(half + margin, box_length / 2.0),
                   std::max(box_length - half - margin, box_length / 2.0));

    const Vec2 wall_mid = center - fall_dir * (dims.width / 2.0);
    const Vec2 contact_xy = wall_mid + long_dir * (t - box_length / 2.0);

    const double floor_z = box.pB.position.z;
    EdgePlacement placement;
    placement.drop_height = dims.wall_height;
    placement.contact_point = Pose(Vec3{contact_xy.x, contact_xy.y, floor_z + dims.wall_height},
                                   0.0, 0.0, std::atan2(long_dir.y, long_dir.x));
    const Vec2 landing_xy = pb + long_dir * t;
    placement.landing = Pose(Vec3{landing_xy.x, landing_xy.y, floor_z + model.width / 2.0},
                             state_roll(desired_final), 0.0,
                             std::atan2(second_x.y, second_x.x));

    const CrossSection cs = cross_section(model);
    const std::array<double, 5> magnitudes = {10.0, 5.0, 15.0, 20.0, 25.0};
    for (double mag : magnitudes) {
        if (mag >= cs.width / 2.0) continue;
        placement.offset = sigma * mag;
        try {
            if (predict_contact_outcome(cs, placement).final_state == desired_final)
                return placement;
        } catch (const NoRotation&) {
        }
    }
    throw Infeasible("no offset in [5, 25] mm reaches the requested side variant");
}

}  // namespace packpair
