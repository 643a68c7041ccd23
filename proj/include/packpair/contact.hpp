#pragma once

#include "packpair/geometry.hpp"
#include "packpair/models.hpp"
#include "packpair/perception.hpp"

namespace packpair {

// Shoe cross-section perpendicular to its long axis, used for the
// box-edge reorientation analysis.
struct CrossSection {
    double width = 0.0;       // mm
    double height = 0.0;      // mm
    double com_height = 0.0;  // centre of mass above the sole, mm
    double com_lateral = 0.0;  // lateral COM offset from the midline, mm,
                               // measured against the offset direction
};

CrossSection cross_section(const ShoeModel& model);

// Placement of a top-state shoe across a box edge. The offset magnitude is
// the midline-to-edge distance; its sign names the body face that leads
// into the box: positive = the inside-keypoint face (landing on it yields
// SideOutsideUp), negative = the outside face (yields SideInsideUp).
struct EdgePlacement {
    double offset = 0.0;       // signed mm
    Pose contact_point;        // on the box edge, yaw along the edge
    double drop_height = 0.0;  // box wall height, mm
    Pose landing;              // expected settled pose inside the box
};

struct ContactOutcome {
    ShoeState final_state = ShoeState::Bottom;
    double rotation_at_floor = 0.0;  // rad
    bool settled = true;
};

/// Deterministic two-phase quasi-static model. Phase 1: the section tips
/// about the box edge starting from the lean committed by its COM offset
/// (lean = atan(arm / com_height), arm = offset - com_lateral, NoRotation
/// if arm <= 0) and rotates until the leading half-sole meets the floor,
/// phi = asin(min(1, drop / (W/2))). Phase 2: the pivot transfers to the
/// floor contact; the section rolls on to the adjacent side pose iff the
/// accumulated inclination lean + phi reaches pi/2, otherwise it settles
/// back onto its sole (reported as Bottom).
ContactOutcome predict_contact_outcome(const CrossSection& cs, const EdgePlacement& placement);

/// Chooses the box edge near pC and the signed 10 mm default offset whose
/// rotation sense produces desired_final, pre-checking feasibility through
/// the model; scans the 5..25 mm offset range before giving up.
EdgePlacement plan_edge_placement(const BoxPose& box, const BoxModel& dims,
                                  const ShoeModel& model, ShoeState desired_final,
                                  bool second_shoe);

}  // namespace packpair
