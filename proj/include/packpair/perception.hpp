#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "packpair/geometry.hpp"
#include "packpair/models.hpp"

namespace packpair {

// The five semantic shoe keypoints in world frame (mm). An absent optional
// encodes "not visible in this state"; a point at the origin stays legal.
struct KeypointSet {
    std::optional<Vec3> toe;
    std::optional<Vec3> heel;
    std::optional<Vec3> topline;
    std::optional<Vec3> outside;
    std::optional<Vec3> inside;
};

enum class ShoeState {
    Top,            // resting on the sole
    Bottom,         // sole up
    SideInsideUp,   // lying on the lateral face, medial keypoint up
    SideOutsideUp,  // lying on the medial face, lateral keypoint up
};

inline bool is_side(ShoeState s) {
    return s == ShoeState::SideInsideUp || s == ShoeState::SideOutsideUp;
}

ShoeState opposite_side(ShoeState s);
std::string to_string(ShoeState s);
ShoeState shoe_state_from_string(const std::string& name);

// Roll implied by the state: 0 (Top), pi (Bottom), +pi/2 (SideInsideUp),
// -pi/2 (SideOutsideUp). Body frame: X heel->toe, Z out of the sole top,
// Y toward the inside (medial) keypoint.
double state_roll(ShoeState s);

struct ShoePose {
    Vec3 position;  // midpoint of toe and heel, world mm
    double yaw = 0.0;
    double roll = 0.0;

    Pose as_pose() const { return Pose(position, roll, 0.0, yaw); }
};

struct GraspPose {
    Vec3 position;
    double yaw = 0.0;
};

// Box contour keypoints: the four rectangle corners plus the three side
// poses the planner anchors to. pB and pC are the midpoints of the two
// short sides, pA the midpoint of the lid-hinge long side.
struct BoxPose {
    std::array<Point2, 4> corners;
    Pose pA;
    Pose pB;
    Pose pC;
};

// Canonical chart of the body-frame keypoint placement, shared by the
// synthetic generator and the extent logic. Heights are fractions of the
// shoe height; toe/heel sit on the long axis, laterals at +-width/2.
struct KeypointChart {
    static constexpr double toe_heel_height = 0.25;
    static constexpr double lateral_height = 0.5;
    static constexpr double topline_height = 1.0;
    static constexpr double topline_x = -0.25;  // fraction of length
};

std::array<Vec3, 5> body_keypoints(const ShoeModel& model);  // toe, heel, topline, outside, inside

// Height of the toe/heel midpoint above the table for a shoe resting in
// the given state.
double resting_height(const ShoeModel& model, ShoeState state);

/// State from the visibility pattern: all five -> Top; topline absent ->
/// Bottom; inside absent -> SideOutsideUp; outside absent -> SideInsideUp.
ShoeState classify_state(const KeypointSet& k);

/// Position = mid toe/heel; yaw = signed angle from reference_axis to the
/// heel->toe direction in the table plane; roll implied by the state.
ShoePose estimate_shoe_pose(const KeypointSet& k, ShoeState s,
                            const Vec2& reference_axis = {1.0, 0.0});

GraspPose grasp_pose(const ShoePose& p);

/// Box corners as the hull points nearest the min-area-rect corners
/// (minimum-total-distance matching), then pA/pB/pC from the fitted
/// sides. Lid-hinge side = the long side nearest the off-rectangle
/// contour mass; without lid points, the long side nearest the origin.
BoxPose estimate_box_pose(const std::vector<Point2>& contour, const BoxModel& dims);

BoxPose box_pose_from_model(const BoxModel& dims, const Vec2& center, double yaw,
                            double floor_z = 0.0);

// X-axis sign relative to the pB->pC direction that points a side-lying
// shoe's sole normal (body Z) toward the pA side of the box.
double side_x_sign(const BoxPose& box, ShoeState variant);

/// Synthetic stand-in for the keypoint detector: places the chart under
/// the pose, hides the state-occluded keypoint, adds N(0, sigma) per
/// coordinate. Deterministic per seed.
KeypointSet synthesize_keypoints(const ShoeModel& model, const ShoePose& pose,
                                 ShoeState state, double noise_sigma, std::uint64_t seed);

}  // namespace packpair
