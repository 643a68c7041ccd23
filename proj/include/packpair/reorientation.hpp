#pragma once

#include <optional>
#include <string>

#include "packpair/geometry.hpp"
#include "packpair/perception.hpp"

namespace packpair {

struct GripperModel {
    double length = 200.0;  // mm, wrist to fingertip
};

// Intrinsic shoe cross-section dimensions recovered from keypoints:
// width across the lateral keypoints, height from sole to topline.
struct ShoeExtent {
    double width = 0.0;   // mm
    double height = 0.0;  // mm
};

struct TopplingSolution {
    double theta = 0.0;     // toppling angle, rad
    double alpha = 0.0;     // gripper rotation, rad
    double beta = 0.0;      // gripper initial angle, rad
    double beta_max = 0.0;  // collision bound on beta, rad
};

enum class TopplingKind { Push, RotateSide, RotateTop };

std::string to_string(TopplingKind k);

struct TopplingPlan {
    TopplingKind kind = TopplingKind::Push;
    Pose start;  // P1
    Pose end;    // P2
    std::optional<TopplingSolution> solution;  // absent for Push
    Vec2 direction;           // toppling/push direction, perpendicular to the shoe X axis
    ShoeState resulting_state = ShoeState::Top;  // nominal post-primitive state
};

/// Recovers the intrinsic (width, height) from the visible keypoints given
/// the state and table height. The keypoint chart heights make the
/// recovery exact on noise-free input in every state.
ShoeExtent shoe_extent(const KeypointSet& k, const ShoePose& pose, ShoeState state,
                       double table_height);

/// Side-state rotation: theta = atan(H/W); alpha from the chord equation
/// W sin(theta/2) = L sin(alpha/2); beta = alpha/2 + theta/2;
/// beta_max = acos(1 - W/L).
TopplingSolution solve_side_toppling(const ShoeExtent& ext, const GripperModel& g);

/// Top-state rotation: theta = atan(W/H); chord radius sqrt((W/2)^2 + H^2);
/// beta = alpha/2 + theta/2 - atan((W/2)/H); beta_max = acos(1 - H/L).
TopplingSolution solve_top_toppling(const ShoeExtent& ext, const GripperModel& g);

/// Horizontal unit vector perpendicular to the shoe X axis pointing from
/// the sole contact line toward the topline side. Requires a side state.
Vec2 topple_direction(const KeypointSet& k, const ShoePose& pose);

/// Straight horizontal push for a bottom-state shoe. The pushed-from side
/// ends facing up: a push from the inside keypoint toward the outside
/// yields SideInsideUp and vice versa.
TopplingPlan push_plan(const KeypointSet& k, const ShoePose& pose, ShoeState target_side,
                       double table_height);

/// Dispatcher over the shoe state: Bottom -> push, side -> RotateSide
/// (to Top), Top -> RotateTop (to target_side, default SideInsideUp).
TopplingPlan plan_toppling(const KeypointSet& k, const ShoePose& pose, ShoeState state,
                           double table_height, const GripperModel& g,
                           std::optional<ShoeState> target_side = std::nullopt);

}  // namespace packpair
