#pragma once

#include <array>

#include "packpair/models.hpp"
#include "packpair/perception.hpp"
#include "packpair/reorientation.hpp"

namespace packpair {

struct ShoeInstance {
    ShoeModel model;
    ShoeState state = ShoeState::Top;
    ShoePose pose;
    bool in_box = false;
};

// World snapshot. Shoe ids 1 and 2 map to indices 0 and 1.
struct SceneState {
    std::array<ShoeInstance, 2> shoes;
    BoxModel box_model;
    BoxPose box;
    double table_height = 0.0;
    GripperModel gripper;
};

// Nominal rigid outcome of a toppling primitive: the shoe tips about the
// primitive's edge and settles in plan.resulting_state. Pose shifts follow
// the pivot geometry of the keypoint chart.
void apply_primitive(ShoeInstance& shoe, const TopplingPlan& plan, double table_height);

ShoePose resting_pose(const ShoeModel& model, ShoeState state, const Vec2& xy, double yaw,
                      double table_height);

}  // namespace packpair
