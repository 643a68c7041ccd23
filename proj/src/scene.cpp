#include "packpair/scene.hpp"

#include <cmath>

namespace packpair {

ShoePose resting_pose(const ShoeModel& model, ShoeState state, const Vec2& xy, double yaw,
                      double table_height) {
    ShoePose pose;
    pose.position = {xy.x, xy.y, table_height + resting_height(model, state)};
    pose.yaw = wrap_angle(yaw);
    pose.roll = state_roll(state);
    return pose;
}

void apply_primitive(ShoeInstance& shoe, const TopplingPlan& plan, double table_height) {
    const double W = shoe.model.width;
    const double H = shoe.model.height;
    const double h_th = KeypointChart::toe_heel_height * H;
    const Vec2 dir = plan.direction;
    Vec2 xy = shoe.pose.position.xy();

    switch (plan.kind) {
        case TopplingKind::Push:
            // Tips about the far bottom edge and lands on the far face.
            xy = xy + dir * (W / 2.0 + H - h_th);
            break;
        case TopplingKind::RotateSide:
            // Stands up onto the sole, on the far side of the sole line.
            xy = xy - dir * (h_th + W / 2.0);
            break;
        case TopplingKind::RotateTop:
            xy = xy + dir * (W / 2.0 + h_th);
            break;
    }
    shoe.state = plan.resulting_state;
    shoe.pose = resting_pose(shoe.model, shoe.state, xy, shoe.pose.yaw, table_height);
}

}  // namespace packpair
