#pragma once

#include <string>
#include <variant>
#include <vector>

#include "packpair/contact.hpp"
#include "packpair/scene.hpp"

namespace packpair {

enum class PairCombination {
    TopTop,
    TopSide,
    TopBottom,
    SideSideMatched,     // inside + outside
    SideSideMismatched,  // two insides or two outsides
    SideBottom,
    BottomBottom,
};

std::string to_string(PairCombination c);
PairCombination pair_combination_from_string(const std::string& name);

enum class PlanningMode { WithContactMethod, WithoutContactMethod };

std::string to_string(PlanningMode m);

struct DetectSceneAction {};
struct PushAction {
    int shoe = 0;
    TopplingPlan plan;
};
struct ToppleAction {
    int shoe = 0;
    TopplingPlan plan;
};
struct GraspAction {
    int shoe = 0;
    GraspPose grasp;
};
struct PlaceDirectAction {
    int shoe = 0;
    Pose target;
};
struct PlaceOnEdgeAction {
    int shoe = 0;
    EdgePlacement placement;
};

using Action = std::variant<DetectSceneAction, PushAction, ToppleAction, GraspAction,
                            PlaceDirectAction, PlaceOnEdgeAction>;

std::string action_kind(const Action& a);
int action_shoe(const Action& a);

struct PackingPlan {
    std::vector<Action> actions;
    PlanningMode mode = PlanningMode::WithContactMethod;
    int predicted_topple_count = 0;
};

struct TargetConfigReport {
    bool states_ok = false;
    bool pairing_ok = false;
    bool box_alignment_ok = false;
    bool mutual_opposition_ok = false;
    bool overall = false;
};

/// Canonical class of the state pair, symmetric in shoe order.
PairCombination classify_pair(ShoeState s1, ShoeState s2);

/// Reorientation count needed to reach a placeable state, per combination
/// and mode.
int required_topples(PairCombination c, PlanningMode mode);

/// Emits the full action sequence: pre-placement reorientations down to a
/// placeable pair, then side-state shoe first, remaining shoe by direct or
/// edge placement. Throws Unplannable when a required toppling cannot be
/// solved for the shoe geometry.
PackingPlan plan_packing(const SceneState& scene, PlanningMode mode);

/// Pose of the first-placed shoe: trisection point nearer pB on the box
/// midline (clamped so the shoe fits), X axis parallel to pB->pC with the
/// sign that points the sole normal toward pA.
Pose placement_pose_first(const BoxPose& box, const ShoeModel& shoe, ShoeState variant);

/// Second shoe, X opposed to the first: side state -> direct pose at the
/// trisection nearer pC; top state -> edge placement near pC.
std::variant<Pose, EdgePlacement> placement_pose_second(const BoxPose& box,
                                                        const BoxModel& dims,
                                                        const ShoeModel& shoe,
                                                        const Pose& first,
                                                        ShoeState second_state);

/// Checks the four target-configuration constraints (side states,
/// complementary pairing, first-shoe sole normal toward pA, opposed X
/// axes) with a 5 degree angular tolerance.
TargetConfigReport verify_target_config(const SceneState& scene);

}  // namespace packpair
