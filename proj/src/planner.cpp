#include "packpair/planner.hpp"

#include <algorithm>
#include <cmath>

namespace packpair {

std::string to_string(PairCombination c) {
    switch (c) {
        case PairCombination::TopTop: return "top_top";
        case PairCombination::TopSide: return "top_side";
        case PairCombination::TopBottom: return "top_bottom";
        case PairCombination::SideSideMatched: return "side_side_matched";
        case PairCombination::SideSideMismatched: return "side_side_mismatched";
        case PairCombination::SideBottom: return "side_bottom";
        case PairCombination::BottomBottom: return "bottom_bottom";
    }
    return "top_top";
}

PairCombination pair_combination_from_string(const std::string& name) {
    for (int i = 0; i <= int(PairCombination::BottomBottom); ++i)
        if (to_string(PairCombination(i)) == name) return PairCombination(i);
    throw ParseError("unknown combination: " + name);
}

std::string to_string(PlanningMode m) {
    return m == PlanningMode::WithContactMethod ? "with_contact" : "without_contact";
}

std::string action_kind(const Action& a) {
    struct Visitor {
        std::string operator()(const DetectSceneAction&) const { return "detect_scene"; }
        std::string operator()(const PushAction&) const { return "push"; }
        std::string operator()(const ToppleAction&) const { return "topple"; }
        std::string operator()(const GraspAction&) const { return "grasp"; }
        std::string operator()(const PlaceDirectAction&) const { return "place_direct"; }
        std::string operator()(const PlaceOnEdgeAction&) const { return "place_on_edge"; }
    };
    return std::visit(Visitor{}, a);
}

int action_shoe(const Action& a) {
    struct Visitor {
        int operator()(const DetectSceneAction&) const { return 0; }
        int operator()(const PushAction& x) const { return x.shoe; }
        int operator()(const ToppleAction& x) const { return x.shoe; }
        int operator()(const GraspAction& x) const { return x.shoe; }
        int operator()(const PlaceDirectAction& x) const { return x.shoe; }
        int operator()(const PlaceOnEdgeAction& x) const { return x.shoe; }
    };
    return std::visit(Visitor{}, a);
}

PairCombination classify_pair(ShoeState s1, ShoeState s2) {
    const int tops = (s1 == ShoeState::Top) + (s2 == ShoeState::Top);
    const int bottoms = (s1 == ShoeState::Bottom) + (s2 == ShoeState::Bottom);
    const int sides = is_side(s1) + is_side(s2);
    if (tops == 2) return PairCombination::TopTop;
    if (tops == 1 && sides == 1) return PairCombination::TopSide;
    if (tops == 1 && bottoms == 1) return PairCombination::TopBottom;
    if (sides == 2)
        return s1 == s2 ? PairCombination::SideSideMismatched : PairCombination::SideSideMatched;
    if (sides == 1 && bottoms == 1) return PairCombination::SideBottom;
    return PairCombination::BottomBottom;
}

int required_topples(PairCombination c, PlanningMode mode) {
    const bool with = mode == PlanningMode::WithContactMethod;
    switch (c) {
        case PairCombination::TopTop: return with ? 1 : 2;
        case PairCombination::TopSide: return with ? 0 : 1;
        case PairCombination::TopBottom: return with ? 1 : 2;
        case PairCombination::SideSideMismatched: return with ? 1 : 2;
        case PairCombination::SideSideMatched: return 0;
        case PairCombination::SideBottom: return 1;
        case PairCombination::BottomBottom: return 2;
    }
    return 0;
}

namespace {

struct BoxFrame {
    Vec2 pb;
    Vec2 long_dir;
    double length = 0.0;
};

BoxFrame box_frame(const BoxPose& box) {
    const Vec2 pb = box.pB.position.xy();
    const Vec2 pc = box.pC.position.xy();
    return {pb, (pc - pb).normalized(), (pc - pb).norm()};
}

double clamp_along_axis(double t, double box_length, double shoe_length) {
    const double margin = 2.0;
    const double lo = shoe_length / 2.0 + margin;
    const double hi = box_length - shoe_length / 2.0 - margin;
    if (lo > hi) return box_length / 2.0;
    return std::clamp(t, lo, hi);
}

ShoeState variant_from_roll(double roll) {
    return roll >= 0.0 ? ShoeState::SideInsideUp : ShoeState::SideOutsideUp;
}

class PlanBuilder {
public:
    PlanBuilder(const SceneState& scene, PlanningMode mode) : world_(scene), mode_(mode) {
        plan_.mode = mode;
        plan_.actions.push_back(DetectSceneAction{});
    }

    KeypointSet keypoints(int i) const {
        return synthesize_keypoints(world_.shoes[i].model, world_.shoes[i].pose,
                                    world_.shoes[i].state, 0.0, 0);
    }

    void push(int i, ShoeState target) {
        auto& shoe = world_.shoes[i];
        const TopplingPlan p =
            push_plan(keypoints(i), shoe.pose, target, world_.table_height);
        plan_.actions.push_back(PushAction{i + 1, p});
        apply_primitive(shoe, p, world_.table_height);
    }

    void topple(int i, std::optional<ShoeState> target = std::nullopt) {
        auto& shoe = world_.shoes[i];
        const TopplingPlan p = plan_toppling(keypoints(i), shoe.pose, shoe.state,
                                             world_.table_height, world_.gripper, target);
        plan_.actions.push_back(ToppleAction{i + 1, p});
        apply_primitive(shoe, p, world_.table_height);
    }

    // Index of the shoe farther from the box; ties go to shoe 1.
    int farther_from_box() const {
        const Vec2 center =
            (world_.box.pB.position.xy() + world_.box.pC.position.xy()) * 0.5;
        const double d0 = (world_.shoes[0].pose.position.xy() - center).norm();
        const double d1 = (world_.shoes[1].pose.position.xy() - center).norm();
        return d1 > d0 ? 1 : 0;
    }

    int shoe_in(ShoeState s) const {
        if (world_.shoes[0].state == s) return 0;
        if (world_.shoes[1].state == s) return 1;
        throw Unplannable("no shoe in state " + to_string(s));
    }

    int side_shoe() const {
        if (is_side(world_.shoes[0].state)) return 0;
        if (is_side(world_.shoes[1].state)) return 1;
        throw Unplannable("no side-state shoe");
    }

    void place_direct(int i, const Pose& target) {
        auto& shoe = world_.shoes[i];
        plan_.actions.push_back(GraspAction{i + 1, grasp_pose(shoe.pose)});
        plan_.actions.push_back(PlaceDirectAction{i + 1, target});
        shoe.pose = ShoePose{target.position, target.yaw, target.roll};
        shoe.in_box = true;
    }

    void place_on_edge(int i, ShoeState desired) {
        auto& shoe = world_.shoes[i];
        const EdgePlacement ep = plan_edge_placement(world_.box, world_.box_model, shoe.model,
                                                     desired, /*second_shoe=*/true);
        plan_.actions.push_back(GraspAction{i + 1, grasp_pose(shoe.pose)});
        plan_.actions.push_back(PlaceOnEdgeAction{i + 1, ep});
        shoe.pose = ShoePose{ep.landing.position, ep.landing.yaw, ep.landing.roll};
        shoe.state = desired;
        shoe.in_box = true;
    }

    void placement_stage() {
        if (is_side(world_.shoes[0].state) && is_side(world_.shoes[1].state)) {
            // Matched side pair: the +X-sign variant goes first.
            int first = side_x_sign(world_.box, world_.shoes[0].state) > 0.0 ? 0 : 1;
            const int second = 1 - first;
            const Pose first_pose = placement_pose_first(
                world_.box, world_.shoes[first].model, world_.shoes[first].state);
            place_direct(first, first_pose);
            const auto second_target =
                placement_pose_second(world_.box, world_.box_model, world_.shoes[second].model,
                                      first_pose, world_.shoes[second].state);
            place_direct(second, std::get<Pose>(second_target));
            return;
        }
        // Top + side: the side shoe goes first, the top shoe over the edge.
        const int side = side_shoe();
        const int top = shoe_in(ShoeState::Top);
        const Pose first_pose =
            placement_pose_first(world_.box, world_.shoes[side].model, world_.shoes[side].state);
        place_direct(side, first_pose);
        place_on_edge(top, opposite_side(world_.shoes[side].state));
    }

    PackingPlan finish() {
        int count = 0;
        for (const auto& a : plan_.actions)
            if (std::holds_alternative<PushAction>(a) || std::holds_alternative<ToppleAction>(a))
                ++count;
        plan_.predicted_topple_count = count;
        return std::move(plan_);
    }

    SceneState world_;
    PlanningMode mode_;
    PackingPlan plan_;
};

}  // namespace

Pose placement_pose_first(const BoxPose& box, const ShoeModel& shoe, ShoeState variant) {
    if (!is_side(variant)) throw WrongState("first placement needs a side variant");
    const BoxFrame f = box_frame(box);
    if (shoe.length > f.length)
        throw ShoeBoxMismatch(shoe.name + " is longer than the box interior");
    const double t = clamp_along_axis(f.length / 3.0, f.length, shoe.length);
    const Vec2 xy = f.pb + f.long_dir * t;
    const Vec2 x_dir = f.long_dir * side_x_sign(box, variant);
    return Pose(Vec3{xy.x, xy.y, box.pB.position.z + shoe.width / 2.0}, state_roll(variant),
                0.0, std::atan2(x_dir.y, x_dir.x));
}

std::variant<Pose, EdgePlacement> placement_pose_second(const BoxPose& box, const BoxModel& dims,
                                                        const ShoeModel& shoe, const Pose& first,
                                                        ShoeState second_state) {
    const BoxFrame f = box_frame(box);
    if (second_state == ShoeState::Top) {
        const ShoeState desired = opposite_side(variant_from_roll(first.roll));
        return plan_edge_placement(box, dims, shoe, desired, /*second_shoe=*/true);
    }
    if (!is_side(second_state)) throw WrongState("second placement needs side or top state");
    if (shoe.length > f.length)
        throw ShoeBoxMismatch(shoe.name + " is longer than the box interior");
    const double t = clamp_along_axis(2.0 * f.length / 3.0, f.length, shoe.length);
    const Vec2 xy = f.pb + f.long_dir * t;
    return Pose(Vec3{xy.x, xy.y, box.pB.position.z + shoe.width / 2.0},
                state_roll(second_state), 0.0, wrap_angle(first.yaw + kPi));
}

PackingPlan plan_packing(const SceneState& scene, PlanningMode mode) {
    PlanBuilder b(scene, mode);
    const PairCombination combo =
        classify_pair(scene.shoes[0].state, scene.shoes[1].state);
    const bool with = mode == PlanningMode::WithContactMethod;
    // Deterministic default variant: the one placed first with X = +pB->pC.
    const ShoeState v_plus = side_x_sign(scene.box, ShoeState::SideInsideUp) > 0.0
                                 ? ShoeState::SideInsideUp
                                 : ShoeState::SideOutsideUp;

    try {
        switch (combo) {
            case PairCombination::TopTop: {
                const int i = b.farther_from_box();
                if (with) {
                    b.topple(i, v_plus);  // top -> side, pair becomes top + side
                } else {
                    b.topple(i, v_plus);
                    b.topple(1 - i, opposite_side(v_plus));
                }
                break;
            }
            case PairCombination::TopSide: {
                if (!with) {
                    const int side = b.side_shoe();
                    b.topple(b.shoe_in(ShoeState::Top),
                             opposite_side(b.world_.shoes[side].state));
                }
                break;
            }
            case PairCombination::TopBottom: {
                const int bottom = b.shoe_in(ShoeState::Bottom);
                b.push(bottom, v_plus);
                if (!with) b.topple(b.shoe_in(ShoeState::Top), opposite_side(v_plus));
                break;
            }
            case PairCombination::SideSideMismatched: {
                const int i = b.farther_from_box();
                const ShoeState v = b.world_.shoes[i].state;
                b.topple(i);  // side -> top
                if (!with) b.topple(i, opposite_side(v));
                break;
            }
            case PairCombination::SideSideMatched:
                break;
            case PairCombination::SideBottom: {
                const int side = b.side_shoe();
                // Push direction chosen so the pairing comes out matched.
                b.push(b.shoe_in(ShoeState::Bottom),
                       opposite_side(b.world_.shoes[side].state));
                break;
            }
            case PairCombination::BottomBottom:
                b.push(0, v_plus);
                b.push(1, opposite_side(v_plus));
                break;
        }
        b.placement_stage();
    } catch (const Infeasible& e) {
        throw Unplannable(std::string("required reorientation infeasible: ") + e.what());
    } catch (const NoSolution& e) {
        throw Unplannable(std::string("required reorientation unsolvable: ") + e.what());
    }
    return b.finish();
}

TargetConfigReport verify_target_config(const SceneState& scene) {
    for (const auto& shoe : scene.shoes)
        if (!shoe.in_box) throw NotPlaced("a shoe is not in the box");

    // Footprint gate: shoe centers must lie inside the box rectangle.
    const Vec2 pb = scene.box.pB.position.xy();
    const Vec2 pc = scene.box.pC.position.xy();
    const Vec2 long_dir = (pc - pb).normalized();
    const Vec2 lat_dir = long_dir.perp();
    const Vec2 center = (pb + pc) * 0.5;
    for (const auto& shoe : scene.shoes) {
        const Vec2 rel = shoe.pose.position.xy() - center;
        if (std::abs(rel.dot(long_dir)) > scene.box_model.length / 2.0 + 1e-6 ||
            std::abs(rel.dot(lat_dir)) > scene.box_model.width / 2.0 + 1e-6)
            throw NotPlaced("a shoe lies outside the box footprint");
    }

    const int first =
        std::abs((scene.shoes[0].pose.position.xy() - pb).dot(long_dir)) <=
                std::abs((scene.shoes[1].pose.position.xy() - pb).dot(long_dir))
            ? 0
            : 1;
    const ShoeState s1 = scene.shoes[first].state;
    const ShoeState s2 = scene.shoes[1 - first].state;

    TargetConfigReport r;
    r.states_ok = is_side(s1) && is_side(s2);
    r.pairing_ok = r.states_ok && s1 == opposite_side(s2);

    const double tol = 5.0 * kPi / 180.0;
    const Pose pose1 = scene.shoes[first].pose.as_pose();
    const Vec3 normal = pose1.rotate({0.0, 0.0, 1.0});
    const Vec2 toward_a = (scene.box.pA.position.xy() - center).normalized();
    const double horiz = std::hypot(normal.x, normal.y);
    r.box_alignment_ok = std::abs(normal.z) <= std::sin(tol) && horiz > 0.0 &&
                         std::acos(std::clamp(Vec2{normal.x, normal.y}.normalized().dot(toward_a),
                                              -1.0, 1.0)) <= tol;

    const double dyaw =
        std::abs(wrap_angle(scene.shoes[0].pose.yaw - scene.shoes[1].pose.yaw));
    r.mutual_opposition_ok = std::abs(kPi - dyaw) <= tol;

    r.overall = r.states_ok && r.pairing_ok && r.box_alignment_ok && r.mutual_opposition_ok;
    return r;
}

}  // namespace packpair
