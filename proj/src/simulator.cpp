#include "packpair/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace packpair {

std::string to_string(StepOutcome o) {
    switch (o) {
        case StepOutcome::Success: return "success";
        case StepOutcome::OverRotated: return "over_rotated";
        case StepOutcome::SideSwapped: return "side_swapped";
        case StepOutcome::SettledWrong: return "settled_wrong";
        case StepOutcome::Skipped: return "skipped";
    }
    return "success";
}

namespace {

std::string shoe_summary(const SceneState& scene) {
    char buf[160];
    std::string out;
    for (int i = 0; i < 2; ++i) {
        const auto& s = scene.shoes[i];
        std::snprintf(buf, sizeof(buf), "shoe%d=%s@(%.1f,%.1f)yaw=%.1f%s", i + 1,
                      to_string(s.state).c_str(), s.pose.position.x, s.pose.position.y,
                      s.pose.yaw * 180.0 / kPi, s.in_box ? "[box]" : "");
        if (i) out += " ";
        out += buf;
    }
    return out;
}

ShoeState far_side_of(const TopplingPlan& plan) {
    // Over-rotation carries the shoe one stable state beyond the commanded
    // side variant.
    return opposite_side(plan.resulting_state);
}

struct Draws {
    bool over = false;
    bool swap = false;
};

Draws draw_failures(const FailureModel& f, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u1 = uni(rng);
    const double u2 = uni(rng);
    return {u1 < f.over_rotation_probability, u2 < f.side_swap_probability};
}

}  // namespace

std::pair<SceneState, StepOutcome> execute_action(const SceneState& scene, const Action& a,
                                                  const FailureModel& f, std::mt19937_64& rng) {
    SceneState next = scene;
    StepOutcome outcome = StepOutcome::Success;

    if (std::holds_alternative<DetectSceneAction>(a)) return {next, outcome};

    if (const auto* push = std::get_if<PushAction>(&a)) {
        auto& shoe = next.shoes[push->shoe - 1];
        if (shoe.state != ShoeState::Bottom || shoe.in_box)
            throw InapplicableAction("push needs a bottom-state shoe on the table");
        const Draws d = draw_failures(f, rng);
        apply_primitive(shoe, push->plan, next.table_height);
        if (d.over) {
            // Momentum carries it through the side state onto the sole.
            shoe.state = ShoeState::Top;
            shoe.pose = resting_pose(shoe.model, shoe.state, shoe.pose.position.xy(),
                                     shoe.pose.yaw, next.table_height);
            outcome = StepOutcome::OverRotated;
        } else if (d.swap) {
            shoe.state = opposite_side(shoe.state);
            shoe.pose.roll = state_roll(shoe.state);
            outcome = StepOutcome::SideSwapped;
        }
        return {next, outcome};
    }

    if (const auto* topple = std::get_if<ToppleAction>(&a)) {
        auto& shoe = next.shoes[topple->shoe - 1];
        if (shoe.in_box) throw InapplicableAction("cannot topple inside the box");
        const auto& plan = topple->plan;
        if (plan.kind == TopplingKind::RotateSide && !is_side(shoe.state))
            throw InapplicableAction("rotate_side needs a side-state shoe");
        if (plan.kind == TopplingKind::RotateTop && shoe.state != ShoeState::Top)
            throw InapplicableAction("rotate_top needs a top-state shoe");
        const ShoeState before = shoe.state;
        const Draws d = draw_failures(f, rng);
        apply_primitive(shoe, plan, next.table_height);
        if (d.over) {
            if (plan.kind == TopplingKind::RotateSide) {
                // side -> top overshoots onward to the far side variant
                shoe.state = opposite_side(before);
            } else {
                shoe.state = shoe.model.has_bottom_state ? ShoeState::Bottom
                                                         : far_side_of(plan);
            }
            shoe.pose = resting_pose(shoe.model, shoe.state, shoe.pose.position.xy(),
                                     shoe.pose.yaw, next.table_height);
            outcome = StepOutcome::OverRotated;
        } else if (d.swap && is_side(shoe.state)) {
            shoe.state = opposite_side(shoe.state);
            shoe.pose.roll = state_roll(shoe.state);
            outcome = StepOutcome::SideSwapped;
        }
        return {next, outcome};
    }

    if (const auto* grasp = std::get_if<GraspAction>(&a)) {
        const auto& shoe = next.shoes[grasp->shoe - 1];
        if (shoe.in_box) throw InapplicableAction("shoe already placed");
        if (shoe.state == ShoeState::Bottom)
            throw InapplicableAction("cannot grasp a sole-up shoe");
        return {next, outcome};
    }

    if (const auto* place = std::get_if<PlaceDirectAction>(&a)) {
        auto& shoe = next.shoes[place->shoe - 1];
        if (!is_side(shoe.state))
            throw InapplicableAction("direct placement needs a side-state shoe");
        shoe.pose = ShoePose{place->target.position, place->target.yaw, place->target.roll};
        shoe.in_box = true;
        return {next, outcome};
    }

    if (const auto* edge = std::get_if<PlaceOnEdgeAction>(&a)) {
        auto& shoe = next.shoes[edge->shoe - 1];
        if (shoe.state != ShoeState::Top)
            throw InapplicableAction("edge placement needs a top-state shoe");
        const bool other_placed = next.shoes[2 - edge->shoe].in_box;
        const Draws d = draw_failures(f, rng);
        ContactOutcome contact =
            predict_contact_outcome(cross_section(shoe.model), edge->placement);
        if (d.over) {
            if (other_placed) {
                // The first shoe arrests over-rotation at the side pose.
                outcome = StepOutcome::Success;
            } else {
                contact.final_state = shoe.model.has_bottom_state
                                          ? ShoeState::Bottom
                                          : opposite_side(contact.final_state);
                outcome = StepOutcome::OverRotated;
            }
        } else if (d.swap && is_side(contact.final_state)) {
            contact.final_state = opposite_side(contact.final_state);
            outcome = StepOutcome::SideSwapped;
        }
        shoe.state = contact.final_state;
        shoe.in_box = true;
        shoe.pose = ShoePose{edge->placement.landing.position, edge->placement.landing.yaw,
                             state_roll(contact.final_state)};
        if (!is_side(contact.final_state)) {
            shoe.pose.position.z = scene.box.pB.position.z +
                                   resting_height(shoe.model, contact.final_state);
            if (outcome == StepOutcome::Success) outcome = StepOutcome::SettledWrong;
        }
        return {next, outcome};
    }

    throw InapplicableAction("unknown action");
}

ExecutionTrace run_plan(const SceneState& scene, const PackingPlan& plan, const FailureModel& f,
                        const RunOptions& opts) {
    ExecutionTrace trace;
    std::mt19937_64 rng(f.seed);
    SceneState world = scene;

    std::vector<Action> queue = plan.actions;
    PlanningMode mode = plan.mode;
    size_t qi = 0;
    int step = 0;
    bool halted = false;

    while (qi < queue.size()) {
        const Action& action = queue[qi++];
        TraceStep ts;
        ts.index = ++step;
        ts.action = action_kind(action);
        ts.shoe = action_shoe(action);
        ts.pre = shoe_summary(world);
        auto [next, outcome] = execute_action(world, action, f, rng);
        world = next;
        ts.post = shoe_summary(world);
        ts.outcome = outcome;
        trace.steps.push_back(ts);

        if (outcome != StepOutcome::Success) {
            const bool on_table = !world.shoes[0].in_box && !world.shoes[1].in_box;
            if (opts.replan_on_failure && trace.replans < opts.max_replans && on_table) {
                try {
                    const PackingPlan recovery = plan_packing(world, mode);
                    ++trace.replans;
                    queue = recovery.actions;
                    qi = 0;
                    continue;
                } catch (const Unplannable&) {
                    // fall through: the failure stays recorded in the trace
                }
            }
            halted = true;
            break;
        }
    }

    trace.completed = !halted && qi >= queue.size();
    try {
        trace.final_report = verify_target_config(world);
    } catch (const NotPlaced&) {
        trace.final_report = TargetConfigReport{};
    }
    return trace;
}

SceneState random_scene(std::size_t catalog_index, PairCombination combination,
                        std::uint64_t seed) {
    const CatalogEntry& entry = catalog_entry(catalog_index);
    const bool needs_bottom = combination == PairCombination::TopBottom ||
                              combination == PairCombination::SideBottom ||
                              combination == PairCombination::BottomBottom;
    if (needs_bottom && !entry.shoe.has_bottom_state)
        throw NoBottomState(entry.shoe.name + " has no bottom state");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    SceneState scene;
    scene.table_height = 0.0;
    scene.gripper = GripperModel{200.0};
    scene.box_model = entry.box;

    // Box well clear of the shoe staging area; shoes keep enough mutual
    // distance that reorientation moves cannot collide.
    const double box_x = 1200.0 + 200.0 * uni(rng);
    const double box_y = 250.0 + 400.0 * uni(rng);
    const double box_yaw = (uni(rng) - 0.5) * kPi;
    scene.box = box_pose_from_model(entry.box, {box_x, box_y}, box_yaw, scene.table_height);

    std::array<ShoeState, 2> states{};
    const bool flip = uni(rng) < 0.5;  // which shoe gets which state
    const ShoeState v = uni(rng) < 0.5 ? ShoeState::SideInsideUp : ShoeState::SideOutsideUp;
    switch (combination) {
        case PairCombination::TopTop: states = {ShoeState::Top, ShoeState::Top}; break;
        case PairCombination::TopSide: states = {ShoeState::Top, v}; break;
        case PairCombination::TopBottom: states = {ShoeState::Top, ShoeState::Bottom}; break;
        case PairCombination::SideSideMatched: states = {v, opposite_side(v)}; break;
        case PairCombination::SideSideMismatched: states = {v, v}; break;
        case PairCombination::SideBottom: states = {v, ShoeState::Bottom}; break;
        case PairCombination::BottomBottom:
            states = {ShoeState::Bottom, ShoeState::Bottom};
            break;
    }
    if (flip) std::swap(states[0], states[1]);

    // Footprint diagonals keep the initial placements separated; the box
    // region is disjoint from the staging area by construction.
    const double shoe_gap = std::hypot(entry.shoe.length, entry.shoe.height) + 40.0;
    const double box_radius = std::hypot(entry.box.length, entry.box.width) / 2.0 +
                              entry.shoe.length / 2.0 + entry.shoe.height + 40.0;

    std::array<Vec2, 2> positions{};
    for (int attempt = 0;; ++attempt) {
        if (attempt > 5000) throw Error("random_scene: cannot place shoes");
        const Vec2 a{80.0 + 540.0 * uni(rng), 80.0 + 720.0 * uni(rng)};
        const Vec2 b{80.0 + 540.0 * uni(rng), 80.0 + 720.0 * uni(rng)};
        if ((a - b).norm() < shoe_gap) continue;
        if ((a - Vec2{box_x, box_y}).norm() < box_radius) continue;
        if ((b - Vec2{box_x, box_y}).norm() < box_radius) continue;
        positions = {a, b};
        break;
    }
    for (int i = 0; i < 2; ++i) {
        const double yaw = (uni(rng) * 2.0 - 1.0) * kPi * 0.999;
        scene.shoes[i].model = entry.shoe;
        scene.shoes[i].state = states[i];
        scene.shoes[i].in_box = false;
        scene.shoes[i].pose =
            resting_pose(entry.shoe, states[i], positions[i], yaw, scene.table_height);
    }
    return scene;
}

std::string format_trace(const ExecutionTrace& trace) {
    std::ostringstream out;
    char buf[64];
    for (const auto& s : trace.steps) {
        std::snprintf(buf, sizeof(buf), "step=%d action=%s shoe=%d outcome=%s", s.index,
                      s.action.c_str(), s.shoe, to_string(s.outcome).c_str());
        out << buf << "\n";
    }
    const auto& r = trace.final_report;
    out << "report states_ok=" << (r.states_ok ? "true" : "false")
        << " pairing_ok=" << (r.pairing_ok ? "true" : "false")
        << " box_alignment_ok=" << (r.box_alignment_ok ? "true" : "false")
        << " mutual_opposition_ok=" << (r.mutual_opposition_ok ? "true" : "false")
        << " overall=" << (r.overall ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace packpair
