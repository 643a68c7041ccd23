#include <doctest.h>

#include <set>

#include "packpair/simulator.hpp"

using namespace packpair;

namespace {

SceneState scene_for(ShoeState s1, ShoeState s2, const std::string& cat = "sports") {
    const CatalogEntry& entry = catalog_entry(cat);
    SceneState scene;
    scene.table_height = 0.0;
    scene.gripper = GripperModel{200.0};
    scene.box_model = entry.box;
    scene.box = box_pose_from_model(entry.box, {900, 300}, 0.1);
    scene.shoes[0].model = entry.shoe;
    scene.shoes[0].state = s1;
    scene.shoes[0].pose = resting_pose(entry.shoe, s1, {200, 150}, 0.2, 0.0);
    scene.shoes[1].model = entry.shoe;
    scene.shoes[1].state = s2;
    scene.shoes[1].pose = resting_pose(entry.shoe, s2, {250, 620}, -0.9, 0.0);
    return scene;
}

}  // namespace

TEST_CASE("nominal transitions follow the state machine") {
    SceneState scene = scene_for(ShoeState::Bottom, ShoeState::Top);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    std::mt19937_64 rng(0);
    for (const auto& a : plan.actions) {
        auto [next, outcome] = execute_action(scene, a, FailureModel{}, rng);
        CHECK(outcome == StepOutcome::Success);
        scene = next;
    }
    CHECK(scene.shoes[0].in_box);
    CHECK(scene.shoes[1].in_box);
    CHECK(is_side(scene.shoes[0].state));
    CHECK(is_side(scene.shoes[1].state));
    CHECK(verify_target_config(scene).overall);
}

TEST_CASE("push on a non-bottom shoe is inapplicable") {
    SceneState bottom_scene = scene_for(ShoeState::Bottom, ShoeState::Top);
    const PackingPlan plan = plan_packing(bottom_scene, PlanningMode::WithContactMethod);
    const PushAction* push = nullptr;
    for (const auto& a : plan.actions)
        if ((push = std::get_if<PushAction>(&a))) break;
    REQUIRE(push != nullptr);
    SceneState wrong = bottom_scene;
    wrong.shoes[push->shoe - 1].state = ShoeState::Top;
    std::mt19937_64 rng(0);
    CHECK_THROWS_AS(execute_action(wrong, Action{*push}, FailureModel{}, rng),
                    InapplicableAction);
}

TEST_CASE("forced over-rotation sends a push to the top state") {
    SceneState scene = scene_for(ShoeState::Bottom, ShoeState::Top);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    FailureModel f;
    f.over_rotation_probability = 1.0;
    std::mt19937_64 rng(f.seed);
    for (const auto& a : plan.actions) {
        if (const auto* p = std::get_if<PushAction>(&a)) {
            auto [next, outcome] = execute_action(scene, a, f, rng);
            CHECK(outcome == StepOutcome::OverRotated);
            CHECK(next.shoes[p->shoe - 1].state == ShoeState::Top);
            return;
        }
        scene = execute_action(scene, a, FailureModel{}, rng).first;
    }
    FAIL("no push in the plan");
}

TEST_CASE("forced side swap flips the pushed variant") {
    SceneState scene = scene_for(ShoeState::Bottom, ShoeState::Top);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    FailureModel f;
    f.side_swap_probability = 1.0;
    std::mt19937_64 rng(f.seed);
    for (const auto& a : plan.actions) {
        if (const auto* p = std::get_if<PushAction>(&a)) {
            auto [next, outcome] = execute_action(scene, a, f, rng);
            CHECK(outcome == StepOutcome::SideSwapped);
            CHECK(next.shoes[p->shoe - 1].state ==
                  opposite_side(p->plan.resulting_state));
            return;
        }
        scene = execute_action(scene, a, FailureModel{}, rng).first;
    }
}

TEST_CASE("zero-failure runs succeed for every admissible combination and catalog") {
    const std::vector<std::pair<ShoeState, ShoeState>> cases = {
        {ShoeState::Top, ShoeState::Top},
        {ShoeState::Top, ShoeState::SideInsideUp},
        {ShoeState::Top, ShoeState::Bottom},
        {ShoeState::SideInsideUp, ShoeState::SideInsideUp},
        {ShoeState::SideOutsideUp, ShoeState::SideInsideUp},
        {ShoeState::SideInsideUp, ShoeState::Bottom},
        {ShoeState::Bottom, ShoeState::Bottom},
    };
    for (const auto& entry : catalog()) {
        for (const auto& [s1, s2] : cases) {
            const bool bottoms = s1 == ShoeState::Bottom || s2 == ShoeState::Bottom;
            if (bottoms && !entry.shoe.has_bottom_state) continue;
            for (PlanningMode mode :
                 {PlanningMode::WithContactMethod, PlanningMode::WithoutContactMethod}) {
                const SceneState scene = scene_for(s1, s2, entry.shoe.name);
                const PackingPlan plan = plan_packing(scene, mode);
                const ExecutionTrace trace = run_plan(scene, plan, FailureModel{});
                CHECK(trace.completed);
                CHECK(trace.final_report.overall);
            }
        }
    }
}

TEST_CASE("over-rotation on the single topple recovers within one replan") {
    SceneState scene = scene_for(ShoeState::Top, ShoeState::Top);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    FailureModel f;
    f.over_rotation_probability = 1.0;  // every draw fails; replanning loops
    f.seed = 5;

    RunOptions halt_opts;
    const ExecutionTrace no_replan = run_plan(scene, plan, f, halt_opts);
    CHECK_FALSE(no_replan.final_report.overall);
    CHECK_FALSE(no_replan.completed);

    // One failure then clean draws: fail the topple once, replan, finish.
    FailureModel once;
    once.over_rotation_probability = 0.38;  // seed-picked: first draw fails
    once.seed = 0;
    std::mt19937_64 probe(once.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    // Find a seed whose first uniform fails the topple and later ones pass.
    for (std::uint64_t s = 0; s < 200; ++s) {
        std::mt19937_64 r(s);
        std::vector<double> u;
        for (int i = 0; i < 8; ++i) u.push_back(uni(r));
        if (u[0] < once.over_rotation_probability &&
            u[2] > once.over_rotation_probability && u[3] > once.over_rotation_probability &&
            u[4] > once.over_rotation_probability && u[5] > once.over_rotation_probability &&
            u[6] > once.over_rotation_probability && u[7] > once.over_rotation_probability) {
            once.seed = s;
            break;
        }
    }
    RunOptions replan_opts;
    replan_opts.replan_on_failure = true;
    const ExecutionTrace recovered = run_plan(scene, plan, once, replan_opts);
    CHECK(recovered.replans == 1);
    CHECK(recovered.completed);
    CHECK(recovered.final_report.overall);
}

TEST_CASE("traces are byte-identical across reruns") {
    const SceneState scene = scene_for(ShoeState::Top, ShoeState::Bottom);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    FailureModel f;
    f.side_swap_probability = 0.3;
    f.seed = 1234;
    RunOptions opts;
    opts.replan_on_failure = true;
    const std::string a = format_trace(run_plan(scene, plan, f, opts));
    const std::string b = format_trace(run_plan(scene, plan, f, opts));
    CHECK(a == b);
}

TEST_CASE("random_scene determinism and invariants") {
    const SceneState a = random_scene(0, PairCombination::TopSide, 99);
    const SceneState b = random_scene(0, PairCombination::TopSide, 99);
    CHECK(a.shoes[0].pose.position.x == b.shoes[0].pose.position.x);
    CHECK(a.shoes[1].pose.yaw == b.shoes[1].pose.yaw);
    CHECK(a.box.pA.position.x == b.box.pA.position.x);

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const SceneState s = random_scene(seed % 4, PairCombination::TopTop, seed);
        const double gap =
            (s.shoes[0].pose.position.xy() - s.shoes[1].pose.position.xy()).norm();
        CHECK(gap > s.shoes[0].model.length / 2.0 + s.shoes[1].model.length / 2.0);
        CHECK_FALSE(s.shoes[0].in_box);
        CHECK_FALSE(s.shoes[1].in_box);
    }
}

TEST_CASE("random_scene rejects bottom combinations for no-bottom shoes") {
    CHECK_THROWS_AS(random_scene(1, PairCombination::BottomBottom, 0), NoBottomState);
    CHECK_THROWS_AS(random_scene(2, PairCombination::SideBottom, 0), NoBottomState);
    CHECK_NOTHROW(random_scene(1, PairCombination::TopTop, 0));
}

TEST_CASE("edge placement arrest: second shoe over-rotation is stopped at the side") {
    SceneState scene = scene_for(ShoeState::Top, ShoeState::SideInsideUp);
    const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
    FailureModel f;
    f.over_rotation_probability = 1.0;
    std::mt19937_64 rng(f.seed);
    SceneState world = scene;
    bool saw_edge = false;
    for (const auto& a : plan.actions) {
        if (std::holds_alternative<PlaceOnEdgeAction>(a)) {
            auto [next, outcome] = execute_action(world, a, f, rng);
            // The first shoe is already placed, so the outcome stays nominal.
            CHECK(outcome == StepOutcome::Success);
            CHECK(is_side(next.shoes[action_shoe(a) - 1].state));
            saw_edge = true;
            world = next;
        } else {
            world = execute_action(world, a, FailureModel{}, rng).first;
        }
    }
    CHECK(saw_edge);
}

TEST_CASE("final footprints stay inside the box walls") {
    const std::vector<std::pair<ShoeState, ShoeState>> cases = {
        {ShoeState::Top, ShoeState::Top},
        {ShoeState::Top, ShoeState::SideOutsideUp},
        {ShoeState::SideInsideUp, ShoeState::SideOutsideUp},
        {ShoeState::Bottom, ShoeState::Bottom},
    };
    for (const auto& entry : catalog()) {
        for (const auto& [s1, s2] : cases) {
            const bool bottoms = s1 == ShoeState::Bottom || s2 == ShoeState::Bottom;
            if (bottoms && !entry.shoe.has_bottom_state) continue;
            SceneState scene = scene_for(s1, s2, entry.shoe.name);
            const PackingPlan plan = plan_packing(scene, PlanningMode::WithContactMethod);
            std::mt19937_64 rng(0);
            for (const auto& a : plan.actions)
                scene = execute_action(scene, a, FailureModel{}, rng).first;

            const Vec2 pb = scene.box.pB.position.xy();
            const Vec2 pc = scene.box.pC.position.xy();
            const Vec2 long_dir = (pc - pb).normalized();
            const Vec2 lat_dir = long_dir.perp();
            const Vec2 center = (pb + pc) * 0.5;
            for (const auto& shoe : scene.shoes) {
                REQUIRE(shoe.in_box);
                const Vec2 x_dir = rotate2({1, 0}, shoe.pose.yaw);
                const Vec2 y_dir = x_dir.perp();
                // Side-lying footprint: length along X; across it, the sole
                // plane sits 0.25 H from the axis and the topline 0.75 H on
                // the other side (toward -Y_body for SideInsideUp).
                const double topline_sign =
                    shoe.state == ShoeState::SideInsideUp ? -1.0 : 1.0;
                for (double sx : {-1.0, 1.0})
                    for (double f : {-0.25, 0.75}) {
                        const Vec2 corner =
                            shoe.pose.position.xy() +
                            x_dir * (sx * shoe.model.length / 2.0) +
                            y_dir * (topline_sign * f * shoe.model.height);
                        const Vec2 rel = corner - center;
                        CHECK(std::abs(rel.dot(long_dir)) <=
                              scene.box_model.length / 2.0 + 1e-6);
                        CHECK(std::abs(rel.dot(lat_dir)) <=
                              scene.box_model.width / 2.0 + 1e-6);
                    }
            }
        }
    }
}

TEST_CASE("executing a side rotation lifts the topline up and over the sole edge") {
    SceneState scene = scene_for(ShoeState::SideInsideUp, ShoeState::SideInsideUp);
    auto& shoe = scene.shoes[0];
    const KeypointSet before =
        synthesize_keypoints(shoe.model, shoe.pose, shoe.state, 0.0, 0);
    const TopplingPlan plan = plan_toppling(before, shoe.pose, shoe.state,
                                            scene.table_height, scene.gripper);
    REQUIRE(plan.kind == TopplingKind::RotateSide);

    std::mt19937_64 rng(0);
    const auto [after_scene, outcome] =
        execute_action(scene, Action{ToppleAction{1, plan}}, FailureModel{}, rng);
    CHECK(outcome == StepOutcome::Success);
    const auto& moved = after_scene.shoes[0];
    CHECK(moved.state == ShoeState::Top);
    const KeypointSet after =
        synthesize_keypoints(moved.model, moved.pose, moved.state, 0.0, 0);
    // Upward: the opening ends higher than it lay; over: it crossed the
    // sole contact line against the topple direction.
    CHECK(after.topline->z > before.topline->z + 1.0);
    const Vec2 shift = (after.topline->xy() - before.topline->xy());
    CHECK(shift.dot(plan.direction) < 0.0);
}
