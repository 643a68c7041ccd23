#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "packpair/planner.hpp"
#include "packpair/scene.hpp"

namespace packpair {

// Seeded injection of the observed failure modes. All probabilities
// default to zero; nonzero values are user-supplied.
struct FailureModel {
    double keypoint_noise_sigma = 0.0;   // mm, applied at detection time
    double side_swap_probability = 0.0;  // wrong side variant out of a primitive
    double over_rotation_probability = 0.0;  // rotation overshoots one stable state
    std::uint64_t seed = 0;
};

enum class StepOutcome { Success, OverRotated, SideSwapped, SettledWrong, Skipped };

std::string to_string(StepOutcome o);

struct TraceStep {
    int index = 0;
    std::string action;
    int shoe = 0;
    std::string pre;
    std::string post;
    StepOutcome outcome = StepOutcome::Success;
};

struct ExecutionTrace {
    std::vector<TraceStep> steps;
    TargetConfigReport final_report;
    bool completed = false;
    int replans = 0;
};

/// Applies one action to the scene. Nominal transitions are deterministic;
/// the failure model may replace the outcome per its seeded draws (two
/// uniform draws are consumed per primitive regardless of probabilities,
/// keeping streams aligned).
std::pair<SceneState, StepOutcome> execute_action(const SceneState& scene, const Action& a,
                                                  const FailureModel& f, std::mt19937_64& rng);

struct RunOptions {
    bool replan_on_failure = false;
    int max_replans = 5;
};

/// Executes the plan in order. On a failed step, either halts with the
/// failure recorded or, with replanning enabled and both shoes still on
/// the table, replans from the post-failure scene (bounded).
ExecutionTrace run_plan(const SceneState& scene, const PackingPlan& plan, const FailureModel& f,
                        const RunOptions& opts = {});

/// Deterministic random scene: shoes in the requested combination at
/// non-overlapping table poses clear of the box. Throws NoBottomState for
/// combinations a catalog shoe cannot assume.
SceneState random_scene(std::size_t catalog_index, PairCombination combination,
                        std::uint64_t seed);

std::string format_trace(const ExecutionTrace& trace);

}  // namespace packpair
