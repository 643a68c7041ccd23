#pragma once

#include <string>

#include "packpair/simulator.hpp"

namespace packpair {

// Parsed scenario file: a scene plus the planning/simulation options.
struct Scenario {
    SceneState scene;
    PlanningMode mode = PlanningMode::WithContactMethod;
    FailureModel failure;
};

inline constexpr const char* kScenarioHeader = "packpair-scenario v1";

/// Parses the flat key/section scenario text. Unknown sections or keys are
/// rejected with line/column diagnostics.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

/// Canonical serialization; parse(write(s)) reproduces the scenario.
std::string write_scenario(const Scenario& s);

struct RunSummary {
    PairCombination combination;
    int predicted_topples = 0;
    int executed_actions = 0;
    ExecutionTrace trace;
};

/// Plans from the (noise-perturbed, when configured) detected scene and
/// executes on the true scene.
RunSummary run_scenario(const Scenario& s, bool replan_on_failure);

PackingPlan plan_scenario(const Scenario& s);

// Human-readable plan listing: one line per action, angles in degrees
// with two decimals.
std::string format_plan(const PackingPlan& plan, const SceneState& scene);

}  // namespace packpair
