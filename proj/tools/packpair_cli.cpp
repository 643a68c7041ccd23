// packpair command line: plan/simulate/batch over scenario files plus
// heatmap metric evaluation.
//
// Exit codes: 0 success, 1 task failure, 2 input error, 3 unplannable.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "packpair/metrics.hpp"
#include "packpair/scenario.hpp"

using namespace packpair;

namespace {

constexpr int kExitTaskFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnplannable = 3;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PlanningMode mode_from_flag(const std::string& flag) {
    if (flag == "with") return PlanningMode::WithContactMethod;
    if (flag == "without") return PlanningMode::WithoutContactMethod;
    throw ParseError("--mode must be 'with' or 'without'");
}

int cmd_plan(const std::string& path, const std::optional<std::string>& mode_flag) {
    Scenario s = load_scenario(path);
    if (mode_flag) s.mode = mode_from_flag(*mode_flag);
    const PackingPlan plan = plan_scenario(s);
    std::cout << format_plan(plan, s.scene);
    return 0;
}

int cmd_simulate(const std::string& path, bool replan, bool trace_flag,
                 const std::optional<std::string>& mode_flag,
                 std::optional<std::uint64_t> seed) {
    Scenario s = load_scenario(path);
    if (mode_flag) s.mode = mode_from_flag(*mode_flag);
    if (seed) s.failure.seed = *seed;
    const RunSummary summary = run_scenario(s, replan);

    std::string out;
    out += "combination=" + to_string(summary.combination) +
           " mode=" + to_string(s.mode) +
           " predicted_topples=" + std::to_string(summary.predicted_topples) + "\n";
    if (trace_flag) {
        out += format_trace(summary.trace);
    } else {
        // report block only
        const std::string full = format_trace(summary.trace);
        out += full.substr(full.rfind("report "));
    }
    if (!summary.trace.completed) {
        for (const auto& step : summary.trace.steps)
            if (step.outcome != StepOutcome::Success)
                out += "failed_step=" + std::to_string(step.index) + " action=" + step.action +
                       " outcome=" + to_string(step.outcome) + "\n";
    }
    std::cout << out;
    return summary.trace.final_report.overall ? 0 : kExitTaskFailure;
}

struct BatchRow {
    PairCombination combination;
    int topples = 0;
    bool success = false;
};

int cmd_batch(int count, std::uint64_t seed, const std::string& mode_flag,
              const std::optional<std::string>& catalog_filter,
              const std::optional<std::string>& combination_filter, bool replan, bool verbose) {
    const auto start = std::chrono::steady_clock::now();
    const PlanningMode mode = mode_from_flag(mode_flag);
    std::vector<std::size_t> catalog_ids;
    for (std::size_t i = 0; i < catalog().size(); ++i)
        if (!catalog_filter || catalog()[i].shoe.name == *catalog_filter)
            catalog_ids.push_back(i);
    if (catalog_ids.empty()) throw ParseError("no catalog entry named " + *catalog_filter);
    std::optional<PairCombination> combo_filter;
    if (combination_filter) combo_filter = pair_combination_from_string(*combination_filter);

    std::vector<BatchRow> rows(count);
    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
            const std::uint64_t si = mix_seed(seed, std::uint64_t(i));
            const std::size_t cat = catalog_ids[i % catalog_ids.size()];
            PairCombination combo = combo_filter
                                        ? *combo_filter
                                        : PairCombination(i % 7);
            // Structural exclusions: resample the combination deterministically.
            std::uint64_t bump = 1;
            while (true) {
                try {
                    const SceneState scene = random_scene(cat, combo, si);
                    const PackingPlan plan = plan_packing(scene, mode);
                    RunOptions opts;
                    opts.replan_on_failure = replan;
                    const ExecutionTrace trace = run_plan(scene, plan, FailureModel{}, opts);
                    rows[i] = {combo, plan.predicted_topple_count,
                               trace.final_report.overall};
                    break;
                } catch (const NoBottomState&) {
                    combo = PairCombination((int(combo) + int(bump++)) % 7);
                } catch (const Error&) {
                    rows[i] = {combo, 0, false};
                    break;
                }
            }
        }
    };
    const unsigned n_threads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int successes = 0;
    long total_topples = 0;
    std::map<int, int> histogram;
    std::map<PairCombination, std::pair<int, int>> per_combo;  // success, total
    for (const auto& row : rows) {
        successes += row.success;
        total_topples += row.topples;
        histogram[row.topples]++;
        auto& entry = per_combo[row.combination];
        entry.first += row.success;
        entry.second += 1;
    }
    const double wall =
        std::chrono::duration_cast<std::chrono::duration<double>>(
            std::chrono::steady_clock::now() - start)
            .count();
    char buf[128];
    std::printf("batch count=%d seed=%llu mode=%s\n", count, (unsigned long long)seed,
                to_string(mode).c_str());
    std::printf("success_fraction=%.4f mean_topples=%.4f\n", double(successes) / count,
                double(total_topples) / count);
    // Timing stays out of the byte-stable report.
    std::fprintf(stderr, "wall_seconds=%.3f\n", wall);
    for (const auto& [topples, n] : histogram)
        std::printf("topples=%d scenarios=%d\n", topples, n);
    if (verbose)
        for (const auto& [combo, sc] : per_combo) {
            std::snprintf(buf, sizeof(buf), "combination=%s success=%d/%d",
                          to_string(combo).c_str(), sc.first, sc.second);
            std::printf("%s\n", buf);
        }
    return 0;
}

int cmd_eval_keypoints(const std::string& truth_path, const std::string& pred_path,
                       double alpha) {
    const HeatmapStack truth = load_heatmap_stack(truth_path);
    const HeatmapStack pred = load_heatmap_stack(pred_path);
    const double mse = mse_loss(truth, pred);
    const double ned = ned_loss(truth, pred);
    const double all = overall_loss(truth, pred, LossWeights{alpha});
    const double kp_err = dimensionless_keypoint_error(pred, truth);
    std::printf("L_mse = %.6g\n", mse);
    std::printf("L_ned = %.6g\n", ned);
    std::printf("L_all = %.6g\n", all);
    std::printf("keypoint_error = %.6g\n", kp_err);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packpair: shoe-pair packing planner and quasi-static simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> mode_flag;
    std::optional<std::uint64_t> seed_flag;
    bool replan = false, trace_flag = false, verbose = false;

    auto* plan = app.add_subcommand("plan", "print the packing plan for a scenario");
    plan->add_option("--scenario", scenario_path, "scenario file")->required();
    plan->add_option_function<std::string>(
        "--mode", [&](const std::string& v) { mode_flag = v; }, "with|without");

    auto* simulate = app.add_subcommand("simulate", "plan and execute a scenario");
    simulate->add_option("--scenario", scenario_path, "scenario file")->required();
    simulate->add_option_function<std::string>(
        "--mode", [&](const std::string& v) { mode_flag = v; }, "with|without");
    simulate->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed_flag = v; }, "failure model seed override");
    simulate->add_flag("--replan", replan, "replan after injected failures");
    simulate->add_flag("--trace", trace_flag, "print per-step trace lines");

    int count = 100;
    std::uint64_t batch_seed = 0;
    std::string batch_mode = "with";
    std::optional<std::string> catalog_filter, combination_filter;
    auto* batch = app.add_subcommand("batch", "run seeded random scenarios");
    batch->add_option("--count", count, "number of scenarios")->check(CLI::PositiveNumber);
    batch->add_option("--seed", batch_seed, "master seed");
    batch->add_option("--mode", batch_mode, "with|without");
    batch->add_option_function<std::string>(
        "--catalog", [&](const std::string& v) { catalog_filter = v; },
        "restrict to one catalog shoe");
    batch->add_option_function<std::string>(
        "--combination", [&](const std::string& v) { combination_filter = v; },
        "restrict to one combination");
    batch->add_flag("--replan", replan, "replan after failures");
    batch->add_flag("--verbose", verbose, "per-combination breakdown");

    std::string truth_path, pred_path;
    double alpha = 0.618;
    auto* eval = app.add_subcommand("eval-keypoints", "score heatmap files");
    eval->add_option("truth", truth_path, "ground-truth heatmap stack")->required();
    eval->add_option("pred", pred_path, "predicted heatmap stack")->required();
    eval->add_option("--alpha", alpha, "overall loss weight")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitInputError;
    }

    try {
        if (plan->parsed()) return cmd_plan(scenario_path, mode_flag);
        if (simulate->parsed())
            return cmd_simulate(scenario_path, replan, trace_flag, mode_flag, seed_flag);
        if (batch->parsed())
            return cmd_batch(count, batch_seed, batch_mode, catalog_filter, combination_filter,
                             replan, verbose);
        if (eval->parsed()) return cmd_eval_keypoints(truth_path, pred_path, alpha);
    } catch (const Unplannable& e) {
        std::fprintf(stderr, "unplannable: %s\n", e.what());
        return kExitUnplannable;
    } catch (const ParseError& e) {
        if (e.line > 0)
            std::fprintf(stderr, "error: %s (line %d, column %d)\n", e.what(), e.line,
                         e.column);
        else
            std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return 0;
}
