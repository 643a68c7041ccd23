#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "packpair/contact.hpp"
#include "packpair/metrics.hpp"
#include "packpair/scenario.hpp"

namespace py = pybind11;
using namespace packpair;

namespace {

std::vector<std::pair<double, double>> hull_py(
    const std::vector<std::pair<double, double>>& pts) {
    std::vector<Point2> points;
    points.reserve(pts.size());
    for (const auto& [x, y] : pts) points.push_back({x, y});
    const Polygon hull = convex_hull(points);
    std::vector<std::pair<double, double>> out;
    out.reserve(hull.vertices.size());
    for (const auto& v : hull.vertices) out.emplace_back(v.x, v.y);
    return out;
}

py::dict min_area_rect_py(const std::vector<std::pair<double, double>>& pts) {
    std::vector<Point2> points;
    for (const auto& [x, y] : pts) points.push_back({x, y});
    const RectFit fit = min_area_rect(convex_hull(points));
    py::dict d;
    d["center"] = py::make_tuple(fit.center.x, fit.center.y);
    d["half_extents"] = py::make_tuple(fit.half_extents.x, fit.half_extents.y);
    d["angle"] = fit.angle;
    return d;
}

py::dict solution_dict(const TopplingSolution& s) {
    py::dict d;
    d["theta"] = s.theta;
    d["alpha"] = s.alpha;
    d["beta"] = s.beta;
    d["beta_max"] = s.beta_max;
    return d;
}

py::dict contact_py(double width, double height, double com_height, double com_lateral,
                    double offset, double drop_height) {
    CrossSection cs{width, height, com_height, com_lateral};
    EdgePlacement ep;
    ep.offset = offset;
    ep.drop_height = drop_height;
    const ContactOutcome out = predict_contact_outcome(cs, ep);
    py::dict d;
    d["final_state"] = to_string(out.final_state);
    d["rotation_at_floor"] = out.rotation_at_floor;
    d["settled"] = out.settled;
    return d;
}

HeatmapStack stack_from_lists(const std::vector<std::vector<std::vector<double>>>& maps) {
    HeatmapStack stack;
    for (const auto& rows : maps) {
        Heatmap map;
        map.height = std::uint32_t(rows.size());
        map.width = rows.empty() ? 0 : std::uint32_t(rows[0].size());
        for (const auto& row : rows) {
            if (row.size() != map.width) throw ShapeMismatch("ragged heatmap rows");
            for (double v : row) map.scores.push_back(float(v));
        }
        stack.maps.push_back(std::move(map));
    }
    return stack;
}

py::dict run_scenario_py(const std::string& text, bool replan) {
    const Scenario s = parse_scenario(text);
    const RunSummary summary = run_scenario(s, replan);
    py::dict d;
    d["combination"] = to_string(summary.combination);
    d["predicted_topples"] = summary.predicted_topples;
    d["success"] = summary.trace.final_report.overall;
    d["completed"] = summary.trace.completed;
    d["trace"] = format_trace(summary.trace);
    return d;
}

py::list catalog_py() {
    py::list out;
    for (const auto& e : catalog()) {
        py::dict d;
        d["name"] = e.shoe.name;
        d["length"] = e.shoe.length;
        d["width"] = e.shoe.width;
        d["height"] = e.shoe.height;
        d["mass"] = e.shoe.mass;
        d["softness"] = to_string(e.shoe.softness);
        d["has_bottom_state"] = e.shoe.has_bottom_state;
        d["box_length"] = e.box.length;
        d["box_width"] = e.box.width;
        d["box_wall_height"] = e.box.wall_height;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "shoe-pair packing planner and quasi-static simulator";

    py::register_exception<Error>(m, "PackpairError", PyExc_RuntimeError);
    py::register_exception<Unplannable>(m, "UnplannableError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ScenarioParseError", PyExc_ValueError);

    m.def("signed_angle",
          [](std::pair<double, double> a, std::pair<double, double> b) {
              return signed_angle({a.first, a.second}, {b.first, b.second});
          },
          py::arg("reference"), py::arg("target"));
    m.def("convex_hull", &hull_py, py::arg("points"));
    m.def("min_area_rect", &min_area_rect_py, py::arg("points"));

    m.def("solve_side_toppling",
          [](double width, double height, double gripper_length) {
              return solution_dict(
                  solve_side_toppling({width, height}, GripperModel{gripper_length}));
          },
          py::arg("width"), py::arg("height"), py::arg("gripper_length"));
    m.def("solve_top_toppling",
          [](double width, double height, double gripper_length) {
              return solution_dict(
                  solve_top_toppling({width, height}, GripperModel{gripper_length}));
          },
          py::arg("width"), py::arg("height"), py::arg("gripper_length"));

    m.def("predict_contact_outcome", &contact_py, py::arg("width"), py::arg("height"),
          py::arg("com_height"), py::arg("com_lateral"), py::arg("offset"),
          py::arg("drop_height"));

    m.def("classify_pair",
          [](const std::string& s1, const std::string& s2) {
              return to_string(
                  classify_pair(shoe_state_from_string(s1), shoe_state_from_string(s2)));
          },
          py::arg("state1"), py::arg("state2"));
    m.def("required_topples",
          [](const std::string& combination, const std::string& mode) {
              const PlanningMode m2 = mode == "with" ? PlanningMode::WithContactMethod
                                                     : PlanningMode::WithoutContactMethod;
              return required_topples(pair_combination_from_string(combination), m2);
          },
          py::arg("combination"), py::arg("mode"));

    m.def("mse_loss",
          [](const std::vector<std::vector<std::vector<double>>>& truth,
             const std::vector<std::vector<std::vector<double>>>& pred) {
              return mse_loss(stack_from_lists(truth), stack_from_lists(pred));
          });
    m.def("ned_loss",
          [](const std::vector<std::vector<std::vector<double>>>& truth,
             const std::vector<std::vector<std::vector<double>>>& pred) {
              return ned_loss(stack_from_lists(truth), stack_from_lists(pred));
          });
    m.def("overall_loss",
          [](const std::vector<std::vector<std::vector<double>>>& truth,
             const std::vector<std::vector<std::vector<double>>>& pred, double alpha) {
              return overall_loss(stack_from_lists(truth), stack_from_lists(pred),
                                  LossWeights{alpha});
          },
          py::arg("truth"), py::arg("pred"), py::arg("alpha") = 0.618);

    m.def("plan_scenario",
          [](const std::string& text) {
              const Scenario s = parse_scenario(text);
              return format_plan(plan_scenario(s), s.scene);
          },
          py::arg("scenario_text"));
    m.def("run_scenario", &run_scenario_py, py::arg("scenario_text"),
          py::arg("replan") = false);
    m.def("catalog", &catalog_py);
}
