#include "packpair/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace packpair {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    int column = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

struct Document {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Document tokenize(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string current;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            if (t != kScenarioHeader)
                throw ParseError("expected header '" + std::string(kScenarioHeader) + "'",
                                 lineno, 1);
            header_seen = true;
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError("unterminated section header", lineno, 1);
            current = t.substr(1, t.size() - 2);
            if (doc.sections.count(current))
                throw ParseError("duplicate section [" + current + "]", lineno, 1);
            doc.sections[current] = {};
            doc.section_lines[current] = lineno;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno, 1);
        if (current.empty()) throw ParseError("key outside any section", lineno, 1);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("empty key or value", lineno, int(eq) + 1);
        if (doc.sections[current].count(key))
            throw ParseError("duplicate key '" + key + "'", lineno, 1);
        const int col = int(line.find(key)) + 1;
        doc.sections[current][key] = Entry{value, lineno, col};
    }
    if (!header_seen) throw ParseError("missing scenario header", 1, 1);
    return doc;
}

class SectionReader {
public:
    SectionReader(Document& doc, const std::string& name, bool required) : name_(name) {
        auto it = doc.sections.find(name);
        if (it == doc.sections.end()) {
            if (required) throw ParseError("missing section [" + name + "]");
            section_ = nullptr;
        } else {
            section_ = &it->second;
        }
    }

    bool present() const { return section_ != nullptr; }

    void allow_only(std::initializer_list<const char*> keys) const {
        if (!section_) return;
        for (const auto& [key, entry] : *section_) {
            bool known = false;
            for (const char* k : keys)
                if (key == k) known = true;
            if (!known)
                throw ParseError("unknown key '" + key + "' in [" + name_ + "]", entry.line,
                                 entry.column);
        }
    }

    std::optional<std::string> get(const std::string& key) {
        if (!section_) return std::nullopt;
        auto it = section_->find(key);
        if (it == section_->end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    double number(const std::string& key, double fallback) {
        const auto v = get(key);
        if (!v) return fallback;
        return parse_number(key, *v);
    }

    double required_number(const std::string& key) {
        const auto v = get(key);
        if (!v) throw ParseError("missing key '" + key + "' in [" + name_ + "]");
        return parse_number(key, *v);
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, entry] : *section_)
            if (!entry.used)
                throw ParseError("unknown key '" + key + "' in [" + name_ + "]", entry.line,
                                 entry.column);
    }

private:
    double parse_number(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            const auto& e = section_->at(key);
            throw ParseError("bad number for '" + key + "': " + v, e.line, e.column);
        }
    }

    Section* section_;
    std::string name_;
};

ShoeInstance read_shoe(Document& doc, const std::string& section, double table_height) {
    SectionReader r(doc, section, true);
    r.allow_only({"catalog", "name", "length", "width", "height", "mass", "softness",
                  "has_bottom_state", "side_topple_hard", "state", "x", "y", "yaw_deg"});
    ShoeInstance shoe;
    if (const auto cat = r.get("catalog")) {
        shoe.model = catalog_entry(*cat).shoe;
    } else {
        shoe.model.name = r.get("name").value_or("custom");
        shoe.model.length = r.required_number("length");
        shoe.model.width = r.required_number("width");
        shoe.model.height = r.required_number("height");
        shoe.model.mass = r.number("mass", 250.0);
        shoe.model.softness = softness_from_string(r.get("softness").value_or("rigid"));
        shoe.model.has_bottom_state = r.number("has_bottom_state", 1.0) != 0.0;
        shoe.model.side_topple_hard = r.number("side_topple_hard", 0.0) != 0.0;
        if (shoe.model.length <= 0 || shoe.model.width <= 0 || shoe.model.height <= 0 ||
            shoe.model.mass <= 0)
            throw ParseError("non-positive shoe dimensions in [" + section + "]");
    }
    const auto state_name = r.get("state");
    if (!state_name) throw ParseError("missing key 'state' in [" + section + "]");
    shoe.state = shoe_state_from_string(*state_name);
    if (shoe.state == ShoeState::Bottom && !shoe.model.has_bottom_state)
        throw NoBottomState(shoe.model.name + " has no bottom state");
    const double x = r.required_number("x");
    const double y = r.required_number("y");
    const double yaw = r.number("yaw_deg", 0.0) * kPi / 180.0;
    shoe.pose = resting_pose(shoe.model, shoe.state, {x, y}, yaw, table_height);
    r.finish();
    return shoe;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Document doc = tokenize(text);
    for (const auto& [name, line] : doc.section_lines)
        if (name != "shoe1" && name != "shoe2" && name != "box" && name != "world" &&
            name != "failure")
            throw ParseError("unknown section [" + name + "]", line, 1);

    Scenario s;
    SectionReader world(doc, "world", false);
    world.allow_only({"table_height", "gripper_length", "mode"});
    s.scene.table_height = world.number("table_height", 0.0);
    s.scene.gripper.length = world.number("gripper_length", 200.0);
    if (s.scene.gripper.length <= 0.0) throw ParseError("gripper_length must be positive");
    if (const auto mode = world.get("mode")) {
        if (*mode == "with_contact")
            s.mode = PlanningMode::WithContactMethod;
        else if (*mode == "without_contact")
            s.mode = PlanningMode::WithoutContactMethod;
        else
            throw ParseError("mode must be with_contact or without_contact");
    }
    world.finish();

    s.scene.shoes[0] = read_shoe(doc, "shoe1", s.scene.table_height);
    s.scene.shoes[1] = read_shoe(doc, "shoe2", s.scene.table_height);

    SectionReader box(doc, "box", true);
    box.allow_only({"catalog", "name", "length", "width", "wall_height", "x", "y", "yaw_deg"});
    if (const auto cat = box.get("catalog")) {
        s.scene.box_model = catalog_entry(*cat).box;
    } else {
        s.scene.box_model.name = box.get("name").value_or("custom");
        s.scene.box_model.length = box.required_number("length");
        s.scene.box_model.width = box.required_number("width");
        s.scene.box_model.wall_height = box.required_number("wall_height");
        if (s.scene.box_model.length <= 0 || s.scene.box_model.width <= 0 ||
            s.scene.box_model.wall_height <= 0)
            throw ParseError("non-positive box dimensions");
    }
    const double bx = box.required_number("x");
    const double by = box.required_number("y");
    const double byaw = box.number("yaw_deg", 0.0) * kPi / 180.0;
    s.scene.box = box_pose_from_model(s.scene.box_model, {bx, by}, byaw, s.scene.table_height);
    box.finish();

    SectionReader failure(doc, "failure", false);
    failure.allow_only({"keypoint_noise_sigma", "side_swap_probability",
                        "over_rotation_probability", "seed"});
    s.failure.keypoint_noise_sigma = failure.number("keypoint_noise_sigma", 0.0);
    s.failure.side_swap_probability = failure.number("side_swap_probability", 0.0);
    s.failure.over_rotation_probability = failure.number("over_rotation_probability", 0.0);
    s.failure.seed = std::uint64_t(failure.number("seed", 0.0));
    if (s.failure.keypoint_noise_sigma < 0.0 || s.failure.side_swap_probability < 0.0 ||
        s.failure.side_swap_probability > 1.0 || s.failure.over_rotation_probability < 0.0 ||
        s.failure.over_rotation_probability > 1.0)
        throw ParseError("failure model values out of range");
    failure.finish();

    // Initial footprints must not interpenetrate each other or the box.
    const auto& a = s.scene.shoes[0];
    const auto& b = s.scene.shoes[1];
    const double ra = std::hypot(a.model.length, a.model.height) / 2.0;
    const double rb = std::hypot(b.model.length, b.model.height) / 2.0;
    if ((a.pose.position.xy() - b.pose.position.xy()).norm() < 0.5 * (ra + rb))
        throw ParseError("shoes overlap in the initial scene");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

bool matches_catalog_shoe(const ShoeModel& m) {
    for (const auto& e : catalog())
        if (e.shoe.name == m.name && e.shoe.length == m.length && e.shoe.width == m.width &&
            e.shoe.height == m.height && e.shoe.mass == m.mass)
            return true;
    return false;
}

bool matches_catalog_box(const BoxModel& m) {
    for (const auto& e : catalog())
        if (e.box.name == m.name && e.box.length == m.length && e.box.width == m.width &&
            e.box.wall_height == m.wall_height)
            return true;
    return false;
}

void write_number(std::ostringstream& out, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s = %.17g\n", key, v);
    out << buf;
}

}  // namespace

std::string write_scenario(const Scenario& s) {
    std::ostringstream out;
    out << kScenarioHeader << "\n\n";
    for (int i = 0; i < 2; ++i) {
        const auto& shoe = s.scene.shoes[i];
        out << "[shoe" << (i + 1) << "]\n";
        if (matches_catalog_shoe(shoe.model)) {
            out << "catalog = " << shoe.model.name << "\n";
        } else {
            out << "name = " << shoe.model.name << "\n";
            write_number(out, "length", shoe.model.length);
            write_number(out, "width", shoe.model.width);
            write_number(out, "height", shoe.model.height);
            write_number(out, "mass", shoe.model.mass);
            out << "softness = " << to_string(shoe.model.softness) << "\n";
            write_number(out, "has_bottom_state", shoe.model.has_bottom_state ? 1 : 0);
            write_number(out, "side_topple_hard", shoe.model.side_topple_hard ? 1 : 0);
        }
        out << "state = " << to_string(shoe.state) << "\n";
        write_number(out, "x", shoe.pose.position.x);
        write_number(out, "y", shoe.pose.position.y);
        write_number(out, "yaw_deg", shoe.pose.yaw * 180.0 / kPi);
        out << "\n";
    }
    out << "[box]\n";
    if (matches_catalog_box(s.scene.box_model)) {
        out << "catalog = " << s.scene.box_model.name << "\n";
    } else {
        out << "name = " << s.scene.box_model.name << "\n";
        write_number(out, "length", s.scene.box_model.length);
        write_number(out, "width", s.scene.box_model.width);
        write_number(out, "wall_height", s.scene.box_model.wall_height);
    }
    const Vec2 center = (s.scene.box.pB.position.xy() + s.scene.box.pC.position.xy()) * 0.5;
    const Vec2 long_dir =
        (s.scene.box.pC.position.xy() - s.scene.box.pB.position.xy()).normalized();
    write_number(out, "x", center.x);
    write_number(out, "y", center.y);
    // pB sits on the +X short side of the modeled box frame.
    write_number(out, "yaw_deg", std::atan2(-long_dir.y, -long_dir.x) * 180.0 / kPi);
    out << "\n[world]\n";
    write_number(out, "table_height", s.scene.table_height);
    write_number(out, "gripper_length", s.scene.gripper.length);
    out << "mode = " << to_string(s.mode) << "\n";
    out << "\n[failure]\n";
    write_number(out, "keypoint_noise_sigma", s.failure.keypoint_noise_sigma);
    write_number(out, "side_swap_probability", s.failure.side_swap_probability);
    write_number(out, "over_rotation_probability", s.failure.over_rotation_probability);
    write_number(out, "seed", double(s.failure.seed));
    return out.str();
}

namespace {

// Detection pass: re-estimate states and poses from (optionally noisy)
// synthetic keypoints, as the perception stack would.
SceneState detected_scene(const Scenario& s) {
    SceneState detected = s.scene;
    if (s.failure.keypoint_noise_sigma <= 0.0) return detected;
    for (int i = 0; i < 2; ++i) {
        auto& shoe = detected.shoes[i];
        const KeypointSet k =
            synthesize_keypoints(shoe.model, shoe.pose, shoe.state,
                                 s.failure.keypoint_noise_sigma, s.failure.seed + i);
        const ShoeState state = classify_state(k);
        shoe.state = state;
        shoe.pose = estimate_shoe_pose(k, state);
    }
    return detected;
}

}  // namespace

PackingPlan plan_scenario(const Scenario& s) { return plan_packing(detected_scene(s), s.mode); }

RunSummary run_scenario(const Scenario& s, bool replan_on_failure) {
    RunSummary out;
    out.combination = classify_pair(s.scene.shoes[0].state, s.scene.shoes[1].state);
    const PackingPlan plan = plan_scenario(s);
    out.predicted_topples = plan.predicted_topple_count;
    RunOptions opts;
    opts.replan_on_failure = replan_on_failure;
    out.trace = run_plan(s.scene, plan, s.failure, opts);
    out.executed_actions = int(out.trace.steps.size());
    return out;
}

std::string format_plan(const PackingPlan& plan, const SceneState& scene) {
    std::ostringstream out;
    char buf[256];
    const PairCombination combo = classify_pair(scene.shoes[0].state, scene.shoes[1].state);
    out << "packpair-plan v1\n";
    out << "combination=" << to_string(combo) << " mode=" << to_string(plan.mode)
        << " predicted_topples=" << plan.predicted_topple_count << "\n";
    const double deg = 180.0 / kPi;
    int step = 0;
    for (const auto& a : plan.actions) {
        ++step;
        if (std::holds_alternative<DetectSceneAction>(a)) {
            std::snprintf(buf, sizeof(buf), "step=%d action=detect_scene", step);
            out << buf << "\n";
            continue;
        }
        if (const auto* p = std::get_if<PushAction>(&a)) {
            std::snprintf(buf, sizeof(buf),
                          "step=%d action=push shoe=%d dir=(%.2f,%.2f) "
                          "p1=(%.2f,%.2f,%.2f) p2=(%.2f,%.2f,%.2f)",
                          step, p->shoe, p->plan.direction.x, p->plan.direction.y,
                          p->plan.start.position.x, p->plan.start.position.y,
                          p->plan.start.position.z, p->plan.end.position.x,
                          p->plan.end.position.y, p->plan.end.position.z);
            out << buf << "\n";
            continue;
        }
        if (const auto* t = std::get_if<ToppleAction>(&a)) {
            const auto& sol = *t->plan.solution;
            std::snprintf(buf, sizeof(buf),
                          "step=%d action=topple shoe=%d kind=%s theta_deg=%.2f "
                          "alpha_deg=%.2f beta_deg=%.2f beta_max_deg=%.2f dir=(%.2f,%.2f) "
                          "p1=(%.2f,%.2f,%.2f) p2=(%.2f,%.2f,%.2f)",
                          step, t->shoe, to_string(t->plan.kind).c_str(), sol.theta * deg,
                          sol.alpha * deg, sol.beta * deg, sol.beta_max * deg,
                          t->plan.direction.x, t->plan.direction.y, t->plan.start.position.x,
                          t->plan.start.position.y, t->plan.start.position.z,
                          t->plan.end.position.x, t->plan.end.position.y,
                          t->plan.end.position.z);
            out << buf << "\n";
            continue;
        }
        if (const auto* g = std::get_if<GraspAction>(&a)) {
            std::snprintf(buf, sizeof(buf),
                          "step=%d action=grasp shoe=%d at=(%.2f,%.2f,%.2f) yaw_deg=%.2f", step,
                          g->shoe, g->grasp.position.x, g->grasp.position.y,
                          g->grasp.position.z, g->grasp.yaw * deg);
            out << buf << "\n";
            continue;
        }
        if (const auto* d = std::get_if<PlaceDirectAction>(&a)) {
            std::snprintf(buf, sizeof(buf),
                          "step=%d action=place_direct shoe=%d target=(%.2f,%.2f,%.2f) "
                          "yaw_deg=%.2f roll_deg=%.2f",
                          step, d->shoe, d->target.position.x, d->target.position.y,
                          d->target.position.z, d->target.yaw * deg, d->target.roll * deg);
            out << buf << "\n";
            continue;
        }
        if (const auto* e = std::get_if<PlaceOnEdgeAction>(&a)) {
            std::snprintf(buf, sizeof(buf),
                          "step=%d action=place_on_edge shoe=%d offset_mm=%.2f drop_mm=%.2f "
                          "contact=(%.2f,%.2f,%.2f) yaw_deg=%.2f",
                          step, e->shoe, e->placement.offset, e->placement.drop_height,
                          e->placement.contact_point.position.x,
                          e->placement.contact_point.position.y,
                          e->placement.contact_point.position.z,
                          e->placement.contact_point.yaw * deg);
            out << buf << "\n";
            continue;
        }
    }
    return out.str();
}

}  // namespace packpair
