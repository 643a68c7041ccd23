#include "packpair/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

namespace packpair {

namespace {

void check_shapes(const HeatmapStack& truth, const HeatmapStack& pred) {
    if (truth.maps.size() != pred.maps.size())
        throw ShapeMismatch("channel counts differ");
    for (size_t k = 0; k < truth.maps.size(); ++k) {
        const auto& t = truth.maps[k];
        const auto& p = pred.maps[k];
        if (t.height != p.height || t.width != p.width)
            throw ShapeMismatch("heatmap dimensions differ");
        if (t.height == 0 || t.width == 0) throw ShapeMismatch("empty heatmap");
        if (t.scores.size() != size_t(t.height) * t.width ||
            p.scores.size() != size_t(p.height) * p.width)
            throw ShapeMismatch("score buffer does not match dimensions");
    }
}

}  // namespace

ArgmaxResult heatmap_argmax(const Heatmap& map) {
    ArgmaxResult best{0, 0, map.scores.empty() ? 0.0f : map.scores[0]};
    for (std::uint32_t r = 0; r < map.height; ++r)
        for (std::uint32_t c = 0; c < map.width; ++c) {
            const float s = map.at(r, c);
            if (s > best.score) best = {r, c, s};
        }
    return best;
}

double mse_loss(const HeatmapStack& truth, const HeatmapStack& pred) {
    check_shapes(truth, pred);
    double sum = 0.0;
    size_t count = 0;
    for (size_t k = 0; k < truth.maps.size(); ++k) {
        const auto& t = truth.maps[k].scores;
        const auto& p = pred.maps[k].scores;
        for (size_t i = 0; i < t.size(); ++i) {
            const double d = double(t[i]) - double(p[i]);
            sum += d * d;
        }
        count += t.size();
    }
    return sum / double(count);
}

double ned_loss(const HeatmapStack& truth, const HeatmapStack& pred) {
    check_shapes(truth, pred);
    double sum = 0.0;
    size_t visible = 0;
    for (size_t k = 0; k < truth.maps.size(); ++k) {
        const ArgmaxResult t = heatmap_argmax(truth.maps[k]);
        if (t.score != 1.0f) continue;  // unseen keypoint, excluded
        const ArgmaxResult p = heatmap_argmax(pred.maps[k]);
        const double w = truth.maps[k].width;
        const double h = truth.maps[k].height;
        const double dx = double(t.col) / w - double(p.col) / w;
        const double dy = double(t.row) / h - double(p.row) / h;
        sum += std::hypot(dx, dy);
        ++visible;
    }
    if (visible == 0) throw NoVisibleKeypoints("no channel has ground-truth max 1");
    return sum / double(visible);
}

double overall_loss(const HeatmapStack& truth, const HeatmapStack& pred,
                    const LossWeights& w) {
    if (w.alpha < 0.0 || w.alpha > 1.0) throw DegenerateInput("alpha outside [0, 1]");
    return w.alpha * mse_loss(truth, pred) + (1.0 - w.alpha) * ned_loss(truth, pred);
}

double dimensionless_keypoint_error(const KeypointSet& pred, const KeypointSet& truth) {
    if (!truth.toe || !truth.heel) throw DegenerateInput("truth toe/heel required");
    const double scale = (*truth.toe - *truth.heel).norm();
    if (scale <= 0.0) throw DegenerateInput("truth toe and heel coincide");

    const std::array<const std::optional<Vec3>*, 5> ps = {&pred.toe, &pred.heel, &pred.topline,
                                                          &pred.outside, &pred.inside};
    const std::array<const std::optional<Vec3>*, 5> ts = {&truth.toe, &truth.heel,
                                                          &truth.topline, &truth.outside,
                                                          &truth.inside};
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < 5; ++i) {
        if (ps[i]->has_value() != ts[i]->has_value())
            throw InconsistentKeypoints("prediction and truth visibility differ");
        if (!ps[i]->has_value()) continue;
        sum += (**ps[i] - **ts[i]).norm() / scale;
        ++count;
    }
    if (count == 0) throw NoVisibleKeypoints("no mutually visible keypoints");
    return sum / double(count);
}

double dimensionless_keypoint_error(const HeatmapStack& pred, const HeatmapStack& truth) {
    check_shapes(truth, pred);
    if (truth.maps.size() < 2) throw ShapeMismatch("need toe and heel channels");
    const ArgmaxResult toe = heatmap_argmax(truth.maps[0]);
    const ArgmaxResult heel = heatmap_argmax(truth.maps[1]);
    const double scale = std::hypot(double(toe.col) - double(heel.col),
                                    double(toe.row) - double(heel.row));
    if (scale <= 0.0) throw DegenerateInput("truth toe and heel coincide");
    double sum = 0.0;
    int count = 0;
    for (size_t k = 0; k < truth.maps.size(); ++k) {
        const ArgmaxResult t = heatmap_argmax(truth.maps[k]);
        if (t.score != 1.0f) continue;
        const ArgmaxResult p = heatmap_argmax(pred.maps[k]);
        sum += std::hypot(double(t.col) - double(p.col), double(t.row) - double(p.row)) / scale;
        ++count;
    }
    if (count == 0) throw NoVisibleKeypoints("no visible channels");
    return sum / double(count);
}

HeatmapStack load_heatmap_stack(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open heatmap file: " + path);
    std::uint32_t header[3];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in) throw ParseError("truncated heatmap header: " + path);
    const std::uint32_t channels = header[0], height = header[1], width = header[2];
    if (channels == 0 || height == 0 || width == 0)
        throw ParseError("bad heatmap header (zero dimension): " + path);
    if (double(channels) * height * width > 5e8)
        throw ParseError("heatmap header implausibly large: " + path);
    HeatmapStack stack;
    stack.maps.resize(channels);
    for (auto& map : stack.maps) {
        map.height = height;
        map.width = width;
        map.scores.resize(size_t(height) * width);
        in.read(reinterpret_cast<char*>(map.scores.data()),
                std::streamsize(map.scores.size() * sizeof(float)));
        if (!in) throw ParseError("truncated heatmap payload: " + path);
        for (float s : map.scores)
            if (!(s >= 0.0f && s <= 1.0f))
                throw ParseError("heatmap score outside [0, 1]: " + path);
    }
    return stack;
}

void save_heatmap_stack(const std::string& path, const HeatmapStack& stack) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write heatmap file: " + path);
    if (stack.maps.empty()) throw ShapeMismatch("empty stack");
    const std::uint32_t header[3] = {std::uint32_t(stack.maps.size()), stack.maps[0].height,
                                     stack.maps[0].width};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (const auto& map : stack.maps) {
        if (map.height != header[1] || map.width != header[2])
            throw ShapeMismatch("stack channels disagree on dimensions");
        out.write(reinterpret_cast<const char*>(map.scores.data()),
                  std::streamsize(map.scores.size() * sizeof(float)));
    }
}

}  // namespace packpair
