#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "packpair/errors.hpp"
#include "packpair/perception.hpp"

namespace packpair {

// Dense confidence grid, scores in [0, 1], row-major.
struct Heatmap {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<float> scores;

    float at(std::uint32_t row, std::uint32_t col) const { return scores[row * width + col]; }
};

// One heatmap per keypoint channel, fixed order (toe, heel, topline,
// outside, inside) when produced from shoes; the metrics themselves accept
// any channel count.
struct HeatmapStack {
    std::vector<Heatmap> maps;
};

struct LossWeights {
    double alpha = 0.618;
};

struct ArgmaxResult {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    float score = 0.0f;
};

// Smallest row-major index wins ties.
ArgmaxResult heatmap_argmax(const Heatmap& map);

/// Mean squared difference over all channels and pixels.
double mse_loss(const HeatmapStack& truth, const HeatmapStack& pred);

/// Mean normalized argmax distance over channels whose ground-truth max
/// equals 1; other channels are excluded. Normalization: x/width,
/// y/height. Throws NoVisibleKeypoints when no channel qualifies.
double ned_loss(const HeatmapStack& truth, const HeatmapStack& pred);

/// alpha * mse + (1 - alpha) * ned.
double overall_loss(const HeatmapStack& truth, const HeatmapStack& pred,
                    const LossWeights& w);

/// Mean distance over mutually visible keypoints divided by the
/// ground-truth toe-heel distance.
double dimensionless_keypoint_error(const KeypointSet& pred, const KeypointSet& truth);

// Same normalization applied to heatmap argmax locations in pixel space;
// channel order (toe, heel, topline, outside, inside), visibility from the
// ground-truth max = 1 rule.
double dimensionless_keypoint_error(const HeatmapStack& pred, const HeatmapStack& truth);

// Plain binary format: little-endian u32 header (channels, height, width)
// followed by row-major f32 scores per channel.
HeatmapStack load_heatmap_stack(const std::string& path);
void save_heatmap_stack(const std::string& path, const HeatmapStack& stack);

}  // namespace packpair
