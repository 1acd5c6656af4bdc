#pragma once

#include <filesystem>
#include <vector>

#include "saltex/color_space.hpp"

namespace saltex {

/// Batch configuration; the defaults are the model's working point
/// (100 superpixels, P=5, R=1, 75 bins, all four color spaces).
struct RunConfig {
    std::filesystem::path input_dir;
    std::filesystem::path gt_dir;     // empty -> no evaluation
    std::filesystem::path output_dir;
    int superpixels = 100;
    std::vector<ColorSpace> spaces{kAllColorSpaces.begin(), kAllColorSpaces.end()};
    int neighbors = 5;
    int radius = 1;
    int bins = 75;
    int workers = 0; // 0 -> hardware concurrency
    bool emit_space_maps = false;
    bool emit_superpixels = false;
    bool emit_features = false;
};

/// Runs the pipeline over every decodable image in input_dir, writing one
/// saliency PNG per input (basename preserved, .png extension) and, when
/// gt_dir is set, per_image.csv / curves.csv / aggregate.csv.
/// Returns 0 on success, 1 on usage errors (empty input, unreadable
/// directories), 2 when some images were skipped.
int run(const RunConfig& cfg);

/// Scores pre-computed maps against ground truth; pairs by basename and
/// writes the same CSV artifacts as run(). Same exit convention.
int eval_only(const std::filesystem::path& maps_dir, const std::filesystem::path& gt_dir,
              const std::filesystem::path& report_dir);

} // namespace saltex
