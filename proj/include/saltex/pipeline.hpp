#pragma once

#include <optional>
#include <span>
#include <vector>

#include "saltex/color_space.hpp"
#include "saltex/features.hpp"
#include "saltex/slico.hpp"
#include "saltex/types.hpp"

namespace saltex {

struct PipelineConfig {
    std::vector<ColorSpace> spaces{kAllColorSpaces.begin(), kAllColorSpaces.end()};
    int superpixels = 100;
    NeighborhoodSpec neighborhood{};
    int bins = 75;
};

/// Centered rectangle prior of roughly half the image size.
struct CenterTemplate {
    int width = 0, height = 0;
    int rect_x = 0, rect_y = 0, rect_w = 0, rect_h = 0;

    bool contains(int x, int y) const {
        return x >= rect_x && x < rect_x + rect_w && y >= rect_y && y < rect_y + rect_h;
    }
    double at(int x, int y) const { return contains(x, y) ? 1.0 : 0.0; }
};

CenterTemplate center_template(int width, int height);

/// Min-max rescaling to [0,1]; a constant input maps to all zeros.
SaliencyMap normalize_01(int width, int height, std::span<const double> values);

/// Pearson correlation coefficient; nullopt when either signal is constant.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Flips the map to its complement (s -> 1-s) when it anti-correlates
/// with the center template; otherwise returns it unchanged.
SaliencyMap orient(const SaliencyMap& map);

/// One color space's probabilistic map: features -> 1-D embedding ->
/// broadcast per superpixel -> normalize -> orient.
SaliencyMap space_map(const RasterU8& img, ColorSpace space, const SuperpixelLabeling& lab,
                      const PipelineConfig& cfg);

/// Cross-space fusion: per superpixel, the vector of per-space mean values
/// is embedded to one axis, then broadcast, normalized and oriented.
SaliencyMap fuse(const std::vector<SaliencyMap>& maps, const SuperpixelLabeling& lab);

struct PipelineResult {
    SuperpixelLabeling labeling;
    std::vector<SaliencyMap> space_maps; // one per configured space, canonical order
    SaliencyMap fused;
};

/// Full per-image run: one segmentation shared by all spaces, then fusion.
PipelineResult run_pipeline(const RasterU8& img, const PipelineConfig& cfg);

} // namespace saltex
