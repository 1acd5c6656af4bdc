#pragma once

#include <vector>

#include "saltex/types.hpp"

namespace saltex {

/// Dense labeling of the image into K' 4-connected regions.
struct SuperpixelLabeling {
    int width = 0;
    int height = 0;
    int count = 0;           // K'
    std::vector<int> labels; // H*W, values in [0, count)

    int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Zero-parameter SLIC: grid seeding at interval S = sqrt(N/K), seed
/// perturbation to the lowest-gradient 3x3 position, 10 assignment/update
/// iterations with per-cluster adaptive color normalization
/// D^2 = (d_color/m_c)^2 + (d_spatial/S)^2, then a connectivity pass that
/// merges orphan fragments into the largest adjacent region.
/// Throws Error{InvalidK} unless 1 <= k <= width*height.
SuperpixelLabeling segment(const RasterU8& img, int k);

/// Pixel count per label; sums to width*height.
std::vector<int> superpixel_sizes(const SuperpixelLabeling& lab);

/// Copy of the image with label boundaries painted red (debug export).
RasterU8 boundary_overlay(const RasterU8& img, const SuperpixelLabeling& lab);

} // namespace saltex
