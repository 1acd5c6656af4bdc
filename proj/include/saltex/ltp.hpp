#pragma once

#include <span>
#include <utility>
#include <vector>

#include "saltex/color_space.hpp"

namespace saltex {

/// Circle-sampled neighborhood: `neighbors` points at angles 2*pi*p/P
/// starting east, counterclockwise, on a radius-`radius` circle.
struct NeighborhoodSpec {
    int neighbors = 5;
    int radius = 1;

    /// (dx, dy) offset of sample p; rows grow downward, so the
    /// counterclockwise sweep uses dy = -sin.
    std::pair<double, double> offset(int p) const;
    bool valid() const { return neighbors >= 1 && radius >= 1; }
};

/// Per-pixel texture codes for one channel pair.
struct CodeMap {
    int width = 0;
    int height = 0;
    int code_base = 3;  // 2 for binary, 3 for ternary coding
    int code_count = 0; // code_base^neighbors
    std::vector<int> codes;

    int at(int x, int y) const { return codes[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary code: sum over p of s(g_p - g_c) * 2^p with s(z) = 1 iff z >= 0.
int lbp_code(double center, std::span<const double> neighbors);

/// Ternary code: sum over p of s(g_p - g_c) * 3^p with
/// s(z) = 2 if z >= t, 1 if |z| < t, 0 if z <= -t.
int ltp_code(double center, std::span<const double> neighbors, double threshold);

/// Per-pixel dead-zone threshold: a tenth of the center value.
double adaptive_threshold(double center);

/// Ternary-codes every pixel: center read from pair.center_plane, the P
/// neighbors bilinearly sampled from pair.neighbor_plane on the radius-R
/// circle (coordinates clamped to the image rectangle), threshold
/// adaptive per pixel. Parallel over rows; output independent of the
/// schedule.
CodeMap code_pair(const ColorImage& img, ChannelPair pair, const NeighborhoodSpec& spec);

namespace detail {
/// Bilinear lookup at clamped real coordinates on one plane.
double sample_plane(std::span<const float> plane, int width, int height, double x, double y);
} // namespace detail

} // namespace saltex
