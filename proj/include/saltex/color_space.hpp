#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saltex/types.hpp"

namespace saltex {

enum class ColorSpace { Rgb, Hsl, Luv, Cmy };

std::optional<ColorSpace> parse_color_space(std::string_view tag); // "rgb","hsl","luv","cmy"
std::string_view to_string(ColorSpace space);

/// Parses a list of lowercase tags; throws Error{UnsupportedSpace} on an
/// unknown tag.
std::vector<ColorSpace> parse_spaces(std::span<const std::string> tags);

/// All supported spaces in their canonical order.
constexpr std::array<ColorSpace, 4> kAllColorSpaces = {ColorSpace::Rgb, ColorSpace::Hsl,
                                                       ColorSpace::Luv, ColorSpace::Cmy};

/// Filters kAllColorSpaces down to the requested set, dropping duplicates.
std::vector<ColorSpace> canonical_spaces(std::span<const ColorSpace> requested);

/// Three planar channels, each affinely rescaled to [0,255].
struct ColorImage {
    ColorSpace space = ColorSpace::Rgb;
    int width = 0;
    int height = 0;
    std::vector<float> planes; // 3 * H * W, planar

    std::span<const float> plane(int i) const {
        const std::size_t n = static_cast<std::size_t>(width) * height;
        return {planes.data() + i * n, n};
    }
    float at(int plane_idx, int x, int y) const {
        return planes[static_cast<std::size_t>(plane_idx) * width * height +
                      static_cast<std::size_t>(y) * width + x];
    }
};

/// Ordered (center plane, neighbor plane) channel combination.
struct ChannelPair {
    int center_plane = 0;
    int neighbor_plane = 0;
    bool operator==(const ChannelPair&) const = default;
};

/// Converts an RGB raster (3 channels) into `space`; every plane is
/// rescaled so the representable range of that channel maps onto [0,255].
ColorImage convert(const RasterU8& img, ColorSpace space);

/// The 9 ordered channel combinations: (0,0),(0,1),(0,2),(1,0),...,(2,2).
std::array<ChannelPair, 9> enumerate_pairs();

} // namespace saltex
