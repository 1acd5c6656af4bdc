#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace saltex {

enum class ErrorCode {
    Io,
    Format,
    TooSmall,
    UnsupportedSpace,
    InvalidK,
    EmptyLabel,
    DimensionMismatch,
    EmptySet,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// 8-bit raster, row-major, channels interleaved (RGB for 3-channel data).
struct RasterU8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Binary mask paired with an image of the same dimensions.
struct GroundTruth {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask; // H*W values in {0,1}

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t positives() const;
};

/// Real-valued map in [0,1]; brighter means more salient.
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<double> values; // H*W, row-major

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

inline std::size_t GroundTruth::positives() const {
    std::size_t n = 0;
    for (std::uint8_t v : mask) n += v;
    return n;
}

} // namespace saltex
