#pragma once

#include <filesystem>

#include "saltex/types.hpp"

namespace saltex {

/// Decodes a PNG/JPEG file into a 3-channel RGB raster.
/// Grayscale sources are replicated to 3 channels.
/// Throws Error{Io} for unreadable paths, Error{Format} for undecodable
/// content and Error{TooSmall} when either dimension is below 3.
RasterU8 load_image(const std::filesystem::path& path);

/// Decodes a mask file and binarizes it: first-channel value >= 128 -> 1.
GroundTruth load_ground_truth(const std::filesystem::path& path);

/// Loads an 8-bit grayscale saliency map; first-channel value / 255.
SaliencyMap load_saliency(const std::filesystem::path& path);

/// Writes a saliency map as 8-bit grayscale PNG, pixel = round(255*s)
/// with round-half-up.
void save_saliency(const SaliencyMap& map, const std::filesystem::path& path);

/// Writes a 1- or 3-channel raster as PNG.
void save_raster(const RasterU8& img, const std::filesystem::path& path);

} // namespace saltex
