#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "saltex/color_space.hpp"
#include "saltex/ltp.hpp"
#include "saltex/slico.hpp"

namespace saltex {

/// One descriptor per superpixel: the 9 per-pair requantized code
/// histograms concatenated in pair order. Every pixel of a superpixel
/// shares its superpixel's vector.
struct FeatureField {
    int count = 0; // superpixels
    int pairs = 9;
    int bins = 0;
    std::vector<double> vectors; // count * (pairs*bins), row-major

    int dim() const { return pairs * bins; }
    std::span<const double> vector_of(int label) const {
        return {vectors.data() + static_cast<std::size_t>(label) * dim(),
                static_cast<std::size_t>(dim())};
    }
};

/// Histogram of one superpixel's codes, requantized to `bins` classes by
/// bin(c) = floor(c * bins / code_count) and normalized to frequencies.
/// Throws Error{EmptyLabel} when the label has no pixels.
std::vector<double> pair_histogram(const CodeMap& codes, const SuperpixelLabeling& lab, int label,
                                   int bins);

/// Codes all 9 channel pairs of `img` and assembles the per-superpixel
/// concatenated histograms.
FeatureField build_feature_field(const ColorImage& img, const SuperpixelLabeling& lab,
                                 const NeighborhoodSpec& spec, int bins);

/// Debug CSV dump, one row per superpixel: label followed by the vector.
void write_feature_csv(const FeatureField& field, const std::filesystem::path& path);

} // namespace saltex
