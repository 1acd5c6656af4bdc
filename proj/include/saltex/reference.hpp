#pragma once

// Serial reference implementations. Straight-line translations of the
// defining formulas, kept independent of the optimized kernels so tests
// can compare the two and the benchmark can measure the gap.

#include "saltex/color_space.hpp"
#include "saltex/features.hpp"
#include "saltex/ltp.hpp"
#include "saltex/metrics.hpp"
#include "saltex/slico.hpp"
#include "saltex/types.hpp"

namespace saltex::ref {

/// Per-pixel ternary coding evaluated directly: recompute the sample
/// angles and bilinear taps at every pixel, no precomputation.
CodeMap code_pair(const ColorImage& img, ChannelPair pair, const NeighborhoodSpec& spec);

/// Clustering with a full scan over all clusters per pixel (no spatial
/// binning) and no threading.
SuperpixelLabeling segment(const RasterU8& img, int k);

/// Histogram of one superpixel by direct counting.
std::vector<double> pair_histogram(const CodeMap& codes, const SuperpixelLabeling& lab, int label,
                                   int bins);

/// Feature vectors assembled label by label from ref::pair_histogram.
FeatureField build_feature_field(const ColorImage& img, const SuperpixelLabeling& lab,
                                 const NeighborhoodSpec& spec, int bins);

double mae(const SaliencyMap& map, const GroundTruth& gt);

/// Precision/recall by re-binarizing the whole map at the threshold.
std::pair<double, double> pr_at(const SaliencyMap& map, const GroundTruth& gt, int tau);

/// Exhaustive 256-threshold scan, each threshold scored from scratch.
BestF best_fbeta(const SaliencyMap& map, const GroundTruth& gt);

} // namespace saltex::ref
