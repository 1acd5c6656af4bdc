#pragma once

#include <array>
#include <span>
#include <utility>

#include "saltex/types.hpp"

namespace saltex {

inline constexpr int kThresholds = 256;
inline constexpr double kBetaSquared = 0.3;

/// Mean absolute per-pixel difference, map in [0,1] vs mask in {0,1}.
double mae(const SaliencyMap& map, const GroundTruth& gt);

/// Precision and recall at one threshold on the 8-bit quantized map:
/// predicted positive iff round(255*s) >= tau. Precision is 0 when nothing
/// is predicted; recall is 1 when the ground truth has no positives.
std::pair<double, double> pr_at(const SaliencyMap& map, const GroundTruth& gt, int tau);

/// (1+b2)*p*r / (b2*p + r), 0 when the denominator vanishes.
double f_beta(double precision, double recall, double beta2 = kBetaSquared);

struct BestF {
    double f = 0.0;
    int tau = 0;
};

/// Maximum F-beta over all 256 thresholds, ties to the lowest threshold.
BestF best_fbeta(const SaliencyMap& map, const GroundTruth& gt);

/// Everything the report needs from one map/mask pair.
struct ImageEval {
    double mae = 0.0;
    double best_f = 0.0;
    int best_tau = 0;
    std::array<double, kThresholds> precision{};
    std::array<double, kThresholds> recall{};
};

ImageEval evaluate(const SaliencyMap& map, const GroundTruth& gt);

/// Dataset means: MAE and best-threshold F-beta averaged per image;
/// curves from per-threshold precision/recall averaged over images.
struct EvalReport {
    int images = 0;
    double mean_mae = 0.0;
    double mean_best_f = 0.0;
    std::array<double, kThresholds> precision{};
    std::array<double, kThresholds> recall{};
    std::array<double, kThresholds> f_curve{};
};

/// Throws Error{EmptySet} when given no evaluations.
EvalReport aggregate(std::span<const ImageEval> evals);

} // namespace saltex
