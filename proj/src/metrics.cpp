#include "saltex/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace saltex {

namespace {

void require_same_shape(const SaliencyMap& map, const GroundTruth& gt) {
    if (map.width != gt.width || map.height != gt.height)
        throw Error(ErrorCode::DimensionMismatch, "map and mask disagree on shape");
}

int quantize(double s) {
    return std::clamp(static_cast<int>(std::lround(255.0 * s)), 0, kThresholds - 1);
}

} // namespace

double mae(const SaliencyMap& map, const GroundTruth& gt) {
    require_same_shape(map, gt);
    double sum = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i)
        sum += std::abs(map.values[i] - static_cast<double>(gt.mask[i]));
    return sum / static_cast<double>(map.values.size());
}

std::pair<double, double> pr_at(const SaliencyMap& map, const GroundTruth& gt, int tau) {
    require_same_shape(map, gt);
    long long tp = 0, pp = 0, pos = 0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const bool pred = quantize(map.values[i]) >= tau;
        const bool truth = gt.mask[i] != 0;
        pp += pred;
        pos += truth;
        tp += pred && truth;
    }
    const double precision = pp > 0 ? static_cast<double>(tp) / static_cast<double>(pp) : 0.0;
    const double recall = pos > 0 ? static_cast<double>(tp) / static_cast<double>(pos) : 1.0;
    return {precision, recall};
}

double f_beta(double precision, double recall, double beta2) {
    const double den = beta2 * precision + recall;
    if (den <= 0.0) return 0.0;
    return (1.0 + beta2) * precision * recall / den;
}

BestF best_fbeta(const SaliencyMap& map, const GroundTruth& gt) {
    const ImageEval e = evaluate(map, gt);
    return {e.best_f, e.best_tau};
}

ImageEval evaluate(const SaliencyMap& map, const GroundTruth& gt) {
    require_same_shape(map, gt);

    // One pass builds value histograms split by the mask; every threshold
    // then falls out of the suffix sums.
    long long pos_hist[kThresholds] = {};
    long long neg_hist[kThresholds] = {};
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const int q = quantize(map.values[i]);
        const bool truth = gt.mask[i] != 0;
        (truth ? pos_hist : neg_hist)[q] += 1;
        abs_sum += std::abs(map.values[i] - static_cast<double>(truth));
    }
    long long pos = 0;
    for (long long c : pos_hist) pos += c;

    ImageEval e;
    e.mae = abs_sum / static_cast<double>(map.values.size());

    long long tp = 0, pp = 0;
    std::array<long long, kThresholds> tp_at{}, pp_at{};
    for (int tau = kThresholds - 1; tau >= 0; --tau) {
        tp += pos_hist[tau];
        pp += pos_hist[tau] + neg_hist[tau];
        tp_at[tau] = tp;
        pp_at[tau] = pp;
    }
    e.best_f = -1.0;
    for (int tau = 0; tau < kThresholds; ++tau) {
        const double p =
            pp_at[tau] > 0 ? static_cast<double>(tp_at[tau]) / static_cast<double>(pp_at[tau])
                           : 0.0;
        const double r =
            pos > 0 ? static_cast<double>(tp_at[tau]) / static_cast<double>(pos) : 1.0;
        e.precision[tau] = p;
        e.recall[tau] = r;
        const double f = f_beta(p, r);
        if (f > e.best_f) {
            e.best_f = f;
            e.best_tau = tau;
        }
    }
    return e;
}

EvalReport aggregate(std::span<const ImageEval> evals) {
    if (evals.empty()) throw Error(ErrorCode::EmptySet, "nothing to aggregate");
    EvalReport r;
    r.images = static_cast<int>(evals.size());
    for (const ImageEval& e : evals) {
        r.mean_mae += e.mae;
        r.mean_best_f += e.best_f;
        for (int tau = 0; tau < kThresholds; ++tau) {
            r.precision[tau] += e.precision[tau];
            r.recall[tau] += e.recall[tau];
        }
    }
    const double inv = 1.0 / r.images;
    r.mean_mae *= inv;
    r.mean_best_f *= inv;
    for (int tau = 0; tau < kThresholds; ++tau) {
        r.precision[tau] *= inv;
        r.recall[tau] *= inv;
        r.f_curve[tau] = f_beta(r.precision[tau], r.recall[tau]);
    }
    return r;
}

} // namespace saltex
