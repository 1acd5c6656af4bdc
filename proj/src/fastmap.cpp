#include "saltex/fastmap.hpp"

#include <algorithm>
#include <cmath>

#include "saltex/types.hpp"

namespace saltex {

namespace {

int farthest_from(int seed, int count, const SquaredDistance& d2) {
    int best = seed;
    double best_d = -1.0;
    for (int i = 0; i < count; ++i) {
        const double d = d2(seed, i);
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

} // namespace

std::optional<std::pair<int, int>> choose_pivots(int count, const SquaredDistance& d2) {
    if (count < 2) return std::nullopt;
    const int a = farthest_from(0, count, d2);
    if (d2(0, a) <= 0.0) return std::nullopt;
    const int b = farthest_from(a, count, d2);
    if (d2(a, b) <= 0.0) return std::nullopt;
    return std::pair{a, b};
}

std::vector<double> project_axis(int count, const SquaredDistance& d2, int a, int b) {
    const double dab2 = d2(a, b);
    const double dab = std::sqrt(dab2);
    std::vector<double> x(count, 0.0);
    for (int i = 0; i < count; ++i) {
        if (i == a) {
            x[i] = 0.0;
        } else if (i == b) {
            x[i] = dab;
        } else {
            x[i] = (d2(a, i) + dab2 - d2(b, i)) / (2.0 * dab);
        }
    }
    return x;
}

double residual_distance(double d, double xi, double xj) {
    const double dx = xi - xj;
    return std::sqrt(std::max(0.0, d * d - dx * dx));
}

Embedding embed(int count, const SquaredDistance& d2, int target_k) {
    Embedding e;
    e.count = std::max(count, 0);
    e.axes = std::max(target_k, 0);
    e.coords.assign(static_cast<std::size_t>(e.count) * e.axes, 0.0);
    e.pivots.assign(e.axes, {-1, -1});

    SquaredDistance cur = d2;
    for (int axis = 0; axis < e.axes; ++axis) {
        const auto piv = choose_pivots(e.count, cur);
        if (!piv) break; // this axis and everything after stays zero
        const auto [a, b] = *piv;
        const std::vector<double> x = project_axis(e.count, cur, a, b);
        for (int i = 0; i < e.count; ++i)
            e.coords[static_cast<std::size_t>(i) * e.axes + axis] = x[i];
        e.pivots[axis] = {a, b};
        if (axis + 1 < e.axes) {
            SquaredDistance prev = std::move(cur);
            cur = [prev, x](int i, int j) {
                const double dx = x[i] - x[j];
                return std::max(0.0, prev(i, j) - dx * dx);
            };
        }
    }
    return e;
}

Embedding embed_vectors(std::span<const double> data, int count, int dim, int target_k) {
    if (data.size() != static_cast<std::size_t>(count) * dim)
        throw Error(ErrorCode::DimensionMismatch, "vector buffer does not match count*dim");
    SquaredDistance d2 = [data, dim](int i, int j) {
        const double* pi = data.data() + static_cast<std::size_t>(i) * dim;
        const double* pj = data.data() + static_cast<std::size_t>(j) * dim;
        double s = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double d = pi[c] - pj[c];
            s += d * d;
        }
        return s;
    };
    return embed(count, d2, target_k);
}

} // namespace saltex
