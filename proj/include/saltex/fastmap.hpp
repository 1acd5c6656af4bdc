#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace saltex {

/// Squared distance between two objects by index.
using SquaredDistance = std::function<double(int, int)>;

/// Coordinates produced by the pivot/projection recursion.
struct Embedding {
    int count = 0;
    int axes = 0;
    std::vector<double> coords; // count * axes, row-major
    std::vector<std::pair<int, int>> pivots; // (a, b) per axis; (-1,-1) for degenerate axes

    double coord(int object, int axis) const {
        return coords[static_cast<std::size_t>(object) * axes + axis];
    }
};

/// Pivot heuristic: seed with object 0, take the farthest object as a,
/// then the object farthest from a as b. Ties break to the lowest index.
/// Returns nullopt when all pairwise distances are zero.
std::optional<std::pair<int, int>> choose_pivots(int count, const SquaredDistance& d2);

/// Projection onto the pivot axis:
/// x_i = (d2(a,i) + d2(a,b) - d2(b,i)) / (2 * d(a,b)).
/// The pivots take their closed-form values x_a = 0 and x_b = d(a,b).
/// Requires d2(a,b) > 0.
std::vector<double> project_axis(int count, const SquaredDistance& d2, int a, int b);

/// Distance remaining after removing one axis:
/// sqrt(max(0, d^2 - (x_i - x_j)^2)).
double residual_distance(double d, double xi, double xj);

/// Embeds `count` objects into `target_k` axes, re-choosing pivots under
/// the residual distance each round. A degenerate axis (and all later
/// ones) comes out all-zero.
Embedding embed(int count, const SquaredDistance& d2, int target_k);

/// Euclidean convenience wrapper over row-major `count` x `dim` data.
Embedding embed_vectors(std::span<const double> data, int count, int dim, int target_k);

} // namespace saltex
