#include "saltex/pipeline.hpp"

#include <cmath>

#include "saltex/fastmap.hpp"

namespace saltex {

namespace {

SaliencyMap broadcast(const Embedding& e, const SuperpixelLabeling& lab) {
    std::vector<double> values(lab.labels.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = e.coord(lab.labels[i], 0);
    SaliencyMap map;
    map.width = lab.width;
    map.height = lab.height;
    map.values = normalize_01(lab.width, lab.height, values).values;
    return map;
}

} // namespace

CenterTemplate center_template(int width, int height) {
    CenterTemplate t;
    t.width = width;
    t.height = height;
    t.rect_w = width / 2;
    t.rect_h = height / 2;
    t.rect_x = (width - t.rect_w) / 2;
    t.rect_y = (height - t.rect_h) / 2;
    return t;
}

SaliencyMap normalize_01(int width, int height, std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySet, "nothing to normalize");
    SaliencyMap map;
    map.width = width;
    map.height = height;
    map.values.assign(values.begin(), values.end());
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double range = hi - lo;
    if (range <= 0.0) {
        std::fill(map.values.begin(), map.values.end(), 0.0);
        return map;
    }
    for (double& v : map.values) v = (v - lo) / range;
    return map;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw Error(ErrorCode::DimensionMismatch, "signals differ in length");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va <= 0.0 || vb <= 0.0) return std::nullopt;
    return cov / std::sqrt(va * vb);
}

SaliencyMap orient(const SaliencyMap& map) {
    const CenterTemplate t = center_template(map.width, map.height);
    std::vector<double> prior(map.values.size());
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x)
            prior[static_cast<std::size_t>(y) * map.width + x] = t.at(x, y);
    const auto r = pearson(map.values, prior);
    if (!r || *r >= 0.0) return map;
    SaliencyMap flipped = map;
    for (double& v : flipped.values) v = 1.0 - v;
    return flipped;
}

SaliencyMap space_map(const RasterU8& img, ColorSpace space, const SuperpixelLabeling& lab,
                      const PipelineConfig& cfg) {
    const ColorImage converted = convert(img, space);
    const FeatureField field = build_feature_field(converted, lab, cfg.neighborhood, cfg.bins);
    const Embedding e = embed_vectors(field.vectors, field.count, field.dim(), 1);
    return orient(broadcast(e, lab));
}

SaliencyMap fuse(const std::vector<SaliencyMap>& maps, const SuperpixelLabeling& lab) {
    if (maps.empty()) throw Error(ErrorCode::EmptySet, "no maps to fuse");
    const std::size_t n = lab.labels.size();
    for (const SaliencyMap& m : maps)
        if (m.width != lab.width || m.height != lab.height)
            throw Error(ErrorCode::DimensionMismatch, "map does not match labeling");

    // Row per superpixel, column per space: mean map value over the region.
    const int dim = static_cast<int>(maps.size());
    std::vector<double> rows(static_cast<std::size_t>(lab.count) * dim, 0.0);
    std::vector<long long> sizes(lab.count, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[lab.labels[i]];
    for (int m = 0; m < dim; ++m)
        for (std::size_t i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(lab.labels[i]) * dim + m] += maps[m].values[i];
    for (int s = 0; s < lab.count; ++s)
        for (int m = 0; m < dim; ++m)
            rows[static_cast<std::size_t>(s) * dim + m] /= static_cast<double>(sizes[s]);

    const Embedding e = embed_vectors(rows, lab.count, dim, 1);
    return orient(broadcast(e, lab));
}

PipelineResult run_pipeline(const RasterU8& img, const PipelineConfig& cfg) {
    PipelineResult result;
    result.labeling = segment(img, cfg.superpixels);
    const std::vector<ColorSpace> spaces = canonical_spaces(cfg.spaces);
    result.space_maps.reserve(spaces.size());
    for (ColorSpace s : spaces)
        result.space_maps.push_back(space_map(img, s, result.labeling, cfg));
    result.fused = fuse(result.space_maps, result.labeling);
    return result;
}

} // namespace saltex
