#include "saltex/features.hpp"

#include <fstream>
#include <iomanip>

#include "saltex/types.hpp"

namespace saltex {

std::vector<double> pair_histogram(const CodeMap& codes, const SuperpixelLabeling& lab, int label,
                                   int bins) {
    std::vector<long long> counts(bins, 0);
    long long total = 0;
    for (std::size_t i = 0; i < codes.codes.size(); ++i) {
        if (lab.labels[i] != label) continue;
        ++counts[codes.codes[i] * bins / codes.code_count];
        ++total;
    }
    if (total == 0) throw Error(ErrorCode::EmptyLabel, "superpixel has no pixels");
    std::vector<double> hist(bins);
    for (int b = 0; b < bins; ++b)
        hist[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
    return hist;
}

FeatureField build_feature_field(const ColorImage& img, const SuperpixelLabeling& lab,
                                 const NeighborhoodSpec& spec, int bins) {
    if (img.width != lab.width || img.height != lab.height)
        throw Error(ErrorCode::DimensionMismatch, "labeling does not match image");

    const auto pairs = enumerate_pairs();
    FeatureField field;
    field.count = lab.count;
    field.pairs = static_cast<int>(pairs.size());
    field.bins = bins;
    field.vectors.assign(static_cast<std::size_t>(field.count) * field.dim(), 0.0);

    std::vector<long long> sizes(lab.count, 0);
    for (int l : lab.labels) ++sizes[l];
    for (int s = 0; s < lab.count; ++s)
        if (sizes[s] == 0) throw Error(ErrorCode::EmptyLabel, "superpixel has no pixels");

    std::vector<long long> counts(static_cast<std::size_t>(lab.count) * bins);
    for (int p = 0; p < field.pairs; ++p) {
        const CodeMap codes = code_pair(img, pairs[p], spec);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < codes.codes.size(); ++i) {
            const int bin = codes.codes[i] * bins / codes.code_count;
            ++counts[static_cast<std::size_t>(lab.labels[i]) * bins + bin];
        }
        for (int s = 0; s < lab.count; ++s) {
            double* out =
                field.vectors.data() + static_cast<std::size_t>(s) * field.dim() + p * bins;
            for (int b = 0; b < bins; ++b)
                out[b] = static_cast<double>(counts[static_cast<std::size_t>(s) * bins + b]) /
                         static_cast<double>(sizes[s]);
        }
    }
    return field;
}

void write_feature_csv(const FeatureField& field, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << std::setprecision(17);
    for (int s = 0; s < field.count; ++s) {
        out << s;
        for (double v : field.vector_of(s)) out << ',' << v;
        out << '\n';
    }
}

} // namespace saltex
