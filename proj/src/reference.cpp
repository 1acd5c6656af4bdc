#include "saltex/reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace saltex::ref {

namespace {

double bilinear(std::span<const float> plane, int width, int height, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double v00 = plane[static_cast<std::size_t>(y0) * width + x0];
    const double v10 = plane[static_cast<std::size_t>(y0) * width + x1];
    const double v01 = plane[static_cast<std::size_t>(y1) * width + x0];
    const double v11 = plane[static_cast<std::size_t>(y1) * width + x1];
    const double top = v00 + fx * (v10 - v00);
    const double bot = v01 + fx * (v11 - v01);
    return top + fy * (bot - top);
}

} // namespace

CodeMap code_pair(const ColorImage& img, ChannelPair pair, const NeighborhoodSpec& spec) {
    CodeMap out;
    out.width = img.width;
    out.height = img.height;
    out.code_base = 3;
    out.code_count = 1;
    for (int p = 0; p < spec.neighbors; ++p) out.code_count *= 3;
    out.codes.resize(static_cast<std::size_t>(img.width) * img.height);

    const std::span<const float> center_plane = img.plane(pair.center_plane);
    const std::span<const float> neighbor_plane = img.plane(pair.neighbor_plane);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double center = center_plane[static_cast<std::size_t>(y) * img.width + x];
            const double t = center / 10.0;
            int code = 0;
            int weight = 1;
            for (int p = 0; p < spec.neighbors; ++p) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) /
                                     spec.neighbors;
                const double gx = x + spec.radius * std::cos(angle);
                const double gy = y - spec.radius * std::sin(angle);
                const double g = bilinear(neighbor_plane, img.width, img.height, gx, gy);
                const double z = g - center;
                int digit = 0;
                if (z >= t)
                    digit = 2;
                else if (std::abs(z) < t)
                    digit = 1;
                code += digit * weight;
                weight *= 3;
            }
            out.codes[static_cast<std::size_t>(y) * img.width + x] = code;
        }
    }
    return out;
}

namespace {

constexpr double kM[9] = {0.4124564, 0.3575761, 0.1804375, 0.2126729, 0.7151522,
                          0.0721750, 0.0193339, 0.1191920, 0.9503041};
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;
constexpr double kEps = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) { return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

struct Lab {
    std::vector<double> l, a, b;
};

Lab to_lab(const RasterU8& img) {
    Lab lab;
    const std::size_t n = img.pixel_count();
    lab.l.resize(n);
    lab.a.resize(n);
    lab.b.resize(n);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double r = srgb_to_linear(img.at(x, y, 0) / 255.0);
            const double g = srgb_to_linear(img.at(x, y, 1) / 255.0);
            const double bl = srgb_to_linear(img.at(x, y, 2) / 255.0);
            const double xx = kM[0] * r + kM[1] * g + kM[2] * bl;
            const double yy = kM[3] * r + kM[4] * g + kM[5] * bl;
            const double zz = kM[6] * r + kM[7] * g + kM[8] * bl;
            const double fx = lab_f(xx / kXn);
            const double fy = lab_f(yy / kYn);
            const double fz = lab_f(zz / kZn);
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            lab.l[i] = 116.0 * fy - 16.0;
            lab.a[i] = 500.0 * (fx - fy);
            lab.b[i] = 200.0 * (fy - fz);
        }
    }
    return lab;
}

double gradient2(const Lab& lab, int w, int h, int x, int y) {
    const int xl = std::max(x - 1, 0), xr = std::min(x + 1, w - 1);
    const int yu = std::max(y - 1, 0), yd = std::min(y + 1, h - 1);
    const std::size_t h0 = static_cast<std::size_t>(y) * w + xl;
    const std::size_t h1 = static_cast<std::size_t>(y) * w + xr;
    const std::size_t v0 = static_cast<std::size_t>(yu) * w + x;
    const std::size_t v1 = static_cast<std::size_t>(yd) * w + x;
    double g = 0.0;
    const double hl = lab.l[h1] - lab.l[h0], ha = lab.a[h1] - lab.a[h0],
                 hb = lab.b[h1] - lab.b[h0];
    const double vl = lab.l[v1] - lab.l[v0], va = lab.a[v1] - lab.a[v0],
                 vb = lab.b[v1] - lab.b[v0];
    g += hl * hl + ha * ha + hb * hb;
    g += vl * vl + va * va + vb * vb;
    return g;
}

} // namespace

SuperpixelLabeling segment(const RasterU8& img, int k) {
    const int w = img.width, h = img.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw Error(ErrorCode::InvalidK, "superpixel count out of range");

    const Lab lab = to_lab(img);
    const double s = std::sqrt(static_cast<double>(n) / k);
    const double s2 = s * s;

    struct Center {
        double l, a, b, x, y;
    };
    std::vector<Center> centers;
    const int nx = std::max(1, static_cast<int>(std::lround(w / s)));
    const int ny = std::max(1, static_cast<int>(std::lround(h / s)));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int sx = std::min(static_cast<int>((i + 0.5) * w / nx), w - 1);
            int sy = std::min(static_cast<int>((j + 0.5) * h / ny), h - 1);
            if (s >= 2.0) {
                double best = std::numeric_limits<double>::infinity();
                int bx = sx, by = sy;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int px = std::clamp(sx + dx, 0, w - 1);
                        const int py = std::clamp(sy + dy, 0, h - 1);
                        const double g = gradient2(lab, w, h, px, py);
                        if (g < best) {
                            best = g;
                            bx = px;
                            by = py;
                        }
                    }
                }
                sx = bx;
                sy = by;
            }
            const std::size_t i0 = static_cast<std::size_t>(sy) * w + sx;
            centers.push_back({lab.l[i0], lab.a[i0], lab.b[i0], static_cast<double>(sx),
                               static_cast<double>(sy)});
        }
    }
    const int numk = static_cast<int>(centers.size());

    std::vector<int> labels(n, -1);
    std::vector<double> best_dc2(n, 0.0);
    std::vector<double> m2(numk, 100.0);

    auto color_d2 = [&lab, &centers](std::size_t i, int c) {
        const double dl = lab.l[i] - centers[c].l;
        const double da = lab.a[i] - centers[c].a;
        const double db = lab.b[i] - centers[c].b;
        return dl * dl + da * da + db * db;
    };

    for (int iter = 0; iter < 10; ++iter) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                double best = std::numeric_limits<double>::infinity();
                int best_c = -1;
                double best_color = 0.0;
                for (int c = 0; c < numk; ++c) {
                    const double dx = x - centers[c].x;
                    const double dy = y - centers[c].y;
                    if (dx > s || dx < -s || dy > s || dy < -s) continue;
                    const double dc2 = color_d2(i, c);
                    const double d = dc2 / m2[c] + (dx * dx + dy * dy) / s2;
                    if (d < best || (d == best && c < best_c)) {
                        best = d;
                        best_c = c;
                        best_color = dc2;
                    }
                }
                if (best_c < 0) {
                    double nearest = std::numeric_limits<double>::infinity();
                    for (int c = 0; c < numk; ++c) {
                        const double dx = x - centers[c].x;
                        const double dy = y - centers[c].y;
                        const double d2 = dx * dx + dy * dy;
                        if (d2 < nearest) {
                            nearest = d2;
                            best_c = c;
                        }
                    }
                    best_color = color_d2(i, best_c);
                }
                labels[i] = best_c;
                best_dc2[i] = best_color;
            }
        }

        std::vector<double> observed(numk, -1.0);
        for (std::size_t i = 0; i < n; ++i)
            observed[labels[i]] = std::max(observed[labels[i]], best_dc2[i]);
        for (int c = 0; c < numk; ++c)
            if (observed[c] >= 0.0) m2[c] = std::max(observed[c], 1e-12);

        std::vector<double> sl(numk, 0.0), sa(numk, 0.0), sb(numk, 0.0), sx(numk, 0.0),
            sy(numk, 0.0);
        std::vector<std::size_t> size(numk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const int c = labels[i];
            sl[c] += lab.l[i];
            sa[c] += lab.a[i];
            sb[c] += lab.b[i];
            sx[c] += static_cast<double>(i % w);
            sy[c] += static_cast<double>(i / w);
            ++size[c];
        }
        for (int c = 0; c < numk; ++c) {
            if (size[c] == 0) continue;
            const double inv = 1.0 / static_cast<double>(size[c]);
            centers[c] = {sl[c] * inv, sa[c] * inv, sb[c] * inv, sx[c] * inv, sy[c] * inv};
        }
    }

    // Connectivity cleanup: split labels into 4-connected components, keep
    // the largest per label, merge the rest into resolved neighbors.
    std::vector<int> comp(n, -1);
    std::vector<int> comp_label;
    std::vector<std::vector<int>> comp_pixels;
    std::vector<int> work;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const int id = static_cast<int>(comp_label.size());
        comp_label.push_back(labels[start]);
        comp_pixels.emplace_back();
        comp[start] = id;
        work.assign(1, static_cast<int>(start));
        while (!work.empty()) {
            const int p = work.back();
            work.pop_back();
            comp_pixels[id].push_back(p);
            const int px = p % w, py = p / w;
            const int nb[4] = {px > 0 ? p - 1 : -1, px < w - 1 ? p + 1 : -1,
                               py > 0 ? p - w : -1, py < h - 1 ? p + w : -1};
            for (int q : nb) {
                if (q >= 0 && comp[q] < 0 && labels[q] == comp_label[id]) {
                    comp[q] = id;
                    work.push_back(q);
                }
            }
        }
    }

    const int comp_count = static_cast<int>(comp_label.size());
    std::vector<int> keeper(numk, -1);
    for (int c = 0; c < comp_count; ++c) {
        int& best = keeper[comp_label[c]];
        if (best < 0 || comp_pixels[c].size() > comp_pixels[best].size()) best = c;
    }

    SuperpixelLabeling out;
    out.width = w;
    out.height = h;
    out.labels.assign(n, -1);
    std::vector<std::size_t> region_size;
    std::deque<int> orphans;
    for (int c = 0; c < comp_count; ++c) {
        if (keeper[comp_label[c]] == c) {
            const int id = out.count++;
            region_size.push_back(comp_pixels[c].size());
            for (int p : comp_pixels[c]) out.labels[p] = id;
        } else {
            orphans.push_back(c);
        }
    }
    while (!orphans.empty()) {
        const int c = orphans.front();
        orphans.pop_front();
        int target = -1;
        for (int p : comp_pixels[c]) {
            const int px = p % w, py = p / w;
            const int nb[4] = {px > 0 ? p - 1 : -1, px < w - 1 ? p + 1 : -1,
                               py > 0 ? p - w : -1, py < h - 1 ? p + w : -1};
            for (int q : nb) {
                if (q < 0) continue;
                const int f = out.labels[q];
                if (f < 0 || f == target) continue;
                if (target < 0 || region_size[f] > region_size[target] ||
                    (region_size[f] == region_size[target] && f < target)) {
                    target = f;
                }
            }
        }
        if (target < 0) {
            orphans.push_back(c);
            continue;
        }
        for (int p : comp_pixels[c]) out.labels[p] = target;
        region_size[target] += comp_pixels[c].size();
    }
    return out;
}

std::vector<double> pair_histogram(const CodeMap& codes, const SuperpixelLabeling& lab, int label,
                                   int bins) {
    std::vector<double> hist(bins, 0.0);
    long long total = 0;
    for (std::size_t i = 0; i < codes.codes.size(); ++i) {
        if (lab.labels[i] != label) continue;
        hist[codes.codes[i] * bins / codes.code_count] += 1.0;
        ++total;
    }
    if (total == 0) throw Error(ErrorCode::EmptyLabel, "superpixel has no pixels");
    for (double& v : hist) v /= static_cast<double>(total);
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
    for (int p = 0; p < field.pairs; ++p) {
        const CodeMap codes = ref::code_pair(img, pairs[p], spec);
        for (int s = 0; s < field.count; ++s) {
            const std::vector<double> hist = ref::pair_histogram(codes, lab, s, bins);
            std::copy(hist.begin(), hist.end(),
                      field.vectors.begin() + static_cast<std::size_t>(s) * field.dim() +
                          static_cast<std::size_t>(p) * bins);
        }
    }
    return field;
}

double mae(const SaliencyMap& map, const GroundTruth& gt) {
    if (map.width != gt.width || map.height != gt.height)
        throw Error(ErrorCode::DimensionMismatch, "map and mask disagree on shape");
    double sum = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i)
        sum += std::abs(map.values[i] - static_cast<double>(gt.mask[i]));
    return sum / static_cast<double>(map.values.size());
}

std::pair<double, double> pr_at(const SaliencyMap& map, const GroundTruth& gt, int tau) {
    if (map.width != gt.width || map.height != gt.height)
        throw Error(ErrorCode::DimensionMismatch, "map and mask disagree on shape");
    long long tp = 0, pp = 0, pos = 0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const int q =
            std::clamp(static_cast<int>(std::lround(255.0 * map.values[i])), 0, kThresholds - 1);
        const bool pred = q >= tau;
        const bool truth = gt.mask[i] != 0;
        pp += pred;
        pos += truth;
        tp += pred && truth;
    }
    const double precision = pp > 0 ? static_cast<double>(tp) / static_cast<double>(pp) : 0.0;
    const double recall = pos > 0 ? static_cast<double>(tp) / static_cast<double>(pos) : 1.0;
    return {precision, recall};
}

BestF best_fbeta(const SaliencyMap& map, const GroundTruth& gt) {
    BestF best{-1.0, 0};
    for (int tau = 0; tau < kThresholds; ++tau) {
        const auto [p, r] = ref::pr_at(map, gt, tau);
        const double den = kBetaSquared * p + r;
        const double f = den <= 0.0 ? 0.0 : (1.0 + kBetaSquared) * p * r / den;
        if (f > best.f) {
            best.f = f;
            best.tau = tau;
        }
    }
    return best;
}

} // namespace saltex::ref
