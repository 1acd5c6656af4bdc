#include "saltex/slico.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

namespace saltex {

namespace {

// sRGB (D65) to CIELAB, the working space for the distance metric.
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

struct LabImage {
    int width = 0;
    int height = 0;
    std::vector<double> l, a, b;

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

LabImage to_lab(const RasterU8& img) {
    LabImage lab;
    lab.width = img.width;
    lab.height = img.height;
    const std::size_t n = img.pixel_count();
    lab.l.resize(n);
    lab.a.resize(n);
    lab.b.resize(n);
#pragma omp parallel for schedule(static)
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
            const std::size_t i = lab.idx(x, y);
            lab.l[i] = 116.0 * fy - 16.0;
            lab.a[i] = 500.0 * (fx - fy);
            lab.b[i] = 200.0 * (fy - fz);
        }
    }
    return lab;
}

struct Center {
    double l = 0, a = 0, b = 0, x = 0, y = 0;
};

double color_d2(const LabImage& lab, std::size_t i, const Center& c) {
    const double dl = lab.l[i] - c.l;
    const double da = lab.a[i] - c.a;
    const double db = lab.b[i] - c.b;
    return dl * dl + da * da + db * db;
}

// Squared gradient magnitude with clamped taps, used for seed perturbation.
double gradient2(const LabImage& lab, int x, int y) {
    const int xl = std::max(x - 1, 0), xr = std::min(x + 1, lab.width - 1);
    const int yu = std::max(y - 1, 0), yd = std::min(y + 1, lab.height - 1);
    double g = 0.0;
    const std::size_t h0 = lab.idx(xl, y), h1 = lab.idx(xr, y);
    const std::size_t v0 = lab.idx(x, yu), v1 = lab.idx(x, yd);
    const double hl = lab.l[h1] - lab.l[h0], ha = lab.a[h1] - lab.a[h0],
                 hb = lab.b[h1] - lab.b[h0];
    const double vl = lab.l[v1] - lab.l[v0], va = lab.a[v1] - lab.a[v0],
                 vb = lab.b[v1] - lab.b[v0];
    g += hl * hl + ha * ha + hb * hb;
    g += vl * vl + va * va + vb * vb;
    return g;
}

std::vector<Center> seed_grid(const LabImage& lab, double s) {
    const int w = lab.width, h = lab.height;
    const int nx = std::max(1, static_cast<int>(std::lround(w / s)));
    const int ny = std::max(1, static_cast<int>(std::lround(h / s)));
    std::vector<Center> centers;
    centers.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int sx = std::min(static_cast<int>((i + 0.5) * w / nx), w - 1);
            int sy = std::min(static_cast<int>((j + 0.5) * h / ny), h - 1);
            if (s >= 2.0) {
                // Move to the lowest-gradient spot in the 3x3 neighborhood.
                double best = std::numeric_limits<double>::infinity();
                int bx = sx, by = sy;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int px = std::clamp(sx + dx, 0, w - 1);
                        const int py = std::clamp(sy + dy, 0, h - 1);
                        const double g = gradient2(lab, px, py);
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
            const std::size_t i0 = lab.idx(sx, sy);
            centers.push_back({lab.l[i0], lab.a[i0], lab.b[i0], static_cast<double>(sx),
                               static_cast<double>(sy)});
        }
    }
    return centers;
}

// Spatial hash of centers with cell size S; pixels only test candidates in
// cells overlapping their (2S)^2 search window.
struct CenterBins {
    int gx = 0, gy = 0;
    double s = 1.0;
    std::vector<std::vector<int>> cells;

    void build(const std::vector<Center>& centers, int w, int h, double interval) {
        s = interval;
        gx = static_cast<int>(std::floor((w - 1) / s)) + 1;
        gy = static_cast<int>(std::floor((h - 1) / s)) + 1;
        cells.assign(static_cast<std::size_t>(gx) * gy, {});
        for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
            const int cx = std::clamp(static_cast<int>(std::floor(centers[c].x / s)), 0, gx - 1);
            const int cy = std::clamp(static_cast<int>(std::floor(centers[c].y / s)), 0, gy - 1);
            cells[static_cast<std::size_t>(cy) * gx + cx].push_back(c);
        }
    }
};

int nearest_center(const std::vector<Center>& centers, int x, int y) {
    double best = std::numeric_limits<double>::infinity();
    int id = 0;
    for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
        const double dx = x - centers[c].x;
        const double dy = y - centers[c].y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) {
            best = d2;
            id = c;
        }
    }
    return id;
}

// Splits every label into 4-connected components, keeps the largest component
// per label, and folds the rest into their largest already-resolved neighbor.
SuperpixelLabeling enforce_connectivity(std::vector<int>& raw, int w, int h) {
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<int> comp(n, -1);
    std::vector<int> comp_label;
    std::vector<std::vector<int>> comp_pixels;

    std::vector<int> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const int id = static_cast<int>(comp_label.size());
        const int label = raw[start];
        comp_label.push_back(label);
        comp_pixels.emplace_back();
        stack.push_back(static_cast<int>(start));
        comp[start] = id;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            comp_pixels[id].push_back(p);
            const int px = p % w, py = p / w;
            const int nb[4] = {px > 0 ? p - 1 : -1, px < w - 1 ? p + 1 : -1,
                               py > 0 ? p - w : -1, py < h - 1 ? p + w : -1};
            for (int q : nb) {
                if (q >= 0 && comp[q] < 0 && raw[q] == label) {
                    comp[q] = id;
                    stack.push_back(q);
                }
            }
        }
    }

    const int comp_count = static_cast<int>(comp_label.size());
    const int max_label = *std::max_element(raw.begin(), raw.end());

    // Largest component (ties: lowest id) survives per label.
    std::vector<int> keeper(static_cast<std::size_t>(max_label) + 1, -1);
    for (int c = 0; c < comp_count; ++c) {
        int& best = keeper[comp_label[c]];
        if (best < 0 || comp_pixels[c].size() > comp_pixels[best].size()) best = c;
    }

    SuperpixelLabeling out;
    out.width = w;
    out.height = h;
    out.labels.assign(n, -1);

    std::vector<int> final_id(comp_count, -1);
    std::vector<std::size_t> region_size;
    std::deque<int> orphans;
    for (int c = 0; c < comp_count; ++c) {
        if (keeper[comp_label[c]] == c) {
            final_id[c] = out.count++;
            region_size.push_back(comp_pixels[c].size());
            for (int p : comp_pixels[c]) out.labels[p] = final_id[c];
        } else {
            orphans.push_back(c);
        }
    }

    std::size_t stalled = 0;
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
            // Surrounded by unresolved fragments; retry after they resolve.
            orphans.push_back(c);
            if (++stalled > orphans.size()) {
                target = 0;
                orphans.pop_back();
            } else {
                continue;
            }
        }
        stalled = 0;
        for (int p : comp_pixels[c]) out.labels[p] = target;
        region_size[target] += comp_pixels[c].size();
    }
    return out;
}

} // namespace

SuperpixelLabeling segment(const RasterU8& img, int k) {
    const int w = img.width, h = img.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw Error(ErrorCode::InvalidK, "superpixel count out of range");

    const LabImage lab = to_lab(img);
    const double s = std::sqrt(static_cast<double>(n) / k);
    const double s2 = s * s;

    std::vector<Center> centers = seed_grid(lab, s);
    const int numk = static_cast<int>(centers.size());

    std::vector<int> labels(n, -1);
    std::vector<double> best_dc2(n, 0.0);
    std::vector<double> m2(numk, 100.0); // max observed color distance^2, seeded at 10^2
    CenterBins bins;

    for (int iter = 0; iter < 10; ++iter) {
        bins.build(centers, w, h, s);

#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            const int cy0 = std::clamp(static_cast<int>(std::floor((y - s) / bins.s)), 0,
                                       bins.gy - 1);
            const int cy1 = std::clamp(static_cast<int>(std::floor((y + s) / bins.s)), 0,
                                       bins.gy - 1);
            for (int x = 0; x < w; ++x) {
                const int cx0 = std::clamp(static_cast<int>(std::floor((x - s) / bins.s)), 0,
                                           bins.gx - 1);
                const int cx1 = std::clamp(static_cast<int>(std::floor((x + s) / bins.s)), 0,
                                           bins.gx - 1);
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                double best = std::numeric_limits<double>::infinity();
                int best_c = -1;
                double best_color = 0.0;
                for (int by = cy0; by <= cy1; ++by) {
                    for (int bx = cx0; bx <= cx1; ++bx) {
                        for (int c : bins.cells[static_cast<std::size_t>(by) * bins.gx + bx]) {
                            const double dx = x - centers[c].x;
                            const double dy = y - centers[c].y;
                            if (dx > s || dx < -s || dy > s || dy < -s) continue;
                            const double dc2 = color_d2(lab, i, centers[c]);
                            const double d = dc2 / m2[c] + (dx * dx + dy * dy) / s2;
                            if (d < best || (d == best && c < best_c)) {
                                best = d;
                                best_c = c;
                                best_color = dc2;
                            }
                        }
                    }
                }
                labels[i] = best_c;
                best_dc2[i] = best_color;
            }
        }

        // Window misses are rare (extreme aspect ratios); snap to the nearest
        // center so every pixel is labeled before the update pass.
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] >= 0) continue;
            const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
            const int c = nearest_center(centers, x, y);
            labels[i] = c;
            best_dc2[i] = color_d2(lab, i, centers[c]);
        }

        std::vector<double> observed(numk, -1.0);
        for (std::size_t i = 0; i < n; ++i)
            observed[labels[i]] = std::max(observed[labels[i]], best_dc2[i]);
        for (int c = 0; c < numk; ++c)
            if (observed[c] >= 0.0) m2[c] = std::max(observed[c], 1e-12);

        std::vector<double> sum_l(numk, 0.0), sum_a(numk, 0.0), sum_b(numk, 0.0),
            sum_x(numk, 0.0), sum_y(numk, 0.0);
        std::vector<std::size_t> size(numk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const int c = labels[i];
            sum_l[c] += lab.l[i];
            sum_a[c] += lab.a[i];
            sum_b[c] += lab.b[i];
            sum_x[c] += static_cast<double>(i % w);
            sum_y[c] += static_cast<double>(i / w);
            ++size[c];
        }
        for (int c = 0; c < numk; ++c) {
            if (size[c] == 0) continue;
            const double inv = 1.0 / static_cast<double>(size[c]);
            centers[c] = {sum_l[c] * inv, sum_a[c] * inv, sum_b[c] * inv, sum_x[c] * inv,
                          sum_y[c] * inv};
        }
    }

    return enforce_connectivity(labels, w, h);
}

std::vector<int> superpixel_sizes(const SuperpixelLabeling& lab) {
    std::vector<int> sizes(lab.count, 0);
    for (int l : lab.labels) ++sizes[l];
    return sizes;
}

RasterU8 boundary_overlay(const RasterU8& img, const SuperpixelLabeling& lab) {
    RasterU8 out = img;
    for (int y = 0; y < lab.height; ++y) {
        for (int x = 0; x < lab.width; ++x) {
            const int l = lab.at(x, y);
            const bool edge = (x > 0 && lab.at(x - 1, y) != l) ||
                              (x < lab.width - 1 && lab.at(x + 1, y) != l) ||
                              (y > 0 && lab.at(x, y - 1) != l) ||
                              (y < lab.height - 1 && lab.at(x, y + 1) != l);
            if (!edge) continue;
            const std::size_t i = (static_cast<std::size_t>(y) * lab.width + x) * out.channels;
            out.data[i] = 255;
            if (out.channels >= 3) {
                out.data[i + 1] = 0;
                out.data[i + 2] = 0;
            }
        }
    }
    return out;
}

} // namespace saltex
