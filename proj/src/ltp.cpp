#include "saltex/ltp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace saltex {

namespace {

double lerp(double a, double b, double t) { return a + t * (b - a); }

int ternary_digit(double z, double t) {
    if (z >= t) return 2;
    if (std::abs(z) < t) return 1;
    return 0;
}

} // namespace

std::pair<double, double> NeighborhoodSpec::offset(int p) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / neighbors;
    // rows grow downward; -sin keeps the sweep counterclockwise on screen
    return {radius * std::cos(angle), -radius * std::sin(angle)};
}

int lbp_code(double center, std::span<const double> neighbors) {
    int code = 0;
    int weight = 1;
    for (double g : neighbors) {
        if (g - center >= 0.0) code += weight;
        weight *= 2;
    }
    return code;
}

int ltp_code(double center, std::span<const double> neighbors, double threshold) {
    int code = 0;
    int weight = 1;
    for (double g : neighbors) {
        code += ternary_digit(g - center, threshold) * weight;
        weight *= 3;
    }
    return code;
}

double adaptive_threshold(double center) { return center / 10.0; }

double detail::sample_plane(std::span<const float> plane, int width, int height, double x,
                            double y) {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const std::size_t row0 = static_cast<std::size_t>(y0) * width;
    const std::size_t row1 = static_cast<std::size_t>(y1) * width;
    const double top = lerp(plane[row0 + x0], plane[row0 + x1], fx);
    const double bot = lerp(plane[row1 + x0], plane[row1 + x1], fx);
    return lerp(top, bot, fy);
}

CodeMap code_pair(const ColorImage& img, ChannelPair pair, const NeighborhoodSpec& spec) {
    const int w = img.width;
    const int h = img.height;
    const int p_count = spec.neighbors;

    CodeMap out;
    out.width = w;
    out.height = h;
    out.code_base = 3;
    out.code_count = 1;
    for (int p = 0; p < p_count; ++p) out.code_count *= 3;
    out.codes.resize(static_cast<std::size_t>(w) * h);

    // Sample offsets and ternary weights are pixel-independent.
    std::vector<double> dx(p_count), dy(p_count);
    std::vector<int> weight(p_count);
    for (int p = 0; p < p_count; ++p) {
        auto [ox, oy] = spec.offset(p);
        dx[p] = ox;
        dy[p] = oy;
        weight[p] = p == 0 ? 1 : weight[p - 1] * 3;
    }

    const std::span<const float> center_plane = img.plane(pair.center_plane);
    const std::span<const float> neighbor_plane = img.plane(pair.neighbor_plane);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        int* row = out.codes.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const double center = center_plane[static_cast<std::size_t>(y) * w + x];
            const double t = adaptive_threshold(center);
            int code = 0;
            for (int p = 0; p < p_count; ++p) {
                const double g =
                    detail::sample_plane(neighbor_plane, w, h, x + dx[p], y + dy[p]);
                code += ternary_digit(g - center, t) * weight[p];
            }
            row[x] = code;
        }
    }
    return out;
}

} // namespace saltex
