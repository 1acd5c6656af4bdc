#include "saltex/color_space.hpp"

#include <algorithm>
#include <cmath>

namespace saltex {

namespace {

// sRGB to XYZ (D65)
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;
// u'_n = 4*Xn / (Xn + 15*Yn + 3*Zn), v'_n = 9*Yn / (same)
const double kDen65 = kXn + 15.0 * kYn + 3.0 * kZn;
const double kUn = 4.0 * kXn / kDen65;
const double kVn = 9.0 * kYn / kDen65;

constexpr double kLuvEps = 216.0 / 24389.0;
constexpr double kLuvKappa = 24389.0 / 27.0;

// Rescaled-channel extents: L in [0,100], u in [-134,220], v in [-140,122].
constexpr double kUMin = -134.0, kUMax = 220.0;
constexpr double kVMin = -140.0, kVMax = 122.0;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

void rgb_to_hsl(double r, double g, double b, double& h, double& s, double& l) {
    // r,g,b in [0,1]; h in degrees [0,360), s and l in [0,1]
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;
    l = 0.5 * (mx + mn);
    if (delta == 0.0) {
        h = 0.0;
        s = 0.0;
        return;
    }
    s = delta / (1.0 - std::abs(2.0 * l - 1.0));
    if (mx == r)
        h = 60.0 * std::fmod((g - b) / delta + 6.0, 6.0);
    else if (mx == g)
        h = 60.0 * ((b - r) / delta + 2.0);
    else
        h = 60.0 * ((r - g) / delta + 4.0);
}

void rgb_to_luv(double r, double g, double b, double& L, double& u, double& v) {
    const double rl = srgb_to_linear(r);
    const double gl = srgb_to_linear(g);
    const double bl = srgb_to_linear(b);
    const double X = kRgbToXyz[0][0] * rl + kRgbToXyz[0][1] * gl + kRgbToXyz[0][2] * bl;
    const double Y = kRgbToXyz[1][0] * rl + kRgbToXyz[1][1] * gl + kRgbToXyz[1][2] * bl;
    const double Z = kRgbToXyz[2][0] * rl + kRgbToXyz[2][1] * gl + kRgbToXyz[2][2] * bl;

    const double yr = Y / kYn;
    L = yr > kLuvEps ? 116.0 * std::cbrt(yr) - 16.0 : kLuvKappa * yr;
    const double den = X + 15.0 * Y + 3.0 * Z;
    const double up = den > 0.0 ? 4.0 * X / den : 0.0;
    const double vp = den > 0.0 ? 9.0 * Y / den : 0.0;
    u = 13.0 * L * (up - kUn);
    v = 13.0 * L * (vp - kVn);
}

} // namespace

std::optional<ColorSpace> parse_color_space(std::string_view tag) {
    if (tag == "rgb") return ColorSpace::Rgb;
    if (tag == "hsl") return ColorSpace::Hsl;
    if (tag == "luv") return ColorSpace::Luv;
    if (tag == "cmy") return ColorSpace::Cmy;
    return std::nullopt;
}

std::string_view to_string(ColorSpace space) {
    switch (space) {
    case ColorSpace::Rgb: return "rgb";
    case ColorSpace::Hsl: return "hsl";
    case ColorSpace::Luv: return "luv";
    case ColorSpace::Cmy: return "cmy";
    }
    return "rgb";
}

std::vector<ColorSpace> parse_spaces(std::span<const std::string> tags) {
    std::vector<ColorSpace> out;
    for (const std::string& tag : tags) {
        auto s = parse_color_space(tag);
        if (!s)
            throw Error(ErrorCode::UnsupportedSpace, "unknown color space '" + tag + "'");
        out.push_back(*s);
    }
    return out;
}

std::vector<ColorSpace> canonical_spaces(std::span<const ColorSpace> requested) {
    std::vector<ColorSpace> out;
    for (ColorSpace s : kAllColorSpaces)
        if (std::find(requested.begin(), requested.end(), s) != requested.end())
            out.push_back(s);
    return out;
}

ColorImage convert(const RasterU8& img, ColorSpace space) {
    if (img.channels != 3)
        throw Error(ErrorCode::Format, "convert expects a 3-channel raster");

    ColorImage out;
    out.space = space;
    out.width = img.width;
    out.height = img.height;
    const std::size_t n = img.pixel_count();
    out.planes.resize(3 * n);
    float* p0 = out.planes.data();
    float* p1 = out.planes.data() + n;
    float* p2 = out.planes.data() + 2 * n;

#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            const double r8 = img.at(x, y, 0);
            const double g8 = img.at(x, y, 1);
            const double b8 = img.at(x, y, 2);
            switch (space) {
            case ColorSpace::Rgb:
                p0[i] = static_cast<float>(r8);
                p1[i] = static_cast<float>(g8);
                p2[i] = static_cast<float>(b8);
                break;
            case ColorSpace::Cmy:
                p0[i] = static_cast<float>(255.0 - r8);
                p1[i] = static_cast<float>(255.0 - g8);
                p2[i] = static_cast<float>(255.0 - b8);
                break;
            case ColorSpace::Hsl: {
                double h, s, l;
                rgb_to_hsl(r8 / 255.0, g8 / 255.0, b8 / 255.0, h, s, l);
                p0[i] = static_cast<float>(clamp255(h / 360.0 * 255.0));
                p1[i] = static_cast<float>(clamp255(s * 255.0));
                p2[i] = static_cast<float>(clamp255(l * 255.0));
                break;
            }
            case ColorSpace::Luv: {
                double L, u, v;
                rgb_to_luv(r8 / 255.0, g8 / 255.0, b8 / 255.0, L, u, v);
                u = std::clamp(u, kUMin, kUMax);
                v = std::clamp(v, kVMin, kVMax);
                p0[i] = static_cast<float>(clamp255(L / 100.0 * 255.0));
                p1[i] = static_cast<float>(clamp255((u - kUMin) / (kUMax - kUMin) * 255.0));
                p2[i] = static_cast<float>(clamp255((v - kVMin) / (kVMax - kVMin) * 255.0));
                break;
            }
            }
        }
    }
    return out;
}

std::array<ChannelPair, 9> enumerate_pairs() {
    std::array<ChannelPair, 9> pairs;
    int i = 0;
    for (int c = 0; c < 3; ++c)
        for (int n = 0; n < 3; ++n)
            pairs[i++] = ChannelPair{c, n};
    return pairs;
}

} // namespace saltex
