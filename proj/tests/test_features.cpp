#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "saltex/features.hpp"
#include "saltex/reference.hpp"
#include "synth.hpp"

using namespace saltex;

namespace {

SuperpixelLabeling split_halves(int w, int h) {
    SuperpixelLabeling lab;
    lab.width = w;
    lab.height = h;
    lab.count = 2;
    lab.labels.resize(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) lab.labels[y * w + x] = x < w / 2 ? 0 : 1;
    return lab;
}

} // namespace

TEST_CASE("a flat image concentrates every histogram in one bin") {
    const ColorImage img = convert(synth::constant_image(12, 12, 100, 100, 100), ColorSpace::Rgb);
    const SuperpixelLabeling lab = segment(synth::constant_image(12, 12, 100, 100, 100), 1);
    const FeatureField field = build_feature_field(img, lab, NeighborhoodSpec{}, 75);
    REQUIRE(field.count == 1);
    REQUIRE(field.bins == 75);
    CHECK(field.dim() == 675);
    // Code 121 lands in bin 121*75/243 = 37 for every pair.
    const auto vec = field.vector_of(0);
    for (int p = 0; p < 9; ++p)
        for (int b = 0; b < 75; ++b) {
            const double v = vec[p * 75 + b];
            if (b == 37)
                CHECK(v == 1.0);
            else
                CHECK(v == 0.0);
        }
}

TEST_CASE("requantization maps code extremes onto bin extremes") {
    CodeMap codes;
    codes.width = 2;
    codes.height = 2;
    codes.code_base = 3;
    codes.code_count = 243;
    codes.codes = {0, 242, 0, 242};
    SuperpixelLabeling lab;
    lab.width = 2;
    lab.height = 2;
    lab.count = 1;
    lab.labels = {0, 0, 0, 0};
    const std::vector<double> hist = pair_histogram(codes, lab, 0, 75);
    REQUIRE(hist.size() == 75);
    CHECK(hist[0] == 0.5);
    CHECK(hist[74] == 0.5);
    double sum = 0;
    for (double v : hist) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("an unpopulated label is an error") {
    CodeMap codes;
    codes.width = 2;
    codes.height = 1;
    codes.code_base = 3;
    codes.code_count = 243;
    codes.codes = {5, 6};
    SuperpixelLabeling lab;
    lab.width = 2;
    lab.height = 1;
    lab.count = 2;
    lab.labels = {0, 0};
    try {
        pair_histogram(codes, lab, 1, 75);
        FAIL("expected EmptyLabel");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyLabel);
    }
}

TEST_CASE("every pair block of every descriptor is a probability vector") {
    const RasterU8 raster = synth::noise_image(24, 24, 11);
    const ColorImage img = convert(raster, ColorSpace::Hsl);
    const SuperpixelLabeling lab = segment(raster, 4);
    const FeatureField field = build_feature_field(img, lab, NeighborhoodSpec{}, 75);
    REQUIRE(field.count == lab.count);
    for (int s = 0; s < field.count; ++s) {
        const auto vec = field.vector_of(s);
        for (int p = 0; p < 9; ++p) {
            double sum = 0;
            for (int b = 0; b < 75; ++b) {
                CHECK(vec[p * 75 + b] >= 0.0);
                sum += vec[p * 75 + b];
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("equal channels make all nine pair blocks identical") {
    RasterU8 raster = synth::noise_image(16, 16, 3);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            raster.at(x, y, 1) = raster.at(x, y, 0);
            raster.at(x, y, 2) = raster.at(x, y, 0);
        }
    const ColorImage img = convert(raster, ColorSpace::Rgb);
    const FeatureField field = build_feature_field(img, split_halves(16, 16), NeighborhoodSpec{}, 75);
    for (int s = 0; s < 2; ++s) {
        const auto vec = field.vector_of(s);
        for (int p = 1; p < 9; ++p)
            for (int b = 0; b < 75; ++b) CHECK(vec[p * 75 + b] == vec[b]);
    }
}

TEST_CASE("optimized features agree with the serial reference") {
    const RasterU8 raster = synth::noise_image(16, 16, 21);
    for (ColorSpace space : {ColorSpace::Rgb, ColorSpace::Luv}) {
        const ColorImage img = convert(raster, space);
        const SuperpixelLabeling lab = split_halves(16, 16);
        const FeatureField fast = build_feature_field(img, lab, NeighborhoodSpec{}, 75);
        const FeatureField slow = ref::build_feature_field(img, lab, NeighborhoodSpec{}, 75);
        REQUIRE(fast.count == slow.count);
        REQUIRE(fast.vectors.size() == slow.vectors.size());
        for (std::size_t i = 0; i < fast.vectors.size(); ++i)
            CHECK(fast.vectors[i] == slow.vectors[i]);
    }
}

TEST_CASE("descriptors follow a relabeling of the superpixels") {
    const RasterU8 raster = synth::noise_image(20, 12, 8);
    const ColorImage img = convert(raster, ColorSpace::Cmy);
    SuperpixelLabeling lab = split_halves(20, 12);
    const FeatureField base = build_feature_field(img, lab, NeighborhoodSpec{}, 30);
    for (int& l : lab.labels) l = 1 - l;
    const FeatureField swapped = build_feature_field(img, lab, NeighborhoodSpec{}, 30);
    CHECK(std::vector(base.vector_of(0).begin(), base.vector_of(0).end()) ==
          std::vector(swapped.vector_of(1).begin(), swapped.vector_of(1).end()));
    CHECK(std::vector(base.vector_of(1).begin(), base.vector_of(1).end()) ==
          std::vector(swapped.vector_of(0).begin(), swapped.vector_of(0).end()));
}

TEST_CASE("feature CSV lists one row per superpixel") {
    FeatureField field;
    field.count = 2;
    field.pairs = 1;
    field.bins = 3;
    field.vectors = {0.25, 0.5, 0.25, 1.0, 0.0, 0.0};
    synth::TempDir dir;
    const auto path = dir.path / "features.csv";
    write_feature_csv(field, path);
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rfind("0,", 0) == 0);
    CHECK(lines[1].rfind("1,", 0) == 0);
    CHECK(lines[0].find("0.25") != std::string::npos);
}
