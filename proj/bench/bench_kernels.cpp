// Optimized kernels vs the serial reference on a 320x240 synthetic image.

#include <random>

#include <benchmark/benchmark.h>

#include "saltex/features.hpp"
#include "saltex/metrics.hpp"
#include "saltex/pipeline.hpp"
#include "saltex/reference.hpp"

using namespace saltex;

namespace {

constexpr int kW = 320, kH = 240;

const RasterU8& test_raster() {
    static const RasterU8 img = [] {
        RasterU8 r;
        r.width = kW;
        r.height = kH;
        r.channels = 3;
        r.data.resize(r.pixel_count() * 3);
        std::mt19937 rng(42);
        std::uniform_int_distribution<int> dist(0, 255);
        for (std::uint8_t& v : r.data) v = static_cast<std::uint8_t>(dist(rng));
        return r;
    }();
    return img;
}

const ColorImage& test_image() {
    static const ColorImage img = convert(test_raster(), ColorSpace::Rgb);
    return img;
}

const SuperpixelLabeling& test_labeling() {
    static const SuperpixelLabeling lab = segment(test_raster(), 150);
    return lab;
}

std::pair<SaliencyMap, GroundTruth> test_scores() {
    SaliencyMap map;
    map.width = kW;
    map.height = kH;
    map.values.resize(map.pixel_count());
    GroundTruth gt;
    gt.width = kW;
    gt.height = kH;
    gt.mask.resize(map.values.size());
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        map.values[i] = u(rng);
        gt.mask[i] = rng() % 4 == 0;
    }
    return {std::move(map), std::move(gt)};
}

void BM_CodePair(benchmark::State& state) {
    const ColorImage& img = test_image();
    for (auto _ : state) benchmark::DoNotOptimize(code_pair(img, {0, 1}, NeighborhoodSpec{}));
}
BENCHMARK(BM_CodePair);

void BM_CodePairRef(benchmark::State& state) {
    const ColorImage& img = test_image();
    for (auto _ : state) benchmark::DoNotOptimize(ref::code_pair(img, {0, 1}, NeighborhoodSpec{}));
}
BENCHMARK(BM_CodePairRef);

void BM_Segment(benchmark::State& state) {
    const RasterU8& img = test_raster();
    for (auto _ : state) benchmark::DoNotOptimize(segment(img, 150));
}
BENCHMARK(BM_Segment);

void BM_SegmentRef(benchmark::State& state) {
    const RasterU8& img = test_raster();
    for (auto _ : state) benchmark::DoNotOptimize(ref::segment(img, 150));
}
BENCHMARK(BM_SegmentRef);

void BM_FeatureField(benchmark::State& state) {
    const ColorImage& img = test_image();
    const SuperpixelLabeling& lab = test_labeling();
    for (auto _ : state)
        benchmark::DoNotOptimize(build_feature_field(img, lab, NeighborhoodSpec{}, 75));
}
BENCHMARK(BM_FeatureField);

void BM_FeatureFieldRef(benchmark::State& state) {
    const ColorImage& img = test_image();
    const SuperpixelLabeling& lab = test_labeling();
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::build_feature_field(img, lab, NeighborhoodSpec{}, 75));
}
BENCHMARK(BM_FeatureFieldRef);

void BM_BestF(benchmark::State& state) {
    const auto [map, gt] = test_scores();
    for (auto _ : state) benchmark::DoNotOptimize(best_fbeta(map, gt));
}
BENCHMARK(BM_BestF);

void BM_BestFRef(benchmark::State& state) {
    const auto [map, gt] = test_scores();
    for (auto _ : state) benchmark::DoNotOptimize(ref::best_fbeta(map, gt));
}
BENCHMARK(BM_BestFRef);

} // namespace

BENCHMARK_MAIN();
