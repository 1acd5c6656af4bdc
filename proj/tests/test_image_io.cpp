#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>

#include "saltex/image_io.hpp"
#include "synth.hpp"

using namespace saltex;

TEST_CASE("rgb png round-trips exactly") {
    synth::TempDir tmp;
    const RasterU8 img = synth::noise_image(20, 15, 42);
    const auto path = tmp.path / "img.png";
    save_raster(img, path);

    const RasterU8 back = load_image(path);
    CHECK(back.width == 20);
    CHECK(back.height == 15);
    CHECK(back.channels == 3);
    CHECK(back.data == img.data);
}

TEST_CASE("grayscale sources are replicated to three channels") {
    synth::TempDir tmp;
    RasterU8 gray;
    gray.width = 8;
    gray.height = 8;
    gray.channels = 1;
    gray.data.resize(64);
    for (int i = 0; i < 64; ++i) gray.data[i] = static_cast<std::uint8_t>(i * 4);
    const auto path = tmp.path / "gray.png";
    save_raster(gray, path);

    const RasterU8 back = load_image(path);
    CHECK(back.channels == 3);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            CHECK(back.at(x, y, 0) == gray.at(x, y, 0));
            CHECK(back.at(x, y, 1) == gray.at(x, y, 0));
            CHECK(back.at(x, y, 2) == gray.at(x, y, 0));
        }
}

TEST_CASE("jpeg decodes") {
    synth::TempDir tmp;
    const auto path = tmp.path / "img.jpg";
    save_raster(synth::noise_image(16, 16, 9), path);
    const RasterU8 back = load_image(path);
    CHECK(back.width == 16);
    CHECK(back.height == 16);
    CHECK(back.channels == 3);
}

TEST_CASE("error taxonomy") {
    synth::TempDir tmp;

    try {
        load_image(tmp.path / "absent.png");
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }

    const auto junk = tmp.path / "junk.png";
    std::ofstream(junk) << "this is not a png";
    try {
        load_image(junk);
        FAIL("expected Format");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Format);
    }

    const auto tiny = tmp.path / "tiny.png";
    save_raster(synth::constant_image(2, 2, 1, 2, 3), tiny);
    try {
        load_image(tiny);
        FAIL("expected TooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooSmall);
    }
}

TEST_CASE("ground truth binarizes at 128 and is idempotent") {
    synth::TempDir tmp;
    RasterU8 mask;
    mask.width = 4;
    mask.height = 3;
    mask.channels = 1;
    mask.data = {0, 1, 127, 128, 129, 200, 255, 128, 127, 5, 250, 64};
    const auto path = tmp.path / "mask.png";
    save_raster(mask, path);

    const GroundTruth gt = load_ground_truth(path);
    for (std::size_t i = 0; i < mask.data.size(); ++i)
        CHECK(gt.mask[i] == (mask.data[i] >= 128 ? 1 : 0));
    CHECK(gt.positives() == 6);

    // Re-binarizing the binarized mask changes nothing.
    RasterU8 rebin = mask;
    for (std::size_t i = 0; i < rebin.data.size(); ++i) rebin.data[i] = gt.mask[i] ? 255 : 0;
    const auto path2 = tmp.path / "mask2.png";
    save_raster(rebin, path2);
    CHECK(load_ground_truth(path2).mask == gt.mask);
}

TEST_CASE("ground truth accepts color masks via the first channel") {
    synth::TempDir tmp;
    const auto path = tmp.path / "mask.png";
    save_raster(synth::constant_image(4, 4, 200, 0, 0), path);
    const GroundTruth gt = load_ground_truth(path);
    CHECK(gt.positives() == 16);
}

TEST_CASE("saliency save uses round-half-up and reloads exactly") {
    synth::TempDir tmp;
    SaliencyMap map;
    map.width = 5;
    map.height = 1;
    map.values = {0.0, 0.5, 1.0, 0.25, 0.6789};
    const auto path = tmp.path / "map.png";
    save_saliency(map, path);

    const SaliencyMap back = load_saliency(path);
    CHECK(back.width == 5);
    CHECK(back.height == 1);
    const int expected[] = {0, 128, 255, 64, 173};
    for (int x = 0; x < 5; ++x) {
        CHECK(std::lround(back.values[x] * 255.0) == expected[x]);
        CHECK(back.values[x] == expected[x] / 255.0);
    }
}

TEST_CASE("saving twice produces identical bytes") {
    synth::TempDir tmp;
    SaliencyMap map;
    map.width = 16;
    map.height = 16;
    map.values.resize(256);
    for (int i = 0; i < 256; ++i) map.values[i] = i / 255.0;
    save_saliency(map, tmp.path / "a.png");
    save_saliency(map, tmp.path / "b.png");

    std::ifstream a(tmp.path / "a.png", std::ios::binary);
    std::ifstream b(tmp.path / "b.png", std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
    CHECK(!bytes_a.empty());
}
