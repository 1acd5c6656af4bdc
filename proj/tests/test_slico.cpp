#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <queue>
#include <random>

#include "saltex/reference.hpp"
#include "saltex/slico.hpp"
#include "synth.hpp"

using namespace saltex;

namespace {

// Partition + dense ids + 4-connectivity, checked from scratch.
void check_labeling(const SuperpixelLabeling& lab) {
    REQUIRE(lab.count >= 1);
    REQUIRE(lab.labels.size() == static_cast<std::size_t>(lab.width) * lab.height);
    std::vector<int> seen(lab.count, 0);
    for (int l : lab.labels) {
        REQUIRE(l >= 0);
        REQUIRE(l < lab.count);
        seen[l] = 1;
    }
    CHECK(std::count(seen.begin(), seen.end(), 1) == lab.count);

    // One flood fill per label must consume all its pixels.
    std::vector<char> visited(lab.labels.size(), 0);
    std::vector<int> started(lab.count, 0);
    for (std::size_t i = 0; i < lab.labels.size(); ++i) {
        if (visited[i]) continue;
        const int label = lab.labels[i];
        REQUIRE(!started[label]); // a second component of this label is a break
        started[label] = 1;
        std::queue<int> q;
        q.push(static_cast<int>(i));
        visited[i] = 1;
        while (!q.empty()) {
            const int p = q.front();
            q.pop();
            const int x = p % lab.width, y = p / lab.width;
            const int nb[4] = {x > 0 ? p - 1 : -1, x < lab.width - 1 ? p + 1 : -1,
                               y > 0 ? p - lab.width : -1, y < lab.height - 1 ? p + lab.width : -1};
            for (int n : nb)
                if (n >= 0 && !visited[n] && lab.labels[n] == label) {
                    visited[n] = 1;
                    q.push(n);
                }
        }
    }
}

} // namespace

TEST_CASE("k=1 on a square image is a single region") {
    const SuperpixelLabeling lab = segment(synth::noise_image(16, 16, 1), 1);
    check_labeling(lab);
    CHECK(lab.count == 1);
    CHECK(superpixel_sizes(lab) == std::vector<int>{256});
}

TEST_CASE("k=N degenerates to one pixel per label") {
    const SuperpixelLabeling lab = segment(synth::noise_image(6, 6, 2), 36);
    check_labeling(lab);
    CHECK(lab.count == 36);
    for (int s : superpixel_sizes(lab)) CHECK(s == 1);
}

TEST_CASE("k out of range throws InvalidK") {
    const RasterU8 img = synth::noise_image(8, 8, 3);
    for (int k : {0, -1, 65}) {
        try {
            segment(img, k);
            FAIL("expected InvalidK for k=", k);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidK);
        }
    }
}

TEST_CASE("random images give valid partitions with K' near K") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const int w = 64 + static_cast<int>(rng() % 65);
        const int h = 64 + static_cast<int>(rng() % 65);
        const int k = 50;
        const SuperpixelLabeling lab = segment(synth::noise_image(w, h, 500 + trial), k);
        check_labeling(lab);
        CHECK(lab.count >= k / 2);
        CHECK(lab.count <= 2 * k);
        const auto sizes = superpixel_sizes(lab);
        long long total = 0;
        for (int s : sizes) total += s;
        CHECK(total == static_cast<long long>(w) * h);
    }
}

TEST_CASE("no superpixel straddles the two-tone step edge") {
    const RasterU8 img = synth::two_tone(64, 64);
    const SuperpixelLabeling lab = segment(img, 4);
    check_labeling(lab);
    std::vector<int> side(lab.count, -1);
    int straddles = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const int s = x < 32 ? 0 : 1;
            int& stored = side[lab.at(x, y)];
            if (stored == -1)
                stored = s;
            else if (stored != s)
                ++straddles;
        }
    CHECK(straddles == 0);
}

TEST_CASE("segmentation is deterministic and matches the serial reference") {
    for (auto [w, h, k] : {std::tuple{32, 32, 9}, {48, 31, 12}, {64, 64, 4}}) {
        const RasterU8 img = w == 64 ? synth::two_tone(w, h) : synth::noise_image(w, h, w + h);
        const SuperpixelLabeling a = segment(img, k);
        const SuperpixelLabeling b = segment(img, k);
        CHECK(a.labels == b.labels);
        CHECK(a.count == b.count);

        const SuperpixelLabeling r = ref::segment(img, k);
        CHECK(a.count == r.count);
        CHECK(a.labels == r.labels);
    }
}

TEST_CASE("textured-center image still yields a clean partition") {
    const SuperpixelLabeling lab = segment(synth::textured_center(96, 64, 7), 100);
    check_labeling(lab);
    CHECK(lab.count >= 50);
    CHECK(lab.count <= 200);
}

TEST_CASE("superpixel_sizes on a constructed balanced grid") {
    SuperpixelLabeling lab;
    lab.width = 8;
    lab.height = 8;
    lab.count = 4;
    lab.labels.resize(64);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) lab.labels[y * 8 + x] = (y / 4) * 2 + (x / 4);
    CHECK(superpixel_sizes(lab) == std::vector<int>{16, 16, 16, 16});
}

TEST_CASE("boundary overlay paints region borders red") {
    SuperpixelLabeling lab;
    lab.width = 4;
    lab.height = 2;
    lab.count = 2;
    lab.labels = {0, 0, 1, 1, 0, 0, 1, 1};
    const RasterU8 img = synth::constant_image(4, 2, 10, 20, 30);
    const RasterU8 out = boundary_overlay(img, lab);
    for (int y = 0; y < 2; ++y) {
        // columns 1 and 2 sit on the label boundary
        CHECK(out.at(0, y, 0) == 10);
        CHECK(out.at(1, y, 0) == 255);
        CHECK(out.at(1, y, 1) == 0);
        CHECK(out.at(2, y, 0) == 255);
        CHECK(out.at(3, y, 0) == 10);
    }
}
