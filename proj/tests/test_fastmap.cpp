#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "saltex/fastmap.hpp"
#include "saltex/types.hpp"

using namespace saltex;

namespace {

SquaredDistance line_metric(std::vector<double> v) {
    return [v = std::move(v)](int i, int j) {
        const double d = v[i] - v[j];
        return d * d;
    };
}

} // namespace

TEST_CASE("pivot selection walks to the extremes of a line") {
    const auto p = choose_pivots(3, line_metric({0.0, 10.0, 3.0}));
    REQUIRE(p.has_value());
    CHECK(p->first == 1);
    CHECK(p->second == 0);
}

TEST_CASE("pivot selection reports degenerate sets") {
    CHECK(!choose_pivots(4, line_metric({5.0, 5.0, 5.0, 5.0})).has_value());
    CHECK(!choose_pivots(1, line_metric({1.0})).has_value());
    CHECK(!choose_pivots(0, line_metric({})).has_value());
}

TEST_CASE("projection places pivots in closed form and interpolates the rest") {
    const auto d2 = line_metric({0.0, 10.0, 3.0});
    const std::vector<double> x = project_axis(3, d2, 0, 1);
    CHECK(x[0] == 0.0);
    CHECK(x[1] == 10.0);
    CHECK(x[2] == doctest::Approx(3.0).epsilon(1e-12));

    const Embedding e = embed(3, d2, 1);
    REQUIRE(e.axes == 1);
    CHECK(e.pivots[0] == std::pair{1, 0});
    CHECK(e.coord(1, 0) == 0.0);
    CHECK(e.coord(0, 0) == 10.0);
    CHECK(e.coord(2, 0) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("two objects embed at 0 and their separation") {
    const Embedding e = embed(2, line_metric({5.0, 9.0}), 1);
    CHECK(e.coord(1, 0) == 0.0);
    CHECK(e.coord(0, 0) == 4.0);
}

TEST_CASE("residual distance removes one axis") {
    CHECK(residual_distance(5.0, 1.5, 1.5) == 5.0);
    CHECK(residual_distance(5.0, 0.0, 5.0) == 0.0);
    CHECK(residual_distance(5.0, 7.0, 4.0) == 4.0);
    // Never produces NaN even when the projected span exceeds the distance.
    CHECK(residual_distance(1.0, 0.0, 9.0) == 0.0);
}

TEST_CASE("one axis reproduces a line metric up to isometry") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 49);
        std::vector<double> v(n);
        for (double& x : v) x = u(rng);
        const Embedding e = embed(n, line_metric(v), 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                const double want = std::abs(v[i] - v[j]);
                const double got = std::abs(e.coord(i, 0) - e.coord(j, 0));
                CHECK(got == doctest::Approx(want).epsilon(1e-9));
            }
    }
}

TEST_CASE("axes are contractions of a Euclidean metric") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 40, dim = 5;
    std::vector<double> pts(n * dim);
    for (double& x : pts) x = u(rng);
    const Embedding e = embed_vectors(pts, n, dim, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double d2 = 0;
            for (int c = 0; c < dim; ++c) {
                const double d = pts[i * dim + c] - pts[j * dim + c];
                d2 += d * d;
            }
            const double d = std::sqrt(d2);
            CHECK(std::abs(e.coord(i, 0) - e.coord(j, 0)) <= d + 1e-9 * (1.0 + d));
        }
}

TEST_CASE("planar points are recovered exactly by two axes") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const int n = 30;
    std::vector<double> pts(n * 2);
    for (double& x : pts) x = u(rng);
    const Embedding e = embed_vectors(pts, n, 2, 2);
    REQUIRE(e.axes == 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            const double dx = pts[i * 2] - pts[j * 2];
            const double dy = pts[i * 2 + 1] - pts[j * 2 + 1];
            const double want = std::sqrt(dx * dx + dy * dy);
            const double ex = e.coord(i, 0) - e.coord(j, 0);
            const double ey = e.coord(i, 1) - e.coord(j, 1);
            const double got = std::sqrt(ex * ex + ey * ey);
            CHECK(got == doctest::Approx(want).epsilon(1e-6));
        }
}

TEST_CASE("identical objects come out at the origin with sentinel pivots") {
    const Embedding e = embed(4, line_metric({3.0, 3.0, 3.0, 3.0}), 2);
    CHECK(e.axes == 2);
    for (double c : e.coords) CHECK(c == 0.0);
    for (auto [a, b] : e.pivots) {
        CHECK(a == -1);
        CHECK(b == -1);
    }
}

TEST_CASE("a line exhausts itself after one axis") {
    // Integer inputs keep the first-axis projection exact, so the residual
    // metric is exactly zero and the second axis must be flagged degenerate.
    const Embedding e = embed(4, line_metric({0.0, 8.0, 3.0, 5.0}), 2);
    REQUIRE(e.axes == 2);
    CHECK(e.pivots[0] == std::pair{1, 0});
    CHECK(e.pivots[1] == std::pair{-1, -1});
    for (int i = 0; i < 4; ++i) CHECK(e.coord(i, 1) == 0.0);
    CHECK(e.coord(2, 0) == 5.0);
    CHECK(e.coord(3, 0) == 3.0);
}

TEST_CASE("embed_vectors validates its shape") {
    const std::vector<double> data(10, 0.0);
    try {
        embed_vectors(data, 3, 4, 1);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}
