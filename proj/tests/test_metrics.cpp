#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "depsim/metrics.hpp"
#include "depsim/noise.hpp"

using namespace depsim;

TEST_CASE("single sample occupies exactly one cell") {
    CoverageGrid grid(30, {0.0, 1.0}, {0.0, 1.0});
    CHECK(grid.coverage() == 0.0);
    grid.add(0.5, 0.5);
    CHECK(grid.coverage() == doctest::Approx(1.0 / 900.0));
    grid.add(0.5, 0.5);  // same cell, no change
    CHECK(grid.coverage() == doctest::Approx(1.0 / 900.0));
}

TEST_CASE("visiting every cell center gives full coverage") {
    const int n = 12;
    CoverageGrid grid(n, {-1.0, 1.0}, {-1.0, 1.0});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid.add(-1.0 + (i + 0.5) * 2.0 / n, -1.0 + (j + 0.5) * 2.0 / n);
    CHECK(grid.coverage() == 1.0);
}

TEST_CASE("out-of-bounds samples are counted but never occupy") {
    CoverageGrid grid(10, {0.0, 1.0}, {0.0, 1.0});
    grid.add(2.0, 0.5);
    grid.add(0.5, -0.1);
    CHECK(grid.coverage() == 0.0);
    CHECK(grid.out_of_bounds() == 2);
    CHECK(grid.samples_seen() == 2);
}

TEST_CASE("bin edges fall into the lower-index cell and the max edge is in range") {
    CoverageGrid grid(2, {0.0, 1.0}, {0.0, 1.0});
    grid.add(0.5, 0.5);  // interior edge: single cell, not two
    CHECK(grid.coverage() == doctest::Approx(0.25));
    grid.add(1.0, 1.0);  // top corner is inside
    CHECK(grid.out_of_bounds() == 0);
}

TEST_CASE("uniform random occupancy matches the collision formula") {
    // Expected occupied fraction after k uniform samples: 1 - (1 - 1/N^2)^k.
    const int n = 30;
    const int k = 10000;
    CoverageGrid grid(n, {0.0, 1.0}, {0.0, 1.0});
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < k; ++t) grid.add(u(rng), u(rng));
    const double expected = 1.0 - std::pow(1.0 - 1.0 / (n * n), k);
    CHECK(grid.coverage() == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("merge is an elementwise OR and order does not matter") {
    CoverageGrid a(10, {0.0, 1.0}, {0.0, 1.0});
    CoverageGrid b(10, {0.0, 1.0}, {0.0, 1.0});
    a.add(0.05, 0.05);
    b.add(0.95, 0.95);
    b.add(0.05, 0.05);  // overlap

    CoverageGrid ab = a;
    ab.merge(b);
    CoverageGrid ba = b;
    ba.merge(a);
    CHECK(ab.coverage() == doctest::Approx(2.0 / 100.0));
    CHECK(ab.coverage() == ba.coverage());
}

TEST_CASE("merge rejects mismatched grids") {
    CoverageGrid a(10, {0.0, 1.0}, {0.0, 1.0});
    CoverageGrid b(20, {0.0, 1.0}, {0.0, 1.0});
    CHECK_THROWS_AS(a.merge(b), std::invalid_argument);
}

TEST_CASE("correlation of a channel with its copy is 1, with its negation -1") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int T = 2000;
    Eigen::MatrixXd traj(T, 3);
    for (int t = 0; t < T; ++t) {
        const double x = normal(rng);
        traj(t, 0) = x;
        traj(t, 1) = x;
        traj(t, 2) = -x;
    }
    const auto res = action_correlation(traj);
    CHECK(res.matrix(0, 0) == doctest::Approx(1.0));
    CHECK(res.matrix(0, 1) == doctest::Approx(1.0));
    CHECK(res.matrix(0, 2) == doctest::Approx(-1.0));
    CHECK(res.matrix(1, 2) == doctest::Approx(-1.0));
    CHECK(res.zero_variance.empty());
    // symmetry
    CHECK(res.matrix(2, 0) == res.matrix(0, 2));
}

TEST_CASE("independent white channels have off-diagonals within the sampling bound") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int T = 100000;
    Eigen::MatrixXd traj(T, 4);
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < 4; ++j) traj(t, j) = normal(rng);
    const auto res = action_correlation(traj);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(res.matrix(i, j)) < 4.0 / std::sqrt(double(T)));
}

TEST_CASE("correlation is invariant to affine channel rescaling") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int T = 5000;
    Eigen::MatrixXd traj(T, 2);
    for (int t = 0; t < T; ++t) {
        traj(t, 0) = normal(rng);
        traj(t, 1) = 0.4 * traj(t, 0) + normal(rng);
    }
    Eigen::MatrixXd scaled = traj;
    scaled.col(0) = 13.0 * scaled.col(0).array() - 2.0;
    scaled.col(1) = 0.01 * scaled.col(1).array() + 5.0;
    const auto a = action_correlation(traj);
    const auto b = action_correlation(scaled);
    CHECK(a.matrix(0, 1) == doctest::Approx(b.matrix(0, 1)).epsilon(1e-9));
}

TEST_CASE("constant channels are flagged and zeroed") {
    Eigen::MatrixXd traj(100, 2);
    for (int t = 0; t < 100; ++t) {
        traj(t, 0) = 3.0;
        traj(t, 1) = std::sin(0.1 * t);
    }
    const auto res = action_correlation(traj);
    REQUIRE(res.zero_variance.size() == 1);
    CHECK(res.zero_variance[0] == 0);
    CHECK(res.matrix(0, 1) == 0.0);
    CHECK(res.matrix(1, 0) == 0.0);
}

TEST_CASE("psd slope recovers the synthesis exponent") {
    std::mt19937_64 rng(11);
    for (const double beta : {0.0, 1.0, 2.0}) {
        const auto seq = ColoredNoise::synthesize(beta, 65536, rng);
        CHECK(psd_slope(seq) == doctest::Approx(beta).epsilon(0.15).scale(1.0));
    }
}

TEST_CASE("psd slope rejects degenerate input") {
    CHECK_THROWS_AS(psd_slope(std::vector<double>(1000, 0.7)), std::invalid_argument);
    CHECK_THROWS_AS(psd_slope(std::vector<double>(10, 0.0)), std::invalid_argument);
}

TEST_CASE("entropy of a point mass is zero, of a uniform raster is log(bins)") {
    std::vector<std::array<double, 2>> point(500, {0.3, 0.3});
    CHECK(occupancy_entropy(point, 10, {0.0, 1.0}, {0.0, 1.0}) == doctest::Approx(0.0));

    const int n = 20;
    std::vector<std::array<double, 2>> raster;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            raster.push_back({(i + 0.5) / n, (j + 0.5) / n});
    CHECK(occupancy_entropy(raster, n, {0.0, 1.0}, {0.0, 1.0}) ==
          doctest::Approx(std::log(double(n) * n)));
}

TEST_CASE("entropy is bounded by log of the occupied support") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 0.5);  // quarter of the box
    std::vector<std::array<double, 2>> samples;
    for (int t = 0; t < 20000; ++t) samples.push_back({u(rng), u(rng)});
    const double h = occupancy_entropy(samples, 10, {0.0, 1.0}, {0.0, 1.0});
    CHECK(h > 0.0);
    CHECK(h <= std::log(25.0) + 1e-9);  // at most 5x5 bins reachable
}
