#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mdx/geometry.hpp"
#include "mdx/quadrature.hpp"
#include "test_support.hpp"

using mdx::figure2_data;
using mdx::geodesic;
using mdx::geodesic_distance;
using mdx::geodesic_distance_raw;
using mdx::line_element;
using mdx::ManifoldPoint;

TEST_CASE("line_element: fixed values and scale invariance of the ratio") {
    CHECK(line_element(1.0, 0.1) == Catch::Approx(0.01).epsilon(1e-15));
    CHECK(line_element(2.0, 0.2) == Catch::Approx(0.01).epsilon(1e-15));
    CHECK(line_element(0.5, 0.1) == Catch::Approx(0.04).epsilon(1e-15));
    CHECK_THROWS_AS(line_element(0.0, 0.1), mdx::DomainError);
}

TEST_CASE("geodesic: exponential solution") {
    CHECK(geodesic(1.0, 0.0) == 1.0);
    CHECK(geodesic(1.0, 1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(geodesic(3.0, -std::log(3.0)) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("geodesic: finite-difference residual vanishes at O(h^2)") {
    // residual = beta'' - (beta')^2 / beta along beta(mu) = beta0 e^mu
    auto residual = [](double beta0, double mu, double h) {
        const double bm = geodesic(beta0, mu - h);
        const double b0 = geodesic(beta0, mu);
        const double bp = geodesic(beta0, mu + h);
        const double second = (bp - 2.0 * b0 + bm) / (h * h);
        const double first = (bp - bm) / (2.0 * h);
        return second - first * first / b0;
    };
    for (auto [beta0, mu] : {std::pair{1.0, 0.0}, std::pair{2.5, 0.7}, std::pair{0.3, -1.2}}) {
        const double r1 = std::abs(residual(beta0, mu, 1e-3));
        const double r2 = std::abs(residual(beta0, mu, 5e-4));
        CHECK(r2 < 0.3 * r1 + 1e-12);
    }
}

TEST_CASE("geodesic_distance: fixed values") {
    CHECK(geodesic_distance(1.0, std::exp(1.0)) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(geodesic_distance(1.7, 1.7) == 0.0);
    CHECK(geodesic_distance(2.0, 8.0) == Catch::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK_THROWS_AS(geodesic_distance(-1.0, 2.0), mdx::DomainError);
}

TEST_CASE("geodesic_distance: scale invariance and additivity") {
    auto rng = mdx_test::make_rng(15);
    std::uniform_real_distribution<double> betas(0.05, 20.0);
    std::uniform_real_distribution<double> as(0.1, 10.0);
    for (int i = 0; i < 40; ++i) {
        const double b1 = betas(rng), b2 = betas(rng), a = as(rng);
        CHECK(std::abs(geodesic_distance(a * b1, a * b2) - geodesic_distance(b1, b2)) <= 1e-12);
    }
    for (int i = 0; i < 40; ++i) {
        double b1 = betas(rng), b3 = betas(rng);
        if (b1 > b3) std::swap(b1, b3);
        const double b2 = std::sqrt(b1 * b3);  // between them on the geodesic
        const double lhs = geodesic_distance(b1, b2) + geodesic_distance(b2, b3);
        CHECK(std::abs(lhs - geodesic_distance(b1, b3)) <= 1e-12);
    }
}

TEST_CASE("geodesic_distance: consistent with the path integral of sqrt(ds^2)") {
    for (auto [b1, b2] : {std::pair{1.0, 2.0}, std::pair{0.2, 5.0}, std::pair{3.0, 0.7}}) {
        const double lo = std::min(b1, b2), hi = std::max(b1, b2);
        const double len = mdx::integrate([](double b) { return 1.0 / b; }, lo, hi);
        CHECK(len == Catch::Approx(geodesic_distance(b1, b2)).margin(1e-8));
    }
}

TEST_CASE("geodesic_distance_raw: restores the sqrt(C) factor") {
    CHECK(geodesic_distance_raw(1.0, std::exp(1.0), 4.0) == Catch::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(geodesic_distance_raw(1.0, 2.0, 0.0), mdx::DomainError);
}

TEST_CASE("ManifoldPoint: u = ln beta round trip") {
    auto rng = mdx_test::make_rng(16);
    std::uniform_real_distribution<double> betas(1e-3, 1e3);
    for (int i = 0; i < 50; ++i) {
        const double b = betas(rng);
        const ManifoldPoint p = ManifoldPoint::from_beta(b);
        CHECK(ManifoldPoint::from_u(p.u).beta == Catch::Approx(b).epsilon(1e-15));
    }
    CHECK_THROWS_AS(ManifoldPoint::from_beta(0.0), mdx::DomainError);
}

TEST_CASE("figure2_data: monotone table") {
    const auto single = figure2_data({0.0});
    REQUIRE(single.size() == 1);
    CHECK(single[0].second == 1.0);

    const auto three = figure2_data({-1.0, 0.0, 1.0});
    CHECK(three[0].second == Catch::Approx(1.0 / std::exp(1.0)).epsilon(1e-15));
    CHECK(three[2].second == Catch::Approx(std::exp(1.0)).epsilon(1e-15));

    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back(-3.0 + 6.0 * i / 99.0);
    const auto rows = figure2_data(grid);
    REQUIRE(rows.size() == 100);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].second > rows[i - 1].second);
}
