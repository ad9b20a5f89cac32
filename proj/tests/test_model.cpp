#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "mdx/model.hpp"
#include "test_support.hpp"

using mdx::DistributionParams;
using mdx::h_beta;
using mdx::ModelParams;
using mdx::Momentum;
using mdx::rho;
using mdx::score;

namespace {
const ModelParams kUnit(1.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("ModelParams: derived light speed") {
    const ModelParams mp(1.0, 1.0 / std::sqrt(2.0));
    CHECK(mp.c() == Catch::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(ModelParams(0.0, 1.0), mdx::DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, -2.0), mdx::DomainError);
}

TEST_CASE("h_beta: reference values and symmetry") {
    CHECK(h_beta(Momentum{0.0}, 1.0, kUnit) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(h_beta(Momentum{1.0}, 1.0, kUnit) == Catch::Approx(std::exp(0.5)).epsilon(1e-15));
    CHECK(h_beta(Momentum{1.0}, -1.0, kUnit) == h_beta(Momentum{1.0}, 1.0, kUnit));

    auto rng = mdx_test::make_rng(6);
    std::uniform_real_distribution<double> ps(-3.0, 3.0);
    std::uniform_real_distribution<double> bs(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double p = ps(rng), b = bs(rng);
        CHECK(h_beta(Momentum{p}, b, kUnit) == h_beta(Momentum{-p}, b, kUnit));
        CHECK(h_beta(Momentum{p}, b, kUnit) == h_beta(Momentum{p}, -b, kUnit));
        CHECK(h_beta(Momentum{p}, b, kUnit) > 0.0);
    }
}

TEST_CASE("h_beta: guards") {
    CHECK_THROWS_AS(h_beta(Momentum{1.0}, 0.0, kUnit), mdx::DomainError);
    CHECK_THROWS_AS(h_beta(Momentum{100.0}, 1e-2, kUnit), mdx::OverflowGuard);
}

TEST_CASE("h_beta: asymptotics in beta") {
    // For fixed p != 0 the value blows up toward beta -> 0: at beta = 1e-3 the
    // exponent leaves double range entirely (that is what the guard reports),
    // and at a momentum small enough to stay representable the value is huge.
    CHECK_THROWS_AS(h_beta(Momentum{1.0}, 1e-3, kUnit), mdx::OverflowGuard);
    CHECK(h_beta(Momentum{0.03}, 1e-3, kUnit) > 1e100);
    // ~ m lambda^2 beta^2 at infinity.
    const double b = 1e3;
    CHECK(h_beta(Momentum{1.0}, b, kUnit) == Catch::Approx(b * b).epsilon(1e-6));
}

TEST_CASE("rho: reference value, symmetry, zero limit") {
    const DistributionParams d;  // (4, 1, 2/sqrt(pi))
    CHECK(rho(1.0, d) == Catch::Approx(2.0 / std::sqrt(M_PI) * std::exp(-1.0)).epsilon(1e-14));
    CHECK(rho(-1.3, d) == rho(1.3, d));
    CHECK(rho(1e-3, d) == Catch::Approx(0.0).margin(1e-300));
    CHECK_THROWS_AS(rho(0.0, d), mdx::DomainError);
}

TEST_CASE("rho: normalization over the real line") {
    const DistributionParams d;
    const double total = 2.0 * mdx::integrate([&d](double b) { return rho(b, d); }, 0.0, kInf);
    CHECK(total == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("DistributionParams: invariants enforced") {
    CHECK_THROWS_AS(DistributionParams(0.5, 1.0, 1.0), mdx::DomainError);
    CHECK_THROWS_AS(DistributionParams(4.0, -1.0, 1.0), mdx::DomainError);
    // c3 inconsistent with normalization
    CHECK_THROWS_AS(DistributionParams(4.0, 1.0, 0.9), mdx::DomainError);
    // normalized() fixes c3 for any admissible exponents
    const DistributionParams d = DistributionParams::normalized(5.0, 2.3);
    CHECK(d.shape_k() == Catch::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("score: reference values") {
    CHECK(score(Momentum{0.0}, 1.0, kUnit) == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(score(Momentum{std::sqrt(2.0)}, 1.0, kUnit) == Catch::Approx(0.0).margin(1e-15));
    CHECK(score(Momentum{1.0}, 2.0, kUnit) == Catch::Approx(0.875).epsilon(1e-15));
    CHECK_THROWS_AS(score(Momentum{1.0}, -1.0, kUnit), mdx::DomainError);
}

TEST_CASE("score: matches centered difference of ln h_beta at O(h^2)") {
    auto rng = mdx_test::make_rng(7);
    std::uniform_real_distribution<double> ps(-2.0, 2.0);
    std::uniform_real_distribution<double> bs(0.5, 3.0);
    for (int i = 0; i < 30; ++i) {
        const double p = ps(rng), b = bs(rng);
        const double a = score(Momentum{p}, b, kUnit);
        auto log_h = [&](double bb) { return std::log(h_beta(Momentum{p}, bb, kUnit)); };
        const double h1 = 1e-3 * b, h2 = 0.5e-3 * b;
        const double d1 = (log_h(b + h1) - log_h(b - h1)) / (2.0 * h1);
        const double d2 = (log_h(b + h2) - log_h(b - h2)) / (2.0 * h2);
        const double e1 = std::abs(d1 - a);
        const double e2 = std::abs(d2 - a);
        CHECK(e2 < 0.3 * e1 + 1e-11);
        CHECK(a == Catch::Approx(d2).margin(1e-5));
    }
}
