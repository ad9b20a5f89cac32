#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mdx/maxent.hpp"
#include "test_support.hpp"

using mdx::constraint_values;
using mdx::constraint_values_quadrature;
using mdx::ConstraintTargets;
using mdx::DistributionParams;
using mdx::entropy;
using mdx::entropy_quadrature;
using mdx::MultiplierSolution;
using mdx::solve_multipliers;

namespace {
const double kC2Star = -0.5 * mdx::digamma_fn(1.5);  // <ln|beta|> of the (4, 1) member
}

TEST_CASE("constraint_values: closed forms at the reference member") {
    const DistributionParams d;  // (4, 1, 2/sqrt(pi))
    const auto v = constraint_values(d);
    CHECK(v.norm == Catch::Approx(1.0).margin(1e-12));
    CHECK(v.c1 == Catch::Approx(1.5).margin(1e-12));
    CHECK(v.c2 == Catch::Approx(kC2Star).margin(1e-12));
    // Scaling law c1 = k / gamma
    const auto v2 = constraint_values(DistributionParams::normalized(4.0, 2.0));
    CHECK(v2.c1 == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("constraint_values: quadrature oracle confirms the closed forms") {
    for (auto [nu, gamma] : {std::pair{4.0, 1.0}, std::pair{4.0, 2.0}, std::pair{6.5, 0.7}}) {
        const DistributionParams d = DistributionParams::normalized(nu, gamma);
        const auto cf = constraint_values(d);
        const auto qd = constraint_values_quadrature(d);
        CHECK(qd.norm == Catch::Approx(cf.norm).margin(1e-9));
        CHECK(qd.c1 == Catch::Approx(cf.c1).margin(1e-8));
        CHECK(qd.c2 == Catch::Approx(cf.c2).margin(1e-8));
    }
}

TEST_CASE("solve_multipliers: recovers the reference member") {
    const MultiplierSolution s = solve_multipliers({1.5, -0.0182450});
    CHECK(s.nu == Catch::Approx(4.0).margin(1e-6));
    CHECK(s.gamma == Catch::Approx(1.0).margin(1e-6));
    CHECK(s.c3 == Catch::Approx(2.0 / std::sqrt(M_PI)).margin(1e-6));
    CHECK(std::abs(s.residuals[0]) < 1e-9);
    CHECK(std::abs(s.residuals[1]) < 1e-9);
}

TEST_CASE("solve_multipliers: scale map fixtures") {
    // beta -> a beta sends (gamma, c1, c2) -> (a^2 gamma, c1/a^2, c2 + ln a).
    // a = sqrt(2): targets (0.75, c2* + ln sqrt(2)) must invert to gamma = 2.
    const MultiplierSolution up = solve_multipliers({0.75, kC2Star + 0.5 * std::log(2.0)});
    CHECK(up.nu == Catch::Approx(4.0).margin(1e-9));
    CHECK(up.gamma == Catch::Approx(2.0).margin(1e-9));
    // a = 1/sqrt(2): targets (3.0, c2* - ln sqrt(2)) must invert to gamma = 0.5.
    const MultiplierSolution dn = solve_multipliers({3.0, kC2Star - 0.5 * std::log(2.0)});
    CHECK(dn.nu == Catch::Approx(4.0).margin(1e-9));
    CHECK(dn.gamma == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("solve_multipliers: infeasible targets") {
    CHECK_THROWS_AS(solve_multipliers({1.0, -2.0}), mdx::Infeasible);
    CHECK_THROWS_AS(solve_multipliers({1.0, 0.0}), mdx::Infeasible);  // boundary is out
}

TEST_CASE("solve_multipliers: round trip over random feasible targets") {
    auto rng = mdx_test::make_rng(8);
    std::uniform_real_distribution<double> ks(0.25, 6.0);
    std::uniform_real_distribution<double> gs(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double k = ks(rng);
        const double gamma = std::exp(gs(rng));
        const ConstraintTargets t{k / gamma, -0.5 * (mdx::digamma_fn(k) - std::log(gamma))};
        REQUIRE(t.feasible());
        const MultiplierSolution s = solve_multipliers(t);
        const auto back = constraint_values(s.distribution());
        CHECK(back.c1 == Catch::Approx(t.c1).margin(1e-9));
        CHECK(back.c2 == Catch::Approx(t.c2).margin(1e-9));
    }
}

TEST_CASE("solve_multipliers: feasibility boundary is sharp") {
    auto rng = mdx_test::make_rng(9);
    std::uniform_real_distribution<double> c1s(0.3, 4.0);
    for (double delta : {0.05, 0.01}) {
        for (int i = 0; i < 10; ++i) {
            const double c1 = c1s(rng);
            const ConstraintTargets feasible{c1, 0.5 * (-std::log(c1) + delta)};
            const ConstraintTargets infeasible{c1, 0.5 * (-std::log(c1) - delta)};
            CHECK_NOTHROW(solve_multipliers(feasible));
            CHECK_THROWS_AS(solve_multipliers(infeasible), mdx::Infeasible);
        }
    }
}

TEST_CASE("solve_multipliers: scale covariance of the inversion") {
    auto rng = mdx_test::make_rng(10);
    std::uniform_real_distribution<double> as(0.2, 5.0);
    const ConstraintTargets base{1.5, kC2Star};
    const MultiplierSolution s0 = solve_multipliers(base);
    for (int i = 0; i < 20; ++i) {
        const double a = as(rng);
        const ConstraintTargets scaled{base.c1 / (a * a), base.c2 + std::log(a)};
        const MultiplierSolution s = solve_multipliers(scaled);
        CHECK(s.nu == Catch::Approx(s0.nu).margin(1e-8));
        CHECK(s.gamma == Catch::Approx(s0.gamma * a * a).epsilon(1e-8));
    }
}

TEST_CASE("entropy: closed form against quadrature and scaling law") {
    const DistributionParams d;
    const double s_closed = entropy(d);
    const double s_quad = entropy_quadrature(d);
    CHECK(std::abs(s_closed - s_quad) <= 1e-8);

    // beta -> a beta adds ln a; with a = 2: gamma -> 4, c3 renormalized.
    const DistributionParams scaled = DistributionParams::normalized(4.0, 4.0);
    CHECK(entropy(scaled) == Catch::Approx(s_closed + std::log(2.0)).margin(1e-10));
    CHECK(entropy_quadrature(scaled) == Catch::Approx(s_closed + std::log(2.0)).margin(1e-8));
}
