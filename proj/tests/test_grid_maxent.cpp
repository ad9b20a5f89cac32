#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mdx/maxent.hpp"
#include "test_support.hpp"

using mdx::ConstraintTargets;
using mdx::grid_entropy;
using mdx::grid_maxent;
using mdx::grid_project_to_constraints;
using mdx::GridMaxEntResult;
using mdx::GridSpec;

namespace {
const ConstraintTargets kTargets{1.5, -0.0182450};
}

TEST_CASE("grid_maxent: matches the closed form on the acceptance grid") {
    const GridMaxEntResult r = grid_maxent(kTargets, GridSpec{0.05, 12.0, 4000});
    CHECK(r.sup_error_vs_closed_form <= 1e-3);
    CHECK(r.gamma == Catch::Approx(1.0).margin(1e-2));
    CHECK(r.nu == Catch::Approx(4.0).margin(1e-2));
    REQUIRE(r.grid.size() == 4000);
    REQUIRE(r.density.size() == 4000);
    CHECK(r.full_grid.size() > r.grid.size());

    // Discrete constraints hold on the discretized measure (2 x (0, inf)).
    CHECK(r.norm_discrete == Catch::Approx(1.0).margin(1e-10));
    CHECK(r.c1_discrete == Catch::Approx(kTargets.c1).margin(1e-9));
    CHECK(r.c2_discrete == Catch::Approx(kTargets.c2).margin(1e-9));
}

TEST_CASE("grid_maxent: sup error improves under grid refinement") {
    const double coarse = grid_maxent(kTargets, GridSpec{0.05, 12.0, 500}).sup_error_vs_closed_form;
    const double fine = grid_maxent(kTargets, GridSpec{0.05, 12.0, 4000}).sup_error_vs_closed_form;
    CHECK(fine < coarse);
}

TEST_CASE("grid_maxent: truncation diagnostics and error paths") {
    const GridMaxEntResult r = grid_maxent(kTargets, GridSpec{0.05, 12.0, 1000});
    CHECK(r.truncated_tail_mass < 1e-3);
    CHECK(r.truncated_tail_mass >= 0.0);
    CHECK_THROWS_AS(grid_maxent({1.0, -2.0}, GridSpec{}), mdx::Infeasible);
    CHECK_THROWS_AS(grid_maxent(kTargets, GridSpec{0.05, 12.0, 50}), mdx::DomainError);
    CHECK_THROWS_AS(grid_maxent(kTargets, GridSpec{-0.1, 12.0, 1000}), mdx::DomainError);
}

TEST_CASE("grid_maxent: solution maximizes entropy on the constraint set") {
    const GridSpec gs{0.05, 12.0, 1200};
    const GridMaxEntResult r = grid_maxent(kTargets, gs);
    const double s_star = grid_entropy(gs, r.full_density);
    CHECK(s_star == Catch::Approx(r.entropy).margin(1e-12));

    auto rng = mdx_test::make_rng(11);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> perturbed(r.full_density.size());
        for (std::size_t i = 0; i < perturbed.size(); ++i)
            perturbed[i] = std::max(r.full_density[i], 1e-300) * std::exp(0.05 * noise(rng));
        const auto projected = grid_project_to_constraints(kTargets, gs, perturbed);
        const double s = grid_entropy(gs, projected);
        CHECK(s <= s_star + 1e-10);
    }
}
