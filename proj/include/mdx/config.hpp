#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mdx/model.hpp"
#include "mdx/quadrature.hpp"

namespace mdx {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Run configuration shared by the CLI commands. Defaults put the model in
/// natural units (m = 1, lambda = 1/sqrt(2) so c = 1) with the reference
/// distribution (nu, gamma, c3) = (4, 1, 2/sqrt(pi)).
struct RunConfig {
    ModelParams model{1.0, 1.0 / std::sqrt(2.0)};
    DistributionParams dist{};
    QuadratureSpec quadrature{};
    std::vector<double> fisher_q_grid{10.0, 14.0, 18.0, 22.0, 26.0};
    std::string output_dir = ".";
};

}  // namespace mdx
