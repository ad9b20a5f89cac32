#pragma once

/**
 * Information geometry of the fluctuation parameter: the scale-invariant
 * line element ds^2 = dbeta^2 / beta^2, its flat logarithmic coordinate
 * u = ln beta, exponential geodesics and geodesic distance.
 *
 * Distances default to the C-normalized metric (the limit constant from the
 * cutoff scan absorbed); the raw-metric variants multiply back by sqrt(C).
 */

#include <cmath>
#include <utility>
#include <vector>

#include "mdx/errors.hpp"

namespace mdx {

struct ManifoldPoint {
    double beta = 1.0;
    double u = 0.0;  // ln beta

    static ManifoldPoint from_beta(double beta) {
        if (!(beta > 0.0)) throw DomainError("ManifoldPoint: beta > 0 required");
        return {beta, std::log(beta)};
    }
    static ManifoldPoint from_u(double u) { return {std::exp(u), u}; }
};

inline double line_element(double beta, double dbeta) {
    if (!(beta > 0.0)) throw DomainError("line_element: beta > 0 required");
    const double r = dbeta / beta;
    return r * r;
}

inline double line_element_raw(double beta, double dbeta, double metric_c) {
    return metric_c * line_element(beta, dbeta);
}

/// Geodesic through beta0: beta(mu) = beta0 exp(mu).
inline double geodesic(double beta0, double mu) {
    if (!(beta0 > 0.0)) throw DomainError("geodesic: beta0 > 0 required");
    return beta0 * std::exp(mu);
}

/// |ln(beta2/beta1)| in the C-normalized metric.
inline double geodesic_distance(double beta1, double beta2) {
    if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw DomainError("geodesic_distance: betas must be positive");
    return std::abs(std::log(beta2 / beta1));
}

inline double geodesic_distance_raw(double beta1, double beta2, double metric_c) {
    if (!(metric_c > 0.0)) throw DomainError("geodesic_distance_raw: metric constant must be positive");
    return std::sqrt(metric_c) * geodesic_distance(beta1, beta2);
}

/// Table of (u, beta = e^u) rows for the figure emitter.
inline std::vector<std::pair<double, double>> figure2_data(const std::vector<double>& u_grid) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(u_grid.size());
    for (double u : u_grid) rows.emplace_back(u, std::exp(u));
    return rows;
}

}  // namespace mdx
