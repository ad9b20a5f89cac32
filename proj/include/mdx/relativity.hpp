#pragma once

/**
 * The square-root Hamiltonian H(p) = sqrt(p^2 c^2 + m^2 c^4) and its Legendre
 * structure: velocity, the closed-form Lagrangian -mc^2 sqrt(1 - v^2/c^2),
 * and the numeric convex conjugate sup_p (v p - H(p)) for round-trip checks.
 */

#include <cmath>
#include <utility>

#include "mdx/errors.hpp"
#include "mdx/model.hpp"
#include "mdx/roots.hpp"

namespace mdx {

struct RelativisticParams {
    double m = 1.0;
    double c = 1.0;

    RelativisticParams() = default;
    RelativisticParams(double mass, double light_speed) : m(mass), c(light_speed) {
        if (!(m > 0.0) || !(c > 0.0)) throw DomainError("RelativisticParams: m > 0 and c > 0 required");
    }
    static RelativisticParams from_model(const ModelParams& mp) { return {mp.m, mp.c()}; }
};

inline double H_rel(double p, const RelativisticParams& rp) {
    return std::sqrt(p * p * rp.c * rp.c + rp.m * rp.m * rp.c * rp.c * rp.c * rp.c);
}

/// dH/dp = p c^2 / H; strictly below c in magnitude.
inline double velocity(double p, const RelativisticParams& rp) {
    return p * rp.c * rp.c / H_rel(p, rp);
}

inline double L_rel(double v, const RelativisticParams& rp) {
    if (!(std::abs(v) < rp.c)) throw DomainError("L_rel: |v| < c required");
    return -rp.m * rp.c * rp.c * std::sqrt(1.0 - v * v / (rp.c * rp.c));
}

/// Convex conjugate sup_p (v p - H_rel(p)) located numerically; returns
/// (value, argmax momentum).
inline std::pair<double, double> legendre_numeric(double v, const RelativisticParams& rp, double tol = 1e-10) {
    if (!(std::abs(v) < rp.c)) throw DomainError("legendre_numeric: |v| < c required");
    // The unique stationary point is p* = m v / sqrt(1 - v^2/c^2); bracket it.
    const double p_star = rp.m * v / std::sqrt(1.0 - v * v / (rp.c * rp.c));
    const double half_width = 2.0 * std::abs(p_star) + 1.0;
    auto objective = [v, &rp](double p) { return v * p - H_rel(p, rp); };
    auto [argmax, value] = maximize_1d(objective, -half_width, half_width, tol);
    return {value, argmax};
}

}  // namespace mdx
