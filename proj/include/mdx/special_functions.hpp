#pragma once

/**
 * Gamma, log-gamma and digamma on the positive real axis.
 *
 * Gamma and log-gamma delegate to the C library implementations, which are
 * correctly rounded to a few ulp on this platform. Digamma has no standard
 * counterpart; it is evaluated by the usual recurrence-plus-asymptotic-series
 * scheme, accurate to well below 1e-13 relative over the domain used here.
 */

#include <cmath>

#include "mdx/errors.hpp"

namespace mdx {

inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: requires x > 0");
    return std::tgamma(x);
}

inline double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma_fn: requires x > 0");
    return std::lgamma(x);
}

inline double digamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("digamma_fn: requires x > 0");
    // Shift into the asymptotic regime: psi(x) = psi(x+1) - 1/x.
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series with Bernoulli-number coefficients; at x >= 10 the
    // truncation error is below 1e-16.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv2 * (1.0 / 12.0 + inv2 * (-1.0 / 120.0 + inv2 * (1.0 / 252.0 + inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0 + inv2 * (-691.0 / 32760.0 + inv2 * (1.0 / 12.0)))))));
    result += std::log(x) - 0.5 * inv - series;
    return result;
}

}  // namespace mdx
