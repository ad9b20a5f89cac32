#pragma once

/**
 * Cutoff-limit extrapolation: least-squares fit of value ~ L + a/q^2.
 *
 * Points closer to the limit carry larger weights (w = q^4, normalized),
 * since the neglected model error shrinks like 1/q^4 and would otherwise
 * leak into the recovered limit. The rms residual of the fit is reported so
 * a wrong model is visible to the caller.
 */

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "mdx/errors.hpp"

namespace mdx {

struct LimitFit {
    double limit = 0.0;        // L
    double coefficient = 0.0;  // a in L + a/q^2
    double rms_residual = 0.0;
};

inline LimitFit extrapolate_limit(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 3) throw InsufficientData("extrapolate_limit: need at least 3 (q, value) pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(pairs[i].first > 0.0)) throw DomainError("extrapolate_limit: q must be positive");
        if (i > 0 && !(pairs[i].first > pairs[i - 1].first))
            throw DomainError("extrapolate_limit: q must be strictly increasing");
    }

    const double q_max = pairs.back().first;
    double sw = 0.0, su = 0.0, suu = 0.0, sv = 0.0, suv = 0.0;
    for (const auto& [q, v] : pairs) {
        const double u = 1.0 / (q * q);
        const double r = q / q_max;
        const double w = (r * r) * (r * r);
        sw += w;
        su += w * u;
        suu += w * u * u;
        sv += w * v;
        suv += w * u * v;
    }
    const double det = sw * suu - su * su;
    if (det == 0.0) throw InsufficientData("extrapolate_limit: degenerate design (q values too close)");
    LimitFit fit;
    fit.limit = (suu * sv - su * suv) / det;
    fit.coefficient = (sw * suv - su * sv) / det;

    double ss = 0.0;
    for (const auto& [q, v] : pairs) {
        const double r = v - (fit.limit + fit.coefficient / (q * q));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(pairs.size()));
    return fit;
}

inline LimitFit extrapolate_limit(const std::vector<std::pair<double, double>>& pairs) {
    return extrapolate_limit(std::span<const std::pair<double, double>>(pairs));
}

}  // namespace mdx
