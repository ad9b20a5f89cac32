#pragma once

/**
 * The multiplicative Hamiltonian family, the fluctuation distribution family
 * and the score function shared by every downstream computation.
 *
 * Conventions: the distribution exponent beta^(-nu) is read as |beta|^(-nu)
 * so the density is well defined and even on the whole real line, and every
 * integral over (-inf, inf) of an even integrand is evaluated as twice the
 * (0, inf) integral.
 */

#include <cmath>
#include <limits>

#include "mdx/errors.hpp"
#include "mdx/quadrature.hpp"
#include "mdx/special_functions.hpp"

namespace mdx {

struct Momentum {
    double p = 0.0;
};

struct ModelParams {
    double m = 1.0;
    double lambda = 1.0;

    ModelParams() = default;
    ModelParams(double mass, double velocity_scale) : m(mass), lambda(velocity_scale) {
        if (!(m > 0.0) || !(lambda > 0.0)) throw DomainError("ModelParams: m > 0 and lambda > 0 required");
    }

    /// Derived light speed, c^2 = 2 lambda^2.
    double c() const { return std::sqrt(2.0) * lambda; }
    double m_lambda2() const { return m * lambda * lambda; }
};

/// Normalized member of the family rho(beta) = c3 |beta|^(-nu) exp(-gamma/beta^2).
struct DistributionParams {
    double nu = 4.0;
    double gamma = 1.0;
    double c3 = 2.0 / 1.7724538509055160273;  // 2/sqrt(pi)

    DistributionParams() = default;

    DistributionParams(double nu_, double gamma_, double c3_) : nu(nu_), gamma(gamma_), c3(c3_) {
        if (!(nu > 1.0)) throw DomainError("DistributionParams: nu > 1 required for normalizability at infinity");
        if (!(gamma > 0.0)) throw DomainError("DistributionParams: gamma > 0 required for normalizability at zero");
        if (!(c3 > 0.0)) throw DomainError("DistributionParams: c3 > 0 required");
        const double total = 2.0 * integrate([this](double b) { return c3 * std::exp(-gamma / (b * b) - nu * std::log(b)); },
                                             0.0, std::numeric_limits<double>::infinity(), QuadratureSpec{});
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("DistributionParams: density does not integrate to 1");
    }

    /// Builds the normalized member for given exponents: c3 = gamma^k / Gamma(k),
    /// k = (nu - 1)/2.
    static DistributionParams normalized(double nu_, double gamma_) {
        if (!(nu_ > 1.0) || !(gamma_ > 0.0))
            throw DomainError("DistributionParams: nu > 1 and gamma > 0 required");
        const double k = 0.5 * (nu_ - 1.0);
        const double c3_ = std::exp(k * std::log(gamma_) - log_gamma_fn(k));
        return DistributionParams(nu_, gamma_, c3_);
    }

    double shape_k() const { return 0.5 * (nu - 1.0); }
};

/// H_beta(p) = m lambda^2 beta^2 exp(p^2 / (2 m lambda^2 beta^2)).
/// Even in both p and beta. Throws OverflowGuard when the exponent exceeds
/// exp_bound; callers needing products like rho * H combine exponents in the
/// log domain instead.
inline double h_beta(Momentum p, double beta, const ModelParams& params, double exp_bound = 700.0) {
    if (beta == 0.0) throw DomainError("h_beta: beta must be nonzero");
    const double s = params.m_lambda2() * beta * beta;
    const double expo = p.p * p.p / (2.0 * s);
    if (expo > exp_bound)
        throw OverflowGuard("h_beta: exponent exceeds the configured bound; use a scaled evaluation");
    return s * std::exp(expo);
}

/// Fluctuation density rho(beta) = c3 |beta|^(-nu) exp(-gamma/beta^2); even
/// in beta, continuous extension rho(0) = 0 left to the caller.
inline double rho(double beta, const DistributionParams& dist) {
    if (beta == 0.0) throw DomainError("rho: beta must be nonzero (the continuous extension is 0)");
    const double ab = std::abs(beta);
    return dist.c3 * std::exp(-dist.gamma / (beta * beta) - dist.nu * std::log(ab));
}

/// Score A = d/dbeta ln H_beta = 2/beta - p^2 / (m lambda^2 beta^3).
inline double score(Momentum p, double beta, const ModelParams& params) {
    if (!(beta > 0.0)) throw DomainError("score: beta > 0 required");
    return 2.0 / beta - p.p * p.p / (params.m_lambda2() * beta * beta * beta);
}

}  // namespace mdx
