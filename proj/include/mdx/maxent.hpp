#pragma once

/**
 * Maximum-entropy inference for the fluctuation distribution.
 *
 * The constrained problem -- maximize S[rho] subject to normalization,
 * <1/beta^2> = c1 and <ln|beta|> = c2 -- is solved in closed form through the
 * substitution xi = 1/beta^2, under which the family
 * rho = c3 |beta|^(-nu) exp(-gamma/beta^2) pushes forward to a Gamma(k, gamma)
 * law in xi with shape k = (nu-1)/2. Gamma-distribution identities give
 *
 *   <1/beta^2>  = k / gamma
 *   <ln|beta|>  = -(psi(k) - ln gamma) / 2
 *   c3          = gamma^k / Gamma(k)
 *
 * so inverting the targets reduces to one monotone scalar root
 * psi(k) - ln k = -2 c2 - ln c1, feasible iff ln c1 + 2 c2 > 0.
 *
 * grid_maxent is the independent oracle: it maximizes the discretized entropy
 * on a truncated beta grid by Newton iteration on the dual (log-partition)
 * function and reports the sup-norm gap to the closed form.
 */

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mdx/errors.hpp"
#include "mdx/model.hpp"
#include "mdx/quadrature.hpp"
#include "mdx/roots.hpp"
#include "mdx/special_functions.hpp"

namespace mdx {

struct ConstraintTargets {
    double c1 = 1.5;   // target of <1/beta^2>
    double c2 = 0.0;   // target of <ln|beta|>

    bool feasible() const { return std::log(c1) + 2.0 * c2 > 0.0; }
};

struct MultiplierSolution {
    double nu = 0.0;
    double gamma = 0.0;
    double c3 = 0.0;
    double shape_k = 0.0;
    std::array<double, 2> residuals{0.0, 0.0};

    DistributionParams distribution() const { return DistributionParams(nu, gamma, c3); }
};

struct ConstraintValues {
    double norm = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Closed-form normalization and constraint functionals of a family member.
inline ConstraintValues constraint_values(const DistributionParams& dist) {
    const double k = dist.shape_k();
    ConstraintValues v;
    v.norm = dist.c3 * std::exp(log_gamma_fn(k) - k * std::log(dist.gamma));
    v.c1 = k / dist.gamma;
    v.c2 = -0.5 * (digamma_fn(k) - std::log(dist.gamma));
    return v;
}

/// Same functionals by direct quadrature over (-inf, inf), evaluated as
/// 2 x (0, inf); the independent cross-check of the closed forms.
inline ConstraintValues constraint_values_quadrature(const DistributionParams& dist,
                                                     const QuadratureSpec& spec = {}) {
    const double inf = std::numeric_limits<double>::infinity();
    auto density = [&dist](double b) {
        return dist.c3 * std::exp(-dist.gamma / (b * b) - dist.nu * std::log(b));
    };
    ConstraintValues v;
    v.norm = 2.0 * integrate(density, 0.0, inf, spec);
    v.c1 = 2.0 * integrate([&](double b) { return density(b) / (b * b); }, 0.0, inf, spec);
    v.c2 = 2.0 * integrate([&](double b) { return density(b) * std::log(b); }, 0.0, inf, spec);
    return v;
}

/// Inverts (c1, c2) -> (nu, gamma, c3). Throws Infeasible when
/// ln c1 + 2 c2 <= 0, where the multiplier equation has no root.
inline MultiplierSolution solve_multipliers(const ConstraintTargets& targets) {
    if (!(targets.c1 > 0.0)) throw DomainError("solve_multipliers: c1 > 0 required");
    const double rhs = -2.0 * targets.c2 - std::log(targets.c1);
    if (rhs >= 0.0)
        throw Infeasible("solve_multipliers: targets violate ln(c1) + 2 c2 > 0; no multiplier solution exists");

    auto h = [](double k) { return digamma_fn(k) - std::log(k); };  // increasing, (-inf, 0)
    double lo = 1e-8;
    double hi = 1.0;
    while (h(hi) < rhs) {
        hi *= 4.0;
        if (hi > 1e12) throw NonConvergence("solve_multipliers: shape bracket expansion failed");
    }
    RootSpec rs;
    rs.tol = 1e-13;
    rs.max_iter = 300;
    rs.bracket_lo = lo;
    rs.bracket_hi = hi;
    const double k = find_root([&](double x) { return h(x) - rhs; }, rs);

    MultiplierSolution sol;
    sol.shape_k = k;
    sol.gamma = k / targets.c1;
    sol.nu = 2.0 * k + 1.0;
    sol.c3 = std::exp(k * std::log(sol.gamma) - log_gamma_fn(k));
    const ConstraintValues back = constraint_values(DistributionParams(sol.nu, sol.gamma, sol.c3));
    sol.residuals = {back.c1 - targets.c1, back.c2 - targets.c2};
    return sol;
}

/// Differential entropy S = -ln c3 + nu c2 + gamma c1 of a family member.
inline double entropy(const DistributionParams& dist) {
    const ConstraintValues v = constraint_values(dist);
    return -std::log(dist.c3) + dist.nu * v.c2 + dist.gamma * v.c1;
}

/// Entropy by quadrature of -rho ln rho over (-inf, inf); oracle counterpart.
inline double entropy_quadrature(const DistributionParams& dist, const QuadratureSpec& spec = {}) {
    auto integrand = [&dist](double b) {
        const double log_rho = std::log(dist.c3) - dist.gamma / (b * b) - dist.nu * std::log(b);
        return -std::exp(log_rho) * log_rho;
    };
    return 2.0 * integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), spec);
}

// ---------------------------------------------------------------------------
// Discretized-grid oracle
// ---------------------------------------------------------------------------

struct GridSpec {
    double beta_min = 0.05;
    double beta_max = 12.0;
    int n = 4000;
};

struct GridMaxEntResult {
    std::vector<double> grid;          // the primary uniform grid
    std::vector<double> density;       // maxent density on the primary grid
    std::vector<double> full_grid;     // primary grid plus the coarse tail extension
    std::vector<double> full_density;
    double alpha = 0.0;
    double gamma = 0.0;
    double nu = 0.0;
    double sup_error_vs_closed_form = 0.0;
    double truncated_tail_mass = 0.0;  // closed-form mass outside [beta_min, beta_max]
    double entropy = 0.0;
    double norm_discrete = 0.0;        // discrete constraint values of the solution
    double c1_discrete = 0.0;
    double c2_discrete = 0.0;
};

namespace detail {

// Discretized half-line measure: a uniform trapezoid grid on
// [beta_min, beta_max] plus log-spaced tail cells out to where any admissible
// family member is negligible. Without the tail cells the missing mass
// (~4e-4 already for beta_max = 12) leaks into the dual multipliers and
// swamps the comparison against the closed form.
struct GridDual {
    std::vector<double> beta;
    std::vector<double> w;   // quadrature weights
    std::vector<double> u;   // 1/beta^2
    std::vector<double> v;   // ln beta
    std::size_t n_primary = 0;

    explicit GridDual(const GridSpec& gs) {
        if (!(gs.beta_min > 0.0) || !(gs.beta_max > gs.beta_min) || gs.n < 200)
            throw DomainError("grid_maxent: requires 0 < beta_min < beta_max and n >= 200");
        const double h = (gs.beta_max - gs.beta_min) / (gs.n - 1);
        n_primary = static_cast<std::size_t>(gs.n);
        for (int i = 0; i < gs.n; ++i) beta.push_back(gs.beta_min + i * h);
        w.assign(n_primary, h);
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;

        // Tail extension: log spacing out to 1e6, trapezoid in beta. The ratio
        // tightens with n so refining the grid refines the tail as well.
        const double ratio = 1.0 + 80.0 / gs.n;
        std::vector<double> tail{gs.beta_max};
        for (double b = gs.beta_max * ratio; b < 1e6; b *= ratio) tail.push_back(b);
        for (std::size_t j = 1; j + 1 < tail.size(); ++j) {
            beta.push_back(tail[j]);
            w.push_back(0.5 * (tail[j + 1] - tail[j - 1]));
        }
        w[n_primary - 1] += 0.5 * (tail[1] - tail[0]);  // boundary cell shared with the tail

        u.resize(beta.size());
        v.resize(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) {
            u[i] = 1.0 / (beta[i] * beta[i]);
            v[i] = std::log(beta[i]);
        }
    }

    // Moments of (u, v) under the tilted measure s_i = base_i exp(-g u_i - n v_i).
    struct Moments {
        double z, mu, mv, vuu, vuv, vvv;
    };
    Moments moments(const std::vector<double>& log_base, double g, double n_) const {
        double z = 0.0, su = 0.0, sv = 0.0;
        std::vector<double> s(beta.size());
        double max_log = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < beta.size(); ++i)
            max_log = std::max(max_log, log_base[i] - g * u[i] - n_ * v[i]);
        for (std::size_t i = 0; i < beta.size(); ++i) {
            s[i] = w[i] * std::exp(log_base[i] - g * u[i] - n_ * v[i] - max_log);
            z += s[i];
            su += s[i] * u[i];
            sv += s[i] * v[i];
        }
        const double mu = su / z;
        const double mv = sv / z;
        double vuu = 0.0, vuv = 0.0, vvv = 0.0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            const double du = u[i] - mu;
            const double dv = v[i] - mv;
            vuu += s[i] * du * du;
            vuv += s[i] * du * dv;
            vvv += s[i] * dv * dv;
        }
        Moments m;
        m.z = z * std::exp(max_log);
        m.mu = mu;
        m.mv = mv;
        m.vuu = vuu / z;
        m.vuv = vuv / z;
        m.vvv = vvv / z;
        return m;
    }
};

}  // namespace detail

/// Discretized maxent oracle: Newton iteration on the dual multipliers
/// (gamma, nu), normalization eliminated in closed form. Starts from the
/// (1, 4) solution and damps on overshoot.
inline GridMaxEntResult grid_maxent(const ConstraintTargets& targets, const GridSpec& gs = {}) {
    if (!targets.feasible()) throw Infeasible("grid_maxent: infeasible targets");
    detail::GridDual gd(gs);
    std::vector<double> log_base(gd.beta.size(), 0.0);

    double g = 1.0, n = 4.0;
    double r1 = 0.0, r2 = 0.0;
    bool done = false;
    detail::GridDual::Moments m{};
    for (int iter = 0; iter < 200 && !done; ++iter) {
        m = gd.moments(log_base, g, n);
        r1 = m.mu - targets.c1;
        r2 = m.mv - targets.c2;
        if (std::abs(r1) < 1e-12 * std::max(1.0, std::abs(targets.c1)) &&
            std::abs(r2) < 1e-12 * std::max(1.0, std::abs(targets.c2))) {
            done = true;
            break;
        }
        // Newton step: the residual Jacobian is minus the covariance of (u, v),
        // so theta_new = theta + Cov^{-1} r. Damped on overshoot.
        const double det = m.vuu * m.vvv - m.vuv * m.vuv;
        if (!(det > 0.0)) throw NonConvergence("grid_maxent: singular dual Hessian");
        const double dg = (m.vvv * r1 - m.vuv * r2) / det;
        const double dn = (-m.vuv * r1 + m.vuu * r2) / det;
        double step = 1.0;
        const double res0 = std::abs(r1) + std::abs(r2);
        for (int back = 0; back < 40; ++back) {
            const auto trial = gd.moments(log_base, g + step * dg, n + step * dn);
            if (std::abs(trial.mu - targets.c1) + std::abs(trial.mv - targets.c2) < res0) break;
            step *= 0.5;
        }
        g += step * dg;
        n += step * dn;
    }
    if (!done) throw NonConvergence("grid_maxent: dual Newton did not converge");

    GridMaxEntResult out;
    out.gamma = g;
    out.nu = n;
    // Factor 2 carries the (-inf, inf) convention: 2 * sum w rho = 1.
    const double a_norm = 1.0 / (2.0 * m.z);
    out.alpha = -1.0 - std::log(a_norm);
    out.full_grid = gd.beta;
    out.full_density.resize(gd.beta.size());
    double entropy_sum = 0.0;
    for (std::size_t i = 0; i < gd.beta.size(); ++i) {
        const double log_rho = std::log(a_norm) - g * gd.u[i] - n * gd.v[i];
        out.full_density[i] = std::exp(log_rho);
        entropy_sum += gd.w[i] * out.full_density[i] * log_rho;
        out.norm_discrete += 2.0 * gd.w[i] * out.full_density[i];
        out.c1_discrete += 2.0 * gd.w[i] * out.full_density[i] * gd.u[i];
        out.c2_discrete += 2.0 * gd.w[i] * out.full_density[i] * gd.v[i];
    }
    out.entropy = -2.0 * entropy_sum;
    out.grid.assign(gd.beta.begin(), gd.beta.begin() + gd.n_primary);
    out.density.assign(out.full_density.begin(), out.full_density.begin() + gd.n_primary);

    const MultiplierSolution closed = solve_multipliers(targets);
    double sup = 0.0;
    for (std::size_t i = 0; i < gd.n_primary; ++i) {
        const double cf = closed.c3 * std::exp(-closed.gamma * gd.u[i] - closed.nu * gd.v[i]);
        sup = std::max(sup, std::abs(out.density[i] - cf));
    }
    out.sup_error_vs_closed_form = sup;

    const DistributionParams cf_dist = closed.distribution();
    auto cf_density = [&cf_dist](double b) { return rho(b, cf_dist); };
    const QuadratureSpec tail_spec{1e-10, 1e-14, 2000};
    const double inside = 2.0 * integrate(cf_density, gs.beta_min, gs.beta_max, tail_spec);
    out.truncated_tail_mass = std::max(0.0, 1.0 - inside);
    return out;
}

/// Restores the three discrete constraints on a perturbed grid density by an
/// exponential tilt, returning the re-projected density (used by the
/// entropy-maximality tests; the tilt keeps positivity and lands exactly on
/// the constraint set). Takes densities on the full (primary + tail) grid.
inline std::vector<double> grid_project_to_constraints(const ConstraintTargets& targets, const GridSpec& gs,
                                                       const std::vector<double>& density) {
    detail::GridDual gd(gs);
    if (density.size() != gd.beta.size())
        throw DomainError("grid_project_to_constraints: density size mismatch");
    std::vector<double> log_base(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        if (!(density[i] > 0.0)) throw DomainError("grid_project_to_constraints: density must be positive");
        log_base[i] = std::log(density[i]);
    }
    double g = 0.0, n = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const auto m = gd.moments(log_base, g, n);
        const double r1 = m.mu - targets.c1;
        const double r2 = m.mv - targets.c2;
        if (std::abs(r1) < 1e-12 && std::abs(r2) < 1e-12) {
            std::vector<double> out(density.size());
            const double a_norm = 1.0 / (2.0 * m.z);
            for (std::size_t i = 0; i < density.size(); ++i)
                out[i] = a_norm * std::exp(log_base[i] - g * gd.u[i] - n * gd.v[i]);
            return out;
        }
        const double det = m.vuu * m.vvv - m.vuv * m.vuv;
        if (!(det > 0.0)) throw NonConvergence("grid_project_to_constraints: singular Hessian");
        g += (m.vvv * r1 - m.vuv * r2) / det;
        n += (-m.vuv * r1 + m.vuu * r2) / det;
    }
    throw NonConvergence("grid_project_to_constraints: Newton did not converge");
}

/// Discrete entropy -2 sum w rho ln rho of a grid density.
inline double grid_entropy(const GridSpec& gs, const std::vector<double>& density) {
    detail::GridDual gd(gs);
    if (density.size() != gd.beta.size()) throw DomainError("grid_entropy: density size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i)
        if (density[i] > 0.0) s += gd.w[i] * density[i] * std::log(density[i]);
    return -2.0 * s;
}

}  // namespace mdx
