#pragma once

/**
 * The cross-module verification suite behind `mdx verify`.
 *
 * Every check records a measured value, the expected value, the tolerance it
 * was held to and a provenance tag. Checks whose disagreement documents an
 * internal inconsistency of the derivation chain under test are emitted with
 * status "finding" instead of pass/fail: the suite stays green while the
 * discrepancy remains visible in the report.
 */

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mdx/ablation.hpp"
#include "mdx/averaging.hpp"
#include "mdx/config.hpp"
#include "mdx/fisher.hpp"
#include "mdx/geometry.hpp"
#include "mdx/maxent.hpp"
#include "mdx/model.hpp"
#include "mdx/quadrature.hpp"
#include "mdx/relativity.hpp"
#include "mdx/special_functions.hpp"

namespace mdx {

enum class Provenance { paper, trivial, derived };
enum class CheckStatus { pass, fail, finding };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "PAPER";
        case Provenance::trivial: return "TRIVIAL";
        default: return "DERIVED";
    }
}

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "finding";
    }
}

struct CheckRecord {
    std::string name;
    std::string module;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Provenance provenance = Provenance::derived;
    CheckStatus status = CheckStatus::fail;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    int n_pass = 0;
    int n_fail = 0;
    int n_finding = 0;
};

namespace detail {

class CheckSink {
public:
    explicit CheckSink(VerificationReport& report) : report_(report) {}

    void check(const std::string& module, const std::string& name, double measured, double expected,
               double tolerance, Provenance prov) {
        CheckRecord r{name, module, measured, expected, tolerance, prov, CheckStatus::fail};
        if (std::isfinite(measured) && std::abs(measured - expected) <= tolerance) r.status = CheckStatus::pass;
        push(r);
    }

    void finding(const std::string& module, const std::string& name, double measured, double expected,
                 Provenance prov) {
        push(CheckRecord{name, module, measured, expected, 0.0, prov, CheckStatus::finding});
    }

    /// Runs fn and records a failed check instead of propagating; individual
    /// check failures must never abort the suite.
    template <class Fn>
    void guarded(const std::string& module, const std::string& name, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception&) {
            push(CheckRecord{name + "_crashed", module, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0,
                             Provenance::derived, CheckStatus::fail});
        }
    }

private:
    void push(const CheckRecord& r) {
        report_.checks.push_back(r);
        switch (r.status) {
            case CheckStatus::pass: ++report_.n_pass; break;
            case CheckStatus::fail: ++report_.n_fail; break;
            case CheckStatus::finding: ++report_.n_finding; break;
        }
    }

    VerificationReport& report_;
};

}  // namespace detail

inline VerificationReport run_verification(const RunConfig& config, unsigned long seed = 42) {
    VerificationReport report;
    detail::CheckSink sink(report);
    const double inf = std::numeric_limits<double>::infinity();
    const ModelParams& mp = config.model;
    const DistributionParams& dist = config.dist;
    const double two_m_l2 = 2.0 * mp.m_lambda2();
    // Checks that lean on the configured quadrature cannot be held tighter
    // than what that quadrature was asked to deliver.
    auto quad_tol = [&](double base) { return std::max(base, 10.0 * config.quadrature.rel_tol); };

    // --- numerics core ------------------------------------------------------
    sink.guarded("numerics_core", "gamma_half_vs_quadrature", [&] {
        const double quad = integrate([](double x) { return std::exp(-x) / std::sqrt(x); }, 0.0, inf,
                                      config.quadrature);
        sink.check("numerics_core", "gamma_half_vs_quadrature", quad, gamma_fn(0.5), quad_tol(1e-9),
                   Provenance::derived);
    });
    sink.guarded("numerics_core", "digamma_three_halves_identity", [&] {
        const double euler = 0.5772156649015328606;
        sink.check("numerics_core", "digamma_three_halves_identity", digamma_fn(1.5),
                   2.0 - euler - 2.0 * std::log(2.0), 1e-12, Provenance::derived);
    });

    // --- model ---------------------------------------------------------------
    sink.guarded("model", "rho_normalization", [&] {
        const double total =
            2.0 * integrate([&](double b) { return rho(b, dist); }, 0.0, inf, config.quadrature);
        sink.check("model", "rho_normalization", total, 1.0, quad_tol(1e-9), Provenance::paper);
    });
    sink.guarded("model", "score_vs_log_derivative", [&] {
        const double p = 1.1, b = 0.8, h = 1e-5;
        auto log_h = [&](double bb) { return std::log(h_beta(Momentum{p}, bb, mp)); };
        const double fd = (log_h(b + h) - log_h(b - h)) / (2.0 * h);
        sink.check("model", "score_vs_log_derivative", fd, score(Momentum{p}, b, mp), 1e-6,
                   Provenance::derived);
    });

    // --- averaging -----------------------------------------------------------
    sink.guarded("averaging", "average_routes_agree", [&] {
        double worst = 0.0;
        for (double p : {0.0, 0.2, 0.4, 0.6, 0.8}) {
            const AverageResult r = average_H(Momentum{p}, mp, dist, config.quadrature);
            const double ref = *r.analytic_gamma;
            worst = std::max(worst, std::abs(*r.numeric_beta - ref) / ref);
            worst = std::max(worst, std::abs(*r.numeric_xi - ref) / ref);
            worst = std::max(worst, std::abs(*r.numeric_beta - *r.numeric_xi) / ref);
        }
        sink.check("averaging", "average_routes_agree", worst, 0.0, quad_tol(1e-8), Provenance::derived);
    });
    sink.guarded("averaging", "average_rest_value", [&] {
        const AverageResult r0 = average_H(Momentum{0.0}, mp, dist, config.quadrature);
        sink.check("averaging", "average_rest_value", *r0.numeric_beta, two_m_l2, quad_tol(1e-9),
                   Provenance::trivial);
    });
    sink.guarded("averaging", "gamma_route_vs_sqrt_dispersion", [&] {
        const AverageResult r = average_H(Momentum{0.6}, mp, dist, config.quadrature);
        sink.finding("averaging", "gamma_route_vs_sqrt_dispersion_p06", *r.analytic_gamma, r.eq5_value,
                     Provenance::paper);
    });
    sink.guarded("averaging", "divergence_domain_flags", [&] {
        const double edge = std::sqrt(two_m_l2);
        int correct = 0;
        correct += average_H(Momentum{edge * (1.0 - 1e-3)}, mp, dist, config.quadrature).convergent ? 1 : 0;
        correct += average_H(Momentum{edge}, mp, dist, config.quadrature).convergent ? 0 : 1;
        correct += average_H(Momentum{edge * (1.0 + 1e-3)}, mp, dist, config.quadrature).convergent ? 0 : 1;
        sink.check("averaging", "divergence_domain_flags", correct, 3.0, 0.0, Provenance::derived);
    });
    sink.guarded("averaging", "small_p_quadratic_coefficient", [&] {
        // Fit <H>(p) - <H>(0) ~ kappa p^2 + c p^4; the quartic term must be
        // modeled or it contaminates kappa at the 1e-3 level.
        const double h0 = *average_H(Momentum{0.0}, mp, dist, config.quadrature).numeric_beta;
        double s22 = 0.0, s24 = 0.0, s44 = 0.0, b2 = 0.0, b4 = 0.0;
        for (int i = 1; i <= 5; ++i) {
            const double p = 0.01 * i;
            const double y = *average_H(Momentum{p}, mp, dist, config.quadrature).numeric_beta - h0;
            const double p2 = p * p, p4 = p2 * p2;
            s22 += p2 * p2;
            s24 += p2 * p4;
            s44 += p4 * p4;
            b2 += y * p2;
            b4 += y * p4;
        }
        const double kappa = (s44 * b2 - s24 * b4) / (s22 * s44 - s24 * s24);
        // kappa = 1/2 for the c = 1 defaults; in general it scales with
        // (2 m lambda^2)^(-1/2).
        sink.check("averaging", "small_p_quadratic_coefficient", kappa, 0.5 / std::sqrt(two_m_l2),
                   quad_tol(1e-4), Provenance::derived);
    });

    // --- maxent ----------------------------------------------------------------
    const double c2_star = -0.5 * digamma_fn(1.5);
    sink.guarded("maxent", "constraint_c1_quadrature", [&] {
        const auto qd = constraint_values_quadrature(dist, config.quadrature);
        sink.check("maxent", "constraint_c1_quadrature", qd.c1, 1.5, quad_tol(1e-8), Provenance::derived);
        sink.check("maxent", "constraint_c2_quadrature", qd.c2, c2_star, quad_tol(1e-8), Provenance::derived);
    });
    sink.guarded("maxent", "multiplier_inversion", [&] {
        const MultiplierSolution s = solve_multipliers({1.5, -0.0182450});
        sink.check("maxent", "multiplier_inversion_nu", s.nu, 4.0, 1e-6, Provenance::derived);
        sink.check("maxent", "multiplier_inversion_gamma", s.gamma, 1.0, 1e-6, Provenance::derived);
        sink.check("maxent", "multiplier_inversion_c3", s.c3, 2.0 / std::sqrt(M_PI), 1e-6,
                   Provenance::paper);
    });
    sink.guarded("maxent", "grid_oracle", [&] {
        const GridMaxEntResult r = grid_maxent({1.5, -0.0182450}, GridSpec{0.05, 12.0, 4000});
        sink.check("maxent", "grid_oracle_sup_error", r.sup_error_vs_closed_form, 0.0, 1e-3,
                   Provenance::derived);
        sink.check("maxent", "grid_oracle_gamma", r.gamma, 1.0, 1e-2, Provenance::derived);
        sink.check("maxent", "grid_oracle_nu", r.nu, 4.0, 1e-2, Provenance::derived);
    });
    sink.guarded("maxent", "entropy_closed_vs_quadrature", [&] {
        sink.check("maxent", "entropy_closed_vs_quadrature", entropy_quadrature(dist, config.quadrature),
                   entropy(dist), quad_tol(1e-8), Provenance::derived);
    });
    sink.guarded("maxent", "ablation_beta_squared", [&] {
        const AblationFinding f = ablation_report("beta-squared-for-inverse", mp);
        sink.check("maxent", "ablation_beta_squared_average_diverges", f.average_converges ? 1.0 : 0.0,
                   0.0, 0.0, Provenance::derived);
    });
    sink.guarded("maxent", "ablation_ln_beta_only", [&] {
        const AblationFinding f = ablation_report("ln-beta-only", mp);
        sink.check("maxent", "ablation_ln_beta_only_nonnormalizable",
                   f.normalizable == Ternary::no ? 0.0 : 1.0, 0.0, 0.0, Provenance::derived);
    });
    sink.guarded("maxent", "ablation_inverse_only", [&] {
        const AblationFinding f = ablation_report("inverse-beta-squared-only", mp);
        sink.check("maxent", "ablation_inverse_only_nonnormalizable",
                   f.normalizable == Ternary::no ? 0.0 : 1.0, 0.0, 0.0, Provenance::derived);
        // Sometimes described as collapsing to a delta function; numerically
        // the family has no normalizable member at all.
        sink.finding("maxent", "inverse_only_family_vs_delta_claim",
                     f.normalizable == Ternary::no ? 0.0 : 1.0, 1.0, Provenance::paper);
    });

    // --- fisher ------------------------------------------------------------------
    std::mt19937_64 rng(seed);
    sink.guarded("fisher", "identity_routes", [&] {
        std::uniform_real_distribution<double> betas(0.4, 2.5);
        std::uniform_real_distribution<double> qs(2.0, 18.0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double beta = betas(rng);
            const double q = qs(rng);
            const double cutoff = q * beta * std::sqrt(mp.m_lambda2());
            const double s = mp.m_lambda2();
            auto log_w = [s, beta](double p) { return p * p / (2.0 * s * beta * beta); };
            auto score_fn = [s, beta](double p) { return 2.0 / beta - p * p / (s * beta * beta * beta); };
            const double direct = centered_score_variance(log_w, score_fn, cutoff);
            const double ident = var_q2(q) / (beta * beta);
            worst = std::max(worst, std::abs(direct - ident) / ident);
        }
        sink.check("fisher", "identity_routes_max_rel_dev", worst, 0.0, 1e-10, Provenance::paper);
    });
    sink.guarded("fisher", "normalization_invariance", [&] {
        std::uniform_real_distribution<double> betas(0.5, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double beta = betas(rng);
            const double cutoff = 8.0 * beta * std::sqrt(mp.m_lambda2());
            const double s = mp.m_lambda2();
            auto log_w = [s, beta](double p) { return p * p / (2.0 * s * beta * beta); };
            auto log_ws = [log_w, beta](double p) { return log_w(p) + std::log(beta * beta * beta + 1.0); };
            auto score_fn = [s, beta](double p) { return 2.0 / beta - p * p / (s * beta * beta * beta); };
            const double g0 = centered_score_variance(log_w, score_fn, cutoff);
            const double g1 = centered_score_variance(log_ws, score_fn, cutoff);
            worst = std::max(worst, std::abs(g1 - g0) / g0);
        }
        sink.check("fisher", "normalization_invariance", worst, 0.0, 1e-10, Provenance::paper);
    });
    sink.guarded("fisher", "scan_and_limit", [&] {
        const CutoffScan scan = fisher_scan(1.0, mp, config.fisher_q_grid);
        sink.check("fisher", "limit_constant_C", scan.limit, 4.0, 1e-3, Provenance::derived);
        const CutoffScan other = fisher_scan(1.9, mp, config.fisher_q_grid);
        sink.check("fisher", "limit_beta_independence", std::abs(scan.limit - other.limit), 0.0, 1e-10,
                   Provenance::derived);
        // The individual moments grow like Q^2 and Q^4; only the variance
        // combination converges. Recorded against the constancy description.
        const double growth = scan.points.back().c1_moment / scan.points.front().c1_moment;
        const double q_ratio = scan.points.back().q / scan.points.front().q;
        sink.finding("fisher", "c1_moment_growth_vs_constancy_claim", growth, 1.0, Provenance::paper);
        sink.check("fisher", "c1_moment_growth_is_quadratic", growth, q_ratio * q_ratio,
                   0.05 * q_ratio * q_ratio, Provenance::derived);
    });

    // --- geometry -------------------------------------------------------------
    sink.guarded("geometry", "scale_invariance", [&] {
        std::uniform_real_distribution<double> betas(0.05, 20.0);
        std::uniform_real_distribution<double> as(0.1, 10.0);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double b1 = betas(rng), b2 = betas(rng), a = as(rng);
            worst = std::max(worst, std::abs(geodesic_distance(a * b1, a * b2) - geodesic_distance(b1, b2)));
        }
        sink.check("geometry", "scale_invariance", worst, 0.0, 1e-12, Provenance::paper);
    });
    sink.guarded("geometry", "additivity", [&] {
        std::uniform_real_distribution<double> betas(0.05, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double b1 = betas(rng), b3 = betas(rng);
            if (b1 > b3) std::swap(b1, b3);
            const double b2 = std::sqrt(b1 * b3);
            worst = std::max(worst, std::abs(geodesic_distance(b1, b2) + geodesic_distance(b2, b3) -
                                             geodesic_distance(b1, b3)));
        }
        sink.check("geometry", "additivity", worst, 0.0, 1e-12, Provenance::trivial);
    });
    sink.guarded("geometry", "path_integral_consistency", [&] {
        const double len = integrate([](double b) { return 1.0 / b; }, 0.2, 5.0, config.quadrature);
        sink.check("geometry", "path_integral_consistency", len, geodesic_distance(0.2, 5.0), quad_tol(1e-8),
                   Provenance::derived);
    });
    sink.guarded("geometry", "geodesic_reference_point", [&] {
        sink.check("geometry", "geodesic_reference_point", geodesic(1.0, 1.0), std::exp(1.0), 1e-12,
                   Provenance::paper);
    });
    sink.guarded("geometry", "geodesic_residual_order", [&] {
        auto residual = [](double h) {
            const double bm = geodesic(1.3, 0.4 - h), b0 = geodesic(1.3, 0.4), bp = geodesic(1.3, 0.4 + h);
            const double second = (bp - 2.0 * b0 + bm) / (h * h);
            const double first = (bp - bm) / (2.0 * h);
            return std::abs(second - first * first / b0);
        };
        sink.check("geometry", "geodesic_residual_order", residual(5e-4) / residual(1e-3), 0.25, 0.15,
                   Provenance::derived);
    });

    // --- relativity -------------------------------------------------------------
    const RelativisticParams rp = RelativisticParams::from_model(mp);
    sink.guarded("relativity", "legendre_matches_closed_form", [&] {
        double worst = 0.0;
        for (double f : {0.0, 0.3, 0.6, 0.9, 0.99}) {
            const double v = f * rp.c;
            worst = std::max(worst, std::abs(legendre_numeric(v, rp).first - L_rel(v, rp)));
        }
        sink.check("relativity", "legendre_matches_closed_form", worst, 0.0, 1e-8, Provenance::paper);
    });
    sink.guarded("relativity", "legendre_double_transform", [&] {
        double worst = 0.0;
        for (int i = -10; i <= 10; ++i) {
            const double p = static_cast<double>(i);
            auto conj = [p, &rp](double v) { return p * v - L_rel(v, rp); };
            const auto [v_star, value] = maximize_1d(conj, -rp.c * (1.0 - 1e-9), rp.c * (1.0 - 1e-9), 1e-12);
            worst = std::max(worst, std::abs(value - H_rel(p, rp)));
            (void)v_star;
        }
        sink.check("relativity", "legendre_double_transform", worst, 0.0, 1e-8, Provenance::derived);
    });
    sink.guarded("relativity", "mass_shell_identity", [&] {
        double worst = 0.0;
        for (double p : {-7.5, -1.0, 0.0, 0.3, 2.0, 10.0}) {
            const double h = H_rel(p, rp);
            worst = std::max(worst, std::abs(h * h - p * p * rp.c * rp.c - rp.m * rp.m * std::pow(rp.c, 4.0)) / (h * h));
        }
        sink.check("relativity", "mass_shell_identity", worst, 0.0, 1e-12, Provenance::trivial);
    });
    sink.guarded("relativity", "velocity_reference_point", [&] {
        const RelativisticParams unit(1.0, 1.0);
        sink.check("relativity", "velocity_reference_point", velocity(0.75, unit), 0.6, 1e-12,
                   Provenance::derived);
    });

    report.notes.push_back(
        "The <ln beta> constraint is integrated over the whole real line; ln beta is read as ln|beta| "
        "(equivalently 2 x the (0, inf) integral), since the literal integrand is undefined for beta < 0.");
    report.notes.push_back(
        "lambda is stored as a velocity-like scale with c^2 = 2 lambda^2; the description of lambda as an "
        "inverse velocity is not used, only internal consistency is enforced.");
    report.notes.push_back(
        "The constraint fixture values are C1 = 3/2 and C2 = -psi(3/2)/2 ~ -0.01824499, derived from the "
        "reference member and confirmed by quadrature; they are not stated numerically in the source.");
    return report;
}

}  // namespace mdx
