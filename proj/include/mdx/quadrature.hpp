#pragma once

/**
 * Adaptive quadrature on finite and semi-infinite intervals.
 *
 * The workhorse is a globally adaptive 15-point Gauss-Kronrod rule with the
 * classic QUADPACK error estimate. All Kronrod nodes are interior, so
 * integrands may blow up (or be undefined) at the interval endpoints.
 *
 * Semi-infinite intervals [a, inf) are compactified with x = a + t/(1-t),
 * which keeps the transformed integrand smooth for exponentially and
 * algebraically decaying tails alike.
 *
 * When the error target cannot be met, the failure is classified: the
 * integrand is re-probed on geometrically shrinking/growing shells toward
 * each open endpoint, and if the shell contributions fail to decay the
 * integral is declared divergent (DivergenceDetected) rather than merely
 * non-converged (NonConvergence).
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mdx/errors.hpp"

namespace mdx {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
            throw DomainError("QuadratureSpec: rel_tol > 0, abs_tol > 0, max_subdivisions >= 1 required");
    }
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (positive half; index 7 is the
// center) and the matching Kronrod / embedded 7-point Gauss weights.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double center = 0.5 * (a + b);

    const double fc = f(center);
    bool finite = std::isfinite(fc);

    double resk = kGk15WeightsK[7] * fc;
    double resg = kGk15WeightsG[3] * fc;
    double resabs = kGk15WeightsK[7] * std::abs(fc);

    double fv1[8];
    double fv2[8];
    fv1[7] = fc;
    fv2[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGk15Nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        const double sum = f1 + f2;
        resk += kGk15WeightsK[j] * sum;
        resabs += kGk15WeightsK[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kGk15WeightsG[j / 2] * sum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kGk15WeightsK[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kGk15WeightsK[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double habs = std::abs(half);
    resabs *= habs;
    resasc *= habs;

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    if (!finite) {
        p.error = std::numeric_limits<double>::infinity();
        return p;
    }

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    p.error = err;
    return p;
}

// Verdict on a sequence of shell contributions approaching an open endpoint.
// Only the tail end of the sequence matters: a convergent integral may grow
// for a while before its decay sets in, so divergence is declared when the
// final shells fail to decay (or blow up outright).
inline bool shell_sequence_diverges(const std::vector<double>& mags, bool hit_nonfinite) {
    if (hit_nonfinite) return true;
    double peak = 0.0;
    for (double m : mags) {
        if (m > 1e120) return true;
        peak = std::max(peak, m);
    }
    if (peak == 0.0) return false;
    const std::size_t window = 5;
    if (mags.size() < 2 * window) return false;
    double last = 0.0, before = 0.0;
    for (std::size_t i = mags.size() - window; i < mags.size(); ++i) last = std::max(last, mags[i]);
    for (std::size_t i = mags.size() - 2 * window; i < mags.size() - window; ++i)
        before = std::max(before, mags[i]);
    return last > 1e-13 * peak && last >= 0.999 * before;
}

// Shell probe toward infinity: contributions on [T 2^k, T 2^{k+1}].
template <class F>
bool shells_diverge_at_infinity(F&& f, double a) {
    double start = std::max(a, 0.0) + 1.0;
    std::vector<double> mags;
    mags.reserve(48);
    bool nonfinite = false;
    for (int k = 0; k < 48 && !nonfinite; ++k) {
        Panel shell = gk15(f, start, 2.0 * start);
        if (!std::isfinite(shell.value))
            nonfinite = true;
        else
            mags.push_back(std::abs(shell.value));
        start *= 2.0;
    }
    return shell_sequence_diverges(mags, nonfinite);
}

// Shell probe toward a finite endpoint: [endpoint + w/2^{k+1}, endpoint + w/2^k],
// signed toward the interior.
template <class F>
bool shells_diverge_at_point(F&& f, double endpoint, double inward) {
    double w = inward;
    std::vector<double> mags;
    mags.reserve(60);
    bool nonfinite = false;
    for (int k = 0; k < 60 && !nonfinite; ++k) {
        Panel shell = gk15(f, endpoint + 0.5 * w, endpoint + w);
        if (!std::isfinite(shell.value))
            nonfinite = true;
        else
            mags.push_back(std::abs(shell.value));
        w *= 0.5;
    }
    return shell_sequence_diverges(mags, nonfinite);
}

template <class F>
double adaptive(F&& f, double a, double b, const QuadratureSpec& spec, bool& converged) {
    std::vector<Panel> panels;
    panels.reserve(64);
    const int initial = 16;  // narrow interior peaks must not slip between nodes
    const double h0 = (b - a) / initial;
    for (int i = 0; i < initial; ++i)
        panels.push_back(gk15(f, a + i * h0, a + (i + 1) * h0));

    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        double total = 0.0;
        double err = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > worst_err) {
                worst_err = panels[i].error;
                worst = i;
            }
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= target && std::isfinite(total)) {
            converged = true;
            return total;
        }
        if (static_cast<int>(panels.size()) >= spec.max_subdivisions) break;
        const Panel& w = panels[worst];
        const double mid = 0.5 * (w.a + w.b);
        // Width guard relative to the panel's own position: intervals hugging
        // an endpoint singularity at 0 may legitimately shrink far below the
        // absolute epsilon scale.
        if (!(w.b - w.a > 2.0 * eps * (std::abs(w.a) + std::abs(w.b)))) break;
        const double wa = w.a, wb = w.b;
        panels[worst] = gk15(f, wa, mid);
        panels.push_back(gk15(f, mid, wb));
    }

    converged = false;
    double total = 0.0;
    for (const Panel& p : panels) total += p.value;
    return total;
}

}  // namespace detail

/// Integrates f over [a, b]; pass b = +infinity for a semi-infinite domain.
/// Throws NonConvergence when the error target cannot be met and
/// DivergenceDetected when the failure is traced to a non-decaying tail or
/// endpoint blow-up.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!std::isfinite(a)) throw DomainError("integrate: lower endpoint must be finite");
    const bool semi_infinite = std::isinf(b);
    if (!semi_infinite && !(a < b)) throw DomainError("integrate: requires a < b");

    bool converged = false;
    double value = 0.0;
    if (semi_infinite) {
        auto g = [&f, a](double t) {
            const double om = 1.0 - t;
            const double x = a + t / om;
            return f(x) / (om * om);
        };
        value = detail::adaptive(g, 0.0, 1.0, spec, converged);
    } else {
        value = detail::adaptive(f, a, b, spec, converged);
    }
    if (converged) return value;

    // Classify the failure by extending the domain toward each open end.
    if (semi_infinite && detail::shells_diverge_at_infinity(f, a))
        throw DivergenceDetected("integrate: tail contributions grow without bound");
    const double inward = semi_infinite ? 1.0 : std::min(1.0, 0.5 * (b - a));
    if (detail::shells_diverge_at_point(f, a, inward))
        throw DivergenceDetected("integrate: integrand not integrable at the lower endpoint");
    if (!semi_infinite && detail::shells_diverge_at_point(f, b, -std::min(1.0, 0.5 * (b - a))))
        throw DivergenceDetected("integrate: integrand not integrable at the upper endpoint");
    throw NonConvergence("integrate: error estimate above tolerance after max_subdivisions");
}

}  // namespace mdx
