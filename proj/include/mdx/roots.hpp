#pragma once

/**
 * Bracketed root finding and one-dimensional maximization.
 *
 * find_root is Brent's method (inverse quadratic / secant with a bisection
 * fallback), so convergence is guaranteed once a sign change is bracketed.
 * maximize_1d is Brent's parabolic-interpolation minimizer applied to -f;
 * it only needs unimodality, not smoothness.
 */

#include <cmath>
#include <limits>
#include <utility>

#include "mdx/errors.hpp"

namespace mdx {

struct RootSpec {
    double tol = 1e-12;
    int max_iter = 200;
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;

    void validate() const {
        if (!(tol > 0.0) || max_iter < 1) throw DomainError("RootSpec: tol > 0 and max_iter >= 1 required");
        if (!std::isfinite(bracket_lo) || !std::isfinite(bracket_hi) || !(bracket_lo < bracket_hi))
            throw DomainError("RootSpec: bracket must be finite with lo < hi");
    }
};

template <class G>
double find_root(G&& g, const RootSpec& spec) {
    spec.validate();
    double a = spec.bracket_lo;
    double b = spec.bracket_hi;
    double fa = g(a);
    double fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoBracket("find_root: function values at bracket endpoints have the same sign");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < spec.max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * spec.tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= spec.tol) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw NonConvergence("find_root: max_iter reached");
}

/// Locates the maximum of a unimodal f on [lo, hi]; returns (argmax, max).
template <class F>
std::pair<double, double> maximize_1d(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("maximize_1d: requires finite lo < hi");
    if (!(tol > 0.0)) throw DomainError("maximize_1d: tol > 0 required");

    const double golden = 0.3819660112501051;
    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = -f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 0; iter < 500; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol1 = tol * std::abs(x) + 1e-15;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) return {x, -fx};

        bool parabolic = false;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = -f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    throw NonConvergence("maximize_1d: iteration budget exhausted");
}

}  // namespace mdx
