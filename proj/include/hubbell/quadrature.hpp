// Code-independent ground truth: adaptive Gauss-Kronrod quadrature of the
// defining integrals, used to validate every series-based result.  The
// classical-case oracle quad_I touches only elementary functions, so it
// shares no numerical kernel with the series evaluators.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hubbell/hubbell.hpp"
#include "hubbell/series.hpp"
#include "hubbell/special.hpp"

namespace hubbell {

struct QuadratureControl {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    std::size_t max_depth = 60; ///< interval-halving recursion cap

    void validate() const {
        if (!(abs_tol > 0.0)) throw domain_error("abs_tol > 0");
        if (!(rel_tol > 0.0)) throw domain_error("rel_tol > 0");
        if (max_depth < 1) throw domain_error("max_depth >= 1");
    }
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double gk15_table[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

struct panel_estimate {
    double value;
    double error; ///< |K15 - G7|, a conservative local bound
};

template <class F>
panel_estimate gk15(F&& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f0 = f(mid);
    double gauss = gk15_table[0][1] * f0;
    double kronrod = gk15_table[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15_table[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        gauss += gk15_table[i][1] * fi;
        kronrod += gk15_table[i][2] * fi;
    }
    gauss *= half;
    kronrod *= half;
    return {kronrod, std::fabs(kronrod - gauss)};
}

/// Adaptive interval halving with a per-subinterval error budget
/// proportional to length.  Depth exhaustion is reported through
/// converged = false, never an exception.
template <class F>
EvalResult adaptive_integrate(F&& f, double lo, double hi,
                              const QuadratureControl& qctl) {
    qctl.validate();
    EvalResult res;
    res.method = Method::Quadrature;
    if (!(hi > lo)) {
        res.converged = true;
        return res;
    }
    const double length = hi - lo;
    const panel_estimate whole = gk15(f, lo, hi);
    const double budget = std::max(qctl.abs_tol,
                                   qctl.rel_tol * std::fabs(whole.value));

    struct segment {
        double lo, hi;
        std::size_t depth;
    };
    std::vector<segment> stack{{lo, hi, 0}};
    neumaier_sum total;
    neumaier_sum err;
    std::size_t panels = 0;
    bool depth_exceeded = false;
    while (!stack.empty()) {
        const segment seg = stack.back();
        stack.pop_back();
        const panel_estimate est = gk15(f, seg.lo, seg.hi);
        ++panels;
        const double local_budget = budget * (seg.hi - seg.lo) / length;
        if (est.error <= local_budget || seg.depth >= qctl.max_depth) {
            if (est.error > local_budget) depth_exceeded = true;
            total.add(est.value);
            err.add(est.error);
            continue;
        }
        const double mid = 0.5 * (seg.lo + seg.hi);
        stack.push_back({seg.lo, mid, seg.depth + 1});
        stack.push_back({mid, seg.hi, seg.depth + 1});
    }
    res.value = total.value();
    res.est_error = err.value();
    res.terms_used = panels;
    res.converged = !depth_exceeded && std::isfinite(res.value) &&
                    res.est_error <= std::max(qctl.abs_tol,
                                              qctl.rel_tol * std::fabs(res.value));
    return res;
}

inline EvalResult scale_result(EvalResult r, double factor) {
    r.value *= factor;
    r.est_error *= std::fabs(factor);
    return r;
}

} // namespace detail

/// (sigma/4 pi) Int_0^b arctan(a/sqrt(x^2+1)) dx / sqrt(x^2+1),
/// elementary integrand only.
inline EvalResult quad_I(double a, double b, double sigma = 1.0,
                         const QuadratureControl& qctl = {}) {
    if (!(a > 0.0)) throw domain_error("a > 0");
    if (!(b > 0.0)) throw domain_error("b > 0");
    auto integrand = [a](double x) {
        const double s = std::sqrt(x * x + 1.0);
        return std::atan(a / s) / s;
    };
    EvalResult r = detail::adaptive_integrate(integrand, 0.0, b, qctl);
    return detail::scale_result(r, sigma / (4.0 * std::numbers::pi));
}

/// h(a,b) = Int_0^a Int_0^b dy dx / (1 + x^2 + y^2).  The inner integral has
/// the closed form arctan(b/sqrt(1+x^2))/sqrt(1+x^2), reducing the double
/// integral to one adaptive pass.
inline EvalResult quad_h2d(double a, double b,
                           const QuadratureControl& qctl = {}) {
    if (!(a > 0.0)) throw domain_error("a > 0");
    if (!(b > 0.0)) throw domain_error("b > 0");
    auto integrand = [b](double x) {
        const double s = std::sqrt(1.0 + x * x);
        return std::atan(b / s) / s;
    };
    return detail::adaptive_integrate(integrand, 0.0, a, qctl);
}

/// Direct quadrature of the defining integral of H.  For lambda in (-1, 0)
/// the x^lambda endpoint singularity is removed on the first subinterval by
/// the power substitution x = t^q, q = 2/(lambda+1), under which
/// x^lambda dx = q t dt.
inline EvalResult quad_h_general(const HubbellParams& params,
                                 const QuadratureControl& qctl = {}) {
    const unsigned warnings = validate(params);
    const SeriesControl inner_ctl{}; // integrand accuracy independent of qctl
    const double a = params.a, p = params.p;
    const double lam = params.lambda, al = params.alpha;
    const double be = params.beta, ga = params.gamma;
    auto smooth_factor = [&](double x) {
        return std::pow(x * x + p, -al) *
               hyp2f1(al, be, ga, -a * a / (x * x + p), inner_ctl).value;
    };

    EvalResult r;
    if (lam < 0.0) {
        const double split = std::min(params.b, std::sqrt(p));
        const double q = 2.0 / (lam + 1.0);
        auto left = [&](double t) {
            const double x = std::pow(t, q);
            return q * t * smooth_factor(x);
        };
        r = detail::adaptive_integrate(left, 0.0, std::pow(split, 1.0 / q), qctl);
        if (params.b > split) {
            auto right = [&](double x) { return std::pow(x, lam) * smooth_factor(x); };
            EvalResult rest = detail::adaptive_integrate(right, split, params.b, qctl);
            r.value += rest.value;
            r.est_error += rest.est_error;
            r.terms_used += rest.terms_used;
            r.converged = r.converged && rest.converged;
        }
    } else {
        auto integrand = [&](double x) { return std::pow(x, lam) * smooth_factor(x); };
        r = detail::adaptive_integrate(integrand, 0.0, params.b, qctl);
    }
    r = detail::scale_result(r, params.sigma * a / (4.0 * std::numbers::pi));
    r.warnings = warnings;
    return r;
}

} // namespace hubbell
