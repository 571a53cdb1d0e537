// Scalar special functions: the Pochhammer symbol and the Gauss
// hypergeometric function 2F1 for real parameters and non-positive real
// argument, the only regime the rectangular-source integrals generate.
//
// 2F1 evaluation strategy by argument:
//   -0.5 <  z <= 0   direct power series
//   -64  <= z <= -0.5 Pfaff transformation
//           (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)) with a,b ordered so the
//           retained exponent is min(a,b), which makes the transformed
//           series terms decay like m^(min-max-1) * w^m
//    z < -64          inverse-argument expansion in powers of 1/z,
//           used when a-b is safely non-integer; otherwise Pfaff again
//           (slow but convergent)
// One override: when the larger parameter u = max(a,b) satisfies
// u |z|/(1+|z|) > 2, the alternating growth of the direct and retained-min
// series destroys digits, so the Pfaff form that keeps u inside the series
// (all terms nonnegative for 0 < min(a,b) <= c) is used instead.
#pragma once

#include <algorithm>
#include <cmath>

#include "hubbell/series.hpp"

namespace hubbell {

/// Rising factorial (alpha)_k by iterated product.  Overflow is reported by
/// a non-finite return, never an exception.
inline double pochhammer(double alpha, std::size_t k) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= alpha + static_cast<double>(i);
    return p;
}

namespace detail {

inline bool is_nonpositive_integer(double x, double tol = 0.0) {
    if (x > tol) return false;
    return std::fabs(x - std::round(x)) <= tol;
}

inline bool is_near_integer(double x, double tol) {
    return std::fabs(x - std::round(x)) <= tol;
}

/// Direct Gauss series sum_k (a)_k (b)_k / ((c)_k k!) z^k.
inline EvalResult hyp2f1_direct(double a, double b, double c, double z,
                                const SeriesControl& ctl) {
    series_accumulator acc(ctl);
    double term = 1.0;
    std::size_t k = 0;
    while (acc.terms() < ctl.max_terms) {
        if (acc.add(term)) break;
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * z;
        ++k;
    }
    return acc.result(Method::Series);
}

/// 2F1 - 1 by direct series (the k >= 1 tail).  Avoids the cancellation of
/// subtracting near-unit 2F1 values; valid for |z| well inside the unit disc.
inline EvalResult hyp2f1_m1_direct(double a, double b, double c, double z,
                                   const SeriesControl& ctl) {
    series_accumulator acc(ctl);
    double term = a * b / c * z;
    std::size_t k = 1;
    while (acc.terms() < ctl.max_terms) {
        if (acc.add(term)) break;
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * z;
        ++k;
    }
    return acc.result(Method::Series);
}

inline EvalResult hyp2f1_pfaff(double a, double b, double c, double z,
                               const SeriesControl& ctl) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double w = z / (z - 1.0);
    const double prefactor = std::pow(1.0 - z, -lo);
    EvalResult inner = hyp2f1_direct(lo, c - hi, c, w, ctl);
    EvalResult r;
    r.value = prefactor * inner.value;
    r.terms_used = inner.terms_used;
    r.est_error = std::fabs(prefactor) * inner.est_error;
    r.converged = inner.converged;
    r.method = Method::Pfaff;
    enforce_convergence_contract(r, ctl.rel_tol);
    return r;
}

/// Pfaff transformation keeping the larger numerator parameter u inside:
///   2F1(u,v;c;z) = sum_m (1-z)^(-u) (u)_m (c-v)_m / ((c)_m m!) w^m,
/// with the prefactor folded into the leading term.  For 0 < v <= c and
/// z <= 0 every term is nonnegative, so a large u costs no cancellation and
/// intermediates stay on the scale of the result; the retained-min variant
/// and the direct series both blow up like (1+w)^u there.
inline EvalResult hyp2f1_pfaff_big(double a, double b, double c, double z,
                                   const SeriesControl& ctl) {
    const double u = std::max(a, b);
    const double v = std::min(a, b);
    const double w = z / (z - 1.0);
    series_accumulator acc(ctl);
    double term = std::pow(1.0 - z, -u);
    if (term == 0.0 || !std::isfinite(term)) {
        EvalResult r;
        r.method = Method::Pfaff;
        r.value = term;
        return r; // out of double range; reported as not converged
    }
    std::size_t m = 0;
    while (acc.terms() < ctl.max_terms) {
        if (acc.add(term)) break;
        const double dm = static_cast<double>(m);
        term *= (u + dm) * (c - v + dm) / ((c + dm) * (dm + 1.0)) * w;
        ++m;
    }
    EvalResult r = acc.result(Method::Pfaff);
    enforce_convergence_contract(r, ctl.rel_tol);
    return r;
}

/// Inverse-argument expansion
///   2F1(a,b;c;z) = G(c)G(b-a)/(G(b)G(c-a)) (-z)^-a 2F1(a,a-c+1;a-b+1;1/z)
///                + G(c)G(a-b)/(G(a)G(c-b)) (-z)^-b 2F1(b,b-c+1;b-a+1;1/z).
/// Caller guarantees a-b is not (near) an integer.  When c-a or c-b is a
/// non-positive integer, the Gamma pole in that term's denominator removes
/// the whole term.
inline EvalResult hyp2f1_largez(double a, double b, double c, double z,
                                const SeriesControl& ctl) {
    const double zi = 1.0 / z;
    EvalResult r;
    r.method = Method::LargeZ;
    r.converged = true;
    for (int swap = 0; swap < 2; ++swap) {
        const double u = swap ? b : a;
        const double v = swap ? a : b;
        if (is_nonpositive_integer(c - u)) continue;
        const double coef = std::tgamma(c) * std::tgamma(v - u) /
                            (std::tgamma(v) * std::tgamma(c - u)) * std::pow(-z, -u);
        EvalResult part = hyp2f1_direct(u, u - c + 1.0, u - v + 1.0, zi, ctl);
        r.value += coef * part.value;
        r.terms_used += part.terms_used;
        r.est_error += std::fabs(coef) * part.est_error;
        r.converged = r.converged && part.converged;
    }
    enforce_convergence_contract(r, ctl.rel_tol);
    return r;
}

} // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0; c must not be a
/// non-positive integer.  The result's method label records which evaluation
/// path ran.
inline EvalResult hyp2f1(double alpha, double beta, double gamma, double z,
                         const SeriesControl& ctl = {}) {
    ctl.validate();
    if (detail::is_nonpositive_integer(gamma))
        throw domain_error("gamma must not be a non-positive integer");
    if (!(z <= 0.0)) throw domain_error("z <= 0");
    if (z == 0.0) return detail::hyp2f1_direct(alpha, beta, gamma, z, ctl);

    const double u = std::max(alpha, beta);
    const double v = std::min(alpha, beta);
    const double w = z / (z - 1.0);
    // Terminating series (alpha or beta a non-positive integer) stay exact
    // under Pfaff: the transformed series terminates as well.
    const bool polynomial = detail::is_nonpositive_integer(alpha) ||
                            detail::is_nonpositive_integer(beta);
    if (!polynomial) {
        if (z < -64.0 && !detail::is_near_integer(alpha - beta, 1e-3) &&
            -z >= 4.0 * u)
            return detail::hyp2f1_largez(alpha, beta, gamma, z, ctl);
        // Large first parameter: the alternating growth of the direct and
        // retained-min series loses digits like exp(u w); switch to the
        // cancellation-free variant unless the retained-min series
        // terminates after a few exact terms.  gamma slightly below v still
        // works: the handful of sign flips from (gamma-v)_m is dwarfed by
        // the all-positive bell that follows.
        const bool short_polynomial =
            detail::is_nonpositive_integer(gamma - u) && u - gamma <= 8.0;
        if (v > 0.0 && gamma >= v - 8.0 && u * w > 2.0 && !short_polynomial)
            return detail::hyp2f1_pfaff_big(alpha, beta, gamma, z, ctl);
    }

    if (z > -0.5) return detail::hyp2f1_direct(alpha, beta, gamma, z, ctl);
    return detail::hyp2f1_pfaff(alpha, beta, gamma, z, ctl);
}

} // namespace hubbell
