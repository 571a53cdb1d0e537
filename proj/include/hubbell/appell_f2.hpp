// Appell hypergeometric function F2(s; a1, a2; b1, b2; x, y):
//
//   F2 = sum_{m,n>=0} (s)_{m+n} (a1)_m (a2)_n / ((b1)_m (b2)_n m! n!) x^m y^n,
//
// convergent for |x| + |y| < 1.  Besides the reference double series this
// header provides the reduction to 2F1 on the degenerate slice a2 = b2, the
// contiguous recurrence that shifts a2 by an integer, and the finite sum of
// 2F1 terms that the shift produces for the rectangular-source parameter
// family -- the production path of the H evaluator.
#pragma once

#include <cmath>

#include "hubbell/series.hpp"
#include "hubbell/special.hpp"

namespace hubbell {

/// Parameters and arguments of F2.
struct F2Args {
    double sigma; ///< first numerator parameter
    double a1;    ///< second-slot numerator parameters
    double a2;
    double b1;    ///< denominator parameters
    double b2;
    double x;     ///< arguments
    double y;
};

namespace detail {

inline void validate_f2_denominators(const F2Args& args) {
    if (is_nonpositive_integer(args.b1))
        throw domain_error("b1 must not be a non-positive integer");
    if (is_nonpositive_integer(args.b2))
        throw domain_error("b2 must not be a non-positive integer");
}

} // namespace detail

/// Reference double series, summed over anti-diagonals m + n = s in
/// increasing s.  A whole anti-diagonal is one increment; its absolute
/// contribution sum |term| drives the stopping rule, so cancellation inside
/// a diagonal cannot fake convergence.  max_terms caps the diagonal count.
inline EvalResult f2_double_series(const F2Args& args, const SeriesControl& ctl = {}) {
    ctl.validate();
    detail::validate_f2_denominators(args);
    if (!(std::fabs(args.x) + std::fabs(args.y) < 1.0))
        throw domain_error("|x| + |y| < 1");

    detail::series_accumulator acc(ctl);

    // An argument on an axis leaves a single Gauss-type series.
    if (args.x == 0.0 || args.y == 0.0) {
        const bool along_x = (args.y == 0.0);
        const double arg = along_x ? args.x : args.y;
        const double num = along_x ? args.a1 : args.a2;
        const double den = along_x ? args.b1 : args.b2;
        double term = 1.0;
        for (std::size_t k = 0; acc.terms() < ctl.max_terms; ++k) {
            if (acc.add(term)) break;
            const double dk = static_cast<double>(k);
            term *= (args.sigma + dk) * (num + dk) / ((den + dk) * (dk + 1.0)) * arg;
        }
        return acc.result(Method::DoubleSeries);
    }

    // Both second-slot parameters non-positive integers: a finite double
    // polynomial; build the few terms directly.
    const bool a1_npi = detail::is_nonpositive_integer(args.a1);
    const bool a2_npi = detail::is_nonpositive_integer(args.a2);
    if (a1_npi && a2_npi) {
        const std::size_t m_max = static_cast<std::size_t>(-args.a1);
        const std::size_t n_max = static_cast<std::size_t>(-args.a2);
        for (std::size_t s = 0; acc.terms() < ctl.max_terms; ++s) {
            double diag = 0.0;
            double diag_mag = 0.0;
            for (std::size_t m = 0; m <= s && m <= m_max; ++m) {
                const std::size_t n = s - m;
                if (n > n_max) continue;
                const double t = pochhammer(args.sigma, s) * pochhammer(args.a1, m) *
                                 pochhammer(args.a2, n) /
                                 (pochhammer(args.b1, m) * pochhammer(args.b2, n) *
                                  pochhammer(1.0, m) * pochhammer(1.0, n)) *
                                 std::pow(args.x, static_cast<double>(m)) *
                                 std::pow(args.y, static_cast<double>(n));
                diag += t;
                diag_mag += std::fabs(t);
            }
            if (acc.add(diag, diag_mag)) break;
        }
        return acc.result(Method::DoubleSeries);
    }

    // Each diagonal is walked from one corner with term ratios, keeping
    // every intermediate on the scale of the diagonal itself.  Factoring
    // (sigma)_s out instead would overflow near s ~ 170 long before slow
    // mixed-sign diagonals satisfy the absolute-contribution criterion.
    // The corner must sit on a side whose rising factorial never vanishes;
    // otherwise prefer the larger argument.
    bool from_x = std::fabs(args.x) >= std::fabs(args.y);
    if (a1_npi)
        from_x = false;
    else if (a2_npi)
        from_x = true;
    const double q = from_x ? args.y / args.x : args.x / args.y;
    const double base_arg = from_x ? args.x : args.y;
    const double base_num = from_x ? args.a1 : args.a2;
    const double base_den = from_x ? args.b1 : args.b2;
    const double walk_num = from_x ? args.a2 : args.a1;
    const double walk_den = from_x ? args.b2 : args.b1;
    double corner = 1.0; // (sigma)_s (base_num)_s base_arg^s / ((base_den)_s s!)
    for (std::size_t s = 0; acc.terms() < ctl.max_terms; ++s) {
        if (s > 0) {
            const double ds = static_cast<double>(s);
            corner *= (args.sigma + ds - 1.0) * (base_num + ds - 1.0) /
                      ((base_den + ds - 1.0) * ds) * base_arg;
        }
        double term = corner;
        double diag = term;
        double diag_mag = std::fabs(term);
        for (std::size_t j = 1; j <= s; ++j) {
            const double dj = static_cast<double>(j);      // index on the walk side
            const double dk = static_cast<double>(s - j);  // remaining base-side index
            term *= (walk_num + dj - 1.0) * (base_den + dk) * (dk + 1.0) /
                    ((walk_den + dj - 1.0) * (base_num + dk) * dj) * q;
            diag += term;
            diag_mag += std::fabs(term);
        }
        if (acc.add(diag, diag_mag)) break;
    }
    return acc.result(Method::DoubleSeries);
}

/// Degenerate-slice reduction, requires a2 = b2 exactly:
///   F2(s; a1, b2; b1, b2; x, y) = (1-y)^(-s) 2F1(s, a1; b1; x/(1-y)).
inline EvalResult f2_reduce_to_2f1(const F2Args& args, const SeriesControl& ctl = {}) {
    ctl.validate();
    detail::validate_f2_denominators(args);
    if (args.a2 != args.b2) throw domain_error("a2 == b2");
    if (!(args.y < 1.0)) throw domain_error("y < 1");
    const double prefactor = std::pow(1.0 - args.y, -args.sigma);
    EvalResult inner = hyp2f1(args.sigma, args.a1, args.b1,
                              args.x / (1.0 - args.y), ctl);
    EvalResult r = inner;
    r.value = prefactor * inner.value;
    r.est_error = std::fabs(prefactor) * inner.est_error;
    detail::enforce_convergence_contract(r, ctl.rel_tol);
    return r;
}

/// Right-hand side of the a2-shift recurrence
///   F2(s; a1, a2-n; b1, b2; x, y)
///     = F2(s; a1, a2; b1, b2; x, y)
///       - (s y / b2) sum_{k=1..n} F2(s+1; a1, a2-k+1; b1, b2+1; x, y),
/// every F2 evaluated by the double series.  Identity-test oracle, not used
/// on the production path.
inline EvalResult f2_recurrence_step(const F2Args& args, std::size_t n,
                                     const SeriesControl& ctl = {}) {
    ctl.validate();
    EvalResult base = f2_double_series(args, ctl);
    const double coef = -args.sigma * args.y / args.b2;
    detail::neumaier_sum sum;
    sum.add(base.value);
    EvalResult r;
    r.terms_used = base.terms_used;
    r.est_error = base.est_error;
    r.converged = base.converged;
    for (std::size_t k = 1; k <= n; ++k) {
        F2Args shifted = args;
        shifted.sigma = args.sigma + 1.0;
        shifted.a2 = args.a2 - static_cast<double>(k) + 1.0;
        shifted.b2 = args.b2 + 1.0;
        EvalResult part = f2_double_series(shifted, ctl);
        sum.add(coef * part.value);
        r.terms_used += part.terms_used;
        r.est_error += std::fabs(coef) * part.est_error;
        r.converged = r.converged && part.converged;
    }
    r.value = sum.value();
    r.method = Method::Recurrence;
    detail::enforce_convergence_contract(r, ctl.rel_tol);
    return r;
}

/// Adaptive finite sum for
///   F2(alpha; beta, (lambda+1)/2; gamma, (lambda+3)/2; -a^2/p, -b^2/p)
///     ~ sum_{k=0..n} (alpha)_k / ((3+lambda)/2)_k (b^2/p)^k
///       (1+b^2/p)^(-alpha-k) 2F1(alpha+k, beta; gamma; -a^2/(p+b^2)).
///
/// n grows until `consecutive_passes` successive increments each satisfy
/// |H_{n+1} - H_n| < rel_tol |H_n|.  Every summand is positive, so partial
/// sums increase monotonically and the last increment bounds the truncation
/// error up to the geometric-ratio factor (b^2/p)/(1+b^2/p).
inline EvalResult f2_finite_sum(double alpha, double beta, double gamma,
                                double lambda, double a, double b, double p,
                                const SeriesControl& ctl = {}) {
    ctl.validate();
    if (!(a >= 0.0)) throw domain_error("a >= 0");
    if (!(b > 0.0)) throw domain_error("b > 0");
    if (!(p > 0.0)) throw domain_error("p > 0");
    if (!(beta > 0.0) || !(gamma > beta)) throw domain_error("gamma > beta > 0");
    if (detail::is_nonpositive_integer((3.0 + lambda) / 2.0))
        throw domain_error("(3 + lambda)/2 must not be a non-positive integer");

    const double r = b * b / p;
    const double ratio = r / (1.0 + r);
    const double z = -a * a / (p + b * b);
    double coef = std::pow(1.0 + r, -alpha); // (alpha)_k/((3+l)/2)_k r^k (1+r)^(-alpha-k)
    detail::series_accumulator acc(ctl);
    bool inner_ok = true;
    for (std::size_t k = 0; acc.terms() < ctl.max_terms; ++k) {
        const double dk = static_cast<double>(k);
        EvalResult f = hyp2f1(alpha + dk, beta, gamma, z, ctl);
        inner_ok = inner_ok && f.converged;
        if (acc.add(coef * f.value)) break;
        coef *= (alpha + dk) / ((3.0 + lambda) / 2.0 + dk) * ratio;
    }
    EvalResult res = acc.result(Method::FiniteSum);
    res.converged = res.converged && inner_ok;
    return res;
}

} // namespace hubbell
