// Shared plumbing for every truncated-series evaluation in the library:
// tolerance controls, the common result record, and compensated summation
// with the two-consecutive-small-increments stopping rule.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hubbell {

/// Thrown on precondition violations; the message names the failing
/// constraint (e.g. "p > 0").
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& constraint)
        : std::domain_error(constraint) {}
};

/// How a value was obtained.  Recorded in every EvalResult.
enum class Method {
    Series,       ///< direct power series
    Pfaff,        ///< series after the Pfaff argument transformation
    LargeZ,       ///< inverse-argument expansion for deeply negative z
    FiniteSum,    ///< adaptive finite sum of 2F1 terms
    ClosedForm,   ///< closed-form expression
    Quadrature,   ///< adaptive numerical integration
    DoubleSeries, ///< Appell F2 double power series
    Recurrence    ///< recurrence-identity combination of F2 values
};

constexpr std::string_view method_name(Method m) {
    switch (m) {
        case Method::Series:       return "Series";
        case Method::Pfaff:        return "Pfaff";
        case Method::LargeZ:       return "LargeZ";
        case Method::FiniteSum:    return "FiniteSum";
        case Method::ClosedForm:   return "ClosedForm";
        case Method::Quadrature:   return "Quadrature";
        case Method::DoubleSeries: return "DoubleSeries";
        case Method::Recurrence:   return "Recurrence";
    }
    return "Unknown";
}

/// Non-fatal conditions attached to a result as a bitmask.
namespace warning {
inline constexpr unsigned geometry_order = 1u << 0; ///< a > b (width/length convention)
inline constexpr unsigned lambda_range   = 1u << 1; ///< lambda >= 2*alpha - 1
}

inline std::string warning_text(unsigned bits) {
    std::string s;
    if (bits & warning::geometry_order) s += "a > b violates the 0 < a <= b geometry convention; ";
    if (bits & warning::lambda_range) s += "lambda >= 2*alpha - 1: the infinite-b integral would diverge; ";
    if (!s.empty()) s.resize(s.size() - 2);
    return s;
}

/// Stopping policy for truncated series.
struct SeriesControl {
    double rel_tol = 1e-15;               ///< relative tolerance
    std::size_t max_terms = 10'000;       ///< hard cap on accumulated terms
    std::size_t consecutive_passes = 2;   ///< successive small increments required

    void validate() const {
        if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
            throw domain_error("0 < rel_tol < 1");
        if (max_terms < 1) throw domain_error("max_terms >= 1");
        if (consecutive_passes < 1) throw domain_error("consecutive_passes >= 1");
    }
};

/// Computed value plus convergence diagnostics.
struct EvalResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double est_error = 0.0;   ///< absolute, last-increment magnitude
    bool converged = false;
    Method method = Method::Series;
    unsigned warnings = 0;
};

namespace detail {

/// Neumaier-compensated accumulator.
class neumaier_sum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double magnitude_floor() { return std::numeric_limits<double>::min(); }

/// Forward accumulation with the stopping rule: done once
/// `consecutive_passes` successive increments each satisfy
/// |increment| <= rel_tol * |partial sum|.
class series_accumulator {
public:
    explicit series_accumulator(const SeriesControl& ctl)
        : ctl_(ctl) {}

    /// Add one increment; `magnitude` may overstate |increment| (used by the
    /// double series, where a whole anti-diagonal is one increment but its
    /// terms are tested by absolute contribution).  Returns true once the
    /// stopping rule is met.
    bool add(double increment, double magnitude) {
        sum_.add(increment);
        ++terms_;
        last_ = magnitude;
        peak_ = std::max(peak_, magnitude);
        if (!std::isfinite(sum_.value()) || !std::isfinite(magnitude)) {
            streak_ = 0;
            finite_ = false;
            return false;
        }
        if (magnitude <= ctl_.rel_tol * std::max(std::fabs(sum_.value()), magnitude_floor()))
            ++streak_;
        else
            streak_ = 0;
        if (streak_ >= ctl_.consecutive_passes) stopped_ = true;
        return stopped_;
    }
    bool add(double increment) { return add(increment, std::fabs(increment)); }

    double value() const { return sum_.value(); }
    std::size_t terms() const { return terms_; }
    double last_increment() const { return last_; }
    bool stopped() const { return stopped_ && finite_; }

    EvalResult result(Method m) const {
        EvalResult r;
        r.value = value();
        r.terms_used = terms_;
        r.est_error = last_;
        // A sum that cancelled through much larger intermediates carries a
        // rounding error near eps * peak regardless of how small the final
        // increments were; refuse to call that converged.
        const double rounding = std::numeric_limits<double>::epsilon() * peak_;
        r.converged = stopped() &&
                      rounding <= 8.0 * ctl_.rel_tol *
                          std::max(std::fabs(r.value), magnitude_floor());
        r.method = m;
        return r;
    }

private:
    SeriesControl ctl_;
    neumaier_sum sum_;
    std::size_t terms_ = 0;
    std::size_t streak_ = 0;
    double last_ = 0.0;
    double peak_ = 0.0;
    bool stopped_ = false;
    bool finite_ = true;
};

/// Re-check the converged flag of a composite result against the
/// EvalResult contract: converged implies
/// est_error <= rel_tol * max(|value|, floor).
inline void enforce_convergence_contract(EvalResult& r, double rel_tol) {
    if (r.converged &&
        !(r.est_error <= rel_tol * std::max(std::fabs(r.value), magnitude_floor())))
        r.converged = false;
    if (!std::isfinite(r.value)) r.converged = false;
}

} // namespace detail
} // namespace hubbell
