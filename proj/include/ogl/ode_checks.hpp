#pragma once

// Residuals of candidate solutions and the decay envelope of y'' + V y = 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ogl/equation.hpp"
#include "ogl/integrator.hpp"

namespace ogl {

namespace detail {

/// log(e^a + e^b + ...) without overflow.
inline double log_sum_exp(std::initializer_list<double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (std::isinf(m)) return m;
    double s = 0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace detail

/// |f'' + A f' + B f - H| / (1 + |f''| + |A f'| + |B f|), all in log-polar form.
inline double relative_residual(LogPolar f2, LogPolar af1, LogPolar bf, LogPolar h) {
    const LogPolar terms[] = {f2, af1, bf, -h};
    const double num = log_polar_sum(terms).log_magnitude;
    const double den =
        detail::log_sum_exp({0.0, f2.log_magnitude, af1.log_magnitude, bf.log_magnitude});
    return std::exp(num - den);
}

/// Maximum relative residual of `candidate` over `points`.
inline double residual_check(const CoeffExpr& candidate, const EquationSpec& spec, const std::vector<Complex>& points) {
    const CompiledExpr f(candidate), f1(differentiate(candidate)), f2(differentiate(differentiate(candidate)));
    const CompiledExpr a(spec.A), b(spec.B);
    const CompiledExpr h = spec.H ? CompiledExpr(*spec.H) : CompiledExpr{};
    double worst = 0.0;
    for (Complex z : points) worst = std::max(worst, relative_residual(f2(z), a(z) * f1(z), b(z) * f(z), h(z)));
    return worst;
}

/// Time windows compared by check_decay_on_ray.
struct DecayWindows {
    double head_lo, head_hi, tail_lo, tail_hi;

    /// First and last `fraction` of [t0, t1].
    static DecayWindows fractions(double t0, double t1, double fraction = 0.1) {
        const double w = (t1 - t0) * fraction;
        return {t0, t0 + w, t1 - w, t1};
    }
};

struct DecayReport {
    double head_log_envelope = 0;
    double tail_log_envelope = 0;
    /// tail envelope / head envelope
    double ratio = 0;
    /// sup over the tail window of the non-polynomial part of the potential
    double tail_exp_part_sup = 0;
    DecayWindows windows{};
};

/// Integrates y'' + V y = 0 for the bases (1,0) and (0,1) at the window start
/// and compares the amplitude sqrt(|y|^2 + |y'|^2/|V|) between the windows.
inline DecayReport check_decay_on_ray(const CoeffExpr& potential, double theta, const DecayWindows& w,
                                      const IntegratorConfig& config = {}, std::size_t samples_per_window = 400) {
    if (!(w.head_lo < w.head_hi && w.head_hi <= w.tail_lo && w.tail_lo < w.tail_hi) || w.head_lo < 0)
        throw std::invalid_argument("check_decay_on_ray: windows must be ordered and nonnegative");
    if (samples_per_window < 2) throw std::invalid_argument("check_decay_on_ray: need at least 2 samples per window");

    std::vector<double> stops;
    const std::size_t n = samples_per_window;
    for (std::size_t k = 1; k < n; ++k) stops.push_back(w.head_lo + (w.head_hi - w.head_lo) * double(k) / double(n - 1));
    for (std::size_t k = 0; k < n; ++k) {
        double t = w.tail_lo + (w.tail_hi - w.tail_lo) * double(k) / double(n - 1);
        if (t > stops.back()) stops.push_back(t);
    }

    const CompiledExpr v(potential);
    LinearCoefficients coeffs{CompiledExpr{}, v, CompiledExpr{}};
    const Complex dir = std::polar(1.0, theta);

    std::vector<ExpTerm> exp_part;
    for (auto& t : expand_terms(potential))
        if (!t.exponent.is_zero()) exp_part.push_back(t);
    const CompiledExpr exp_expr(exp_part.empty() ? CoeffExpr{} : [&] {
        std::vector<CoeffExpr> parts;
        for (const auto& t : exp_part) parts.push_back(term_to_expr(t));
        return CoeffExpr::sum(std::move(parts));
    }());

    DecayReport out;
    out.windows = w;
    out.head_log_envelope = out.tail_log_envelope = -std::numeric_limits<double>::infinity();
    double exp_sup_log = -std::numeric_limits<double>::infinity();
    for (auto init : {std::array<Complex, 2>{1.0, 0.0}, std::array<Complex, 2>{0.0, 1.0}}) {
        auto samples = integrate_linear_ray(coeffs, theta, w.head_lo, w.tail_hi, init, config, stops);
        for (const auto& s : samples) {
            const double log_v = std::max(v(s.t * dir).log_magnitude, -690.0);
            const double amp = 0.5 * detail::log_sum_exp({2 * s.log_abs_f, 2 * s.log_abs_fprime - log_v});
            if (s.t <= w.head_hi) out.head_log_envelope = std::max(out.head_log_envelope, amp);
            if (s.t >= w.tail_lo) {
                out.tail_log_envelope = std::max(out.tail_log_envelope, amp);
                exp_sup_log = std::max(exp_sup_log, exp_expr(s.t * dir).log_magnitude);
            }
        }
    }
    out.ratio = std::exp(out.tail_log_envelope - out.head_log_envelope);
    out.tail_exp_part_sup = std::exp(exp_sup_log);
    return out;
}

}  // namespace ogl
