#pragma once

// Dormand-Prince 5(4) integration of f'' + A f' + B f = H along the ray
// z = t e^{i theta}. The state (f, f') is kept as plain complex numbers times
// a running factor e^{S}; whenever the largest log-magnitude leaves
// [-threshold, threshold] the state is renormalized by a power of two and S
// absorbs the change.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogl/equation.hpp"
#include "ogl/expr.hpp"

namespace ogl {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    /// Absolute error floor, relative to the current state norm.
    double abs_floor = 1e-14;
    double max_step = 0.25;
    double rescale_threshold = 200.0;
    double initial_step = 1e-3;
    double min_step = 1e-13;
    std::size_t max_steps = 20'000'000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) throw std::invalid_argument("rel_tol must lie in (0, 1e-4]");
        if (!(abs_floor >= 0.0)) throw std::invalid_argument("abs_floor must be nonnegative");
        if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
        if (!(rescale_threshold > 1.0 && rescale_threshold < kOverflowLog))
            throw std::invalid_argument("rescale_threshold must lie in (1, 709)");
        if (!(initial_step > 0.0) || !(min_step > 0.0)) throw std::invalid_argument("step sizes must be positive");
    }
};

struct RaySample {
    double t = 0;
    double log_abs_f = 0;
    double phase_f = 0;
    double log_abs_fprime = 0;
    double phase_fprime = 0;
    double accumulated_rescale = 0;

    LogPolar f() const { return LogPolar::from_parts(log_abs_f, phase_f); }
    LogPolar fprime() const { return LogPolar::from_parts(log_abs_fprime, phase_fprime); }
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_good_t)
        : std::runtime_error(what + " (last good t = " + std::to_string(last_good_t) + ")"), last_good_t_(last_good_t) {}
    double last_good_t() const { return last_good_t_; }

private:
    double last_good_t_;
};

/// Expression flattened to sum_k p_k(z) e^{E_k(z)} for fast repeated evaluation.
class CompiledExpr {
public:
    CompiledExpr() = default;
    explicit CompiledExpr(const CoeffExpr& e) : terms_(expand_terms(e)) {}

    bool is_zero() const { return terms_.empty(); }

    LogPolar operator()(Complex z) const {
        if (terms_.empty()) return LogPolar::zero();
        if (terms_.size() == 1) return term(terms_.front(), z);
        std::array<LogPolar, 16> small;
        std::vector<LogPolar> large;
        std::span<LogPolar> buf;
        if (terms_.size() <= small.size()) {
            buf = std::span<LogPolar>(small.data(), terms_.size());
        } else {
            large.resize(terms_.size());
            buf = large;
        }
        for (std::size_t k = 0; k < terms_.size(); ++k) buf[k] = term(terms_[k], z);
        return log_polar_sum(buf);
    }

private:
    static LogPolar term(const ExpTerm& t, Complex z) {
        auto p = LogPolar::from_complex(t.coefficient(z));
        if (t.exponent.is_zero()) return p;
        return p * LogPolar::exp_of(t.exponent(z));
    }

    std::vector<ExpTerm> terms_;
};

/// Coefficients of f'' + a f' + b f = h as seen by the stepper.
struct LinearCoefficients {
    CompiledExpr a, b, h;
};

inline LinearCoefficients compile(const EquationSpec& spec) {
    return {CompiledExpr(spec.A), CompiledExpr(spec.B), spec.H ? CompiledExpr(*spec.H) : CompiledExpr{}};
}

namespace detail {

using State = std::array<Complex, 2>;

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

inline Complex scaled_value(const LogPolar& v, double shift, double t) {
    const double lm = v.log_magnitude - shift;
    if (lm > kOverflowLog)
        throw IntegrationError("coefficient overflows the complex channel (log|.| = " + std::to_string(lm) + ")", t);
    return v.to_complex_scaled(shift);
}

class RayStepper {
public:
    RayStepper(const LinearCoefficients& c, double theta) : c_(c), dir_(std::polar(1.0, theta)) {}

    /// d/dt of the scaled state at parameter t; `scale` is the running log factor S.
    State rhs(double t, const State& y, double scale) const {
        const Complex z = t * dir_;
        const Complex a = scaled_value(c_.a(z), 0.0, t);
        const Complex b = scaled_value(c_.b(z), 0.0, t);
        Complex h{};
        if (!c_.h.is_zero()) {
            auto hv = c_.h(z);
            // scaled forcing H e^{-S}; negligible once it drops below double range
            if (hv.log_magnitude - scale > -745.0) h = scaled_value(hv, scale, t);
        }
        return {dir_ * y[1], dir_ * (h - a * y[1] - b * y[0])};
    }

private:
    const LinearCoefficients& c_;
    Complex dir_;
};

inline double max_abs(const State& y) { return std::max(std::abs(y[0]), std::abs(y[1])); }

inline RaySample make_sample(double t, const State& y, double scale) {
    auto f = LogPolar::from_complex(y[0]);
    auto fp = LogPolar::from_complex(y[1]);
    return {t, f.log_magnitude + scale, f.phase, fp.log_magnitude + scale, fp.phase, scale};
}

}  // namespace detail

/// Integrates the linear system along z = t e^{i theta} from t0 to t1 with
/// (f, f')(t0) = init. When `stops` is empty every accepted step is recorded;
/// otherwise only t0 and the stop points (clamped into (t0, t1]) are.
inline std::vector<RaySample> integrate_linear_ray(const LinearCoefficients& coeffs, double theta, double t0,
                                                   double t1, std::array<Complex, 2> init,
                                                   const IntegratorConfig& config,
                                                   const std::vector<double>& stops = {}, double init_log_scale = 0.0) {
    using namespace detail;
    config.validate();
    if (!(t1 > t0) || !(t0 >= 0.0)) throw std::invalid_argument("integrate_ray: requires t1 > t0 >= 0");
    if (!std::is_sorted(stops.begin(), stops.end())) throw std::invalid_argument("integrate_ray: stops must be sorted");

    RayStepper stepper(coeffs, theta);
    State y = init;
    double scale = init_log_scale;
    double t = t0;

    auto renormalize = [&] {
        const double m = max_abs(y);
        if (m == 0.0 || !std::isfinite(m)) return;
        const double lm = std::log(m);
        if (std::abs(lm) <= config.rescale_threshold) return;
        const int k = static_cast<int>(std::lround(lm / std::numbers::ln2));
        for (auto& v : y) v = Complex(std::ldexp(v.real(), -k), std::ldexp(v.imag(), -k));
        scale += k * std::numbers::ln2;
    };
    renormalize();

    std::vector<RaySample> out;
    out.push_back(make_sample(t, y, scale));

    std::vector<double> targets;
    for (double s : stops)
        if (s > t0 && s <= t1 && (targets.empty() || s > targets.back())) targets.push_back(s);
    const bool record_all = stops.empty();
    const std::size_t recorded_stops = targets.size();
    if (targets.empty() || targets.back() < t1) targets.push_back(t1);
    std::size_t next = 0;

    double h = std::min(config.initial_step, config.max_step);
    double err_prev = 1e-4;
    State k1 = stepper.rhs(t, y, scale);
    std::size_t steps = 0;

    while (next < targets.size()) {
        const double target = targets[next];
        bool hit = false;
        double step = std::min(h, config.max_step);
        if (t + step >= target) {
            step = target - t;
            hit = true;
        }
        if (step < config.min_step && !hit)
            throw IntegrationError("step size underflow", t);
        if (++steps > config.max_steps) throw IntegrationError("step budget exhausted", t);

        State k2, k3, k4, k5, k6, k7, y5;
        auto comb = [&](std::initializer_list<std::pair<double, const State*>> parts) {
            State r = y;
            for (auto [w, k] : parts) {
                r[0] += step * w * (*k)[0];
                r[1] += step * w * (*k)[1];
            }
            return r;
        };
        k2 = stepper.rhs(t + c2 * step, comb({{a21, &k1}}), scale);
        k3 = stepper.rhs(t + c3 * step, comb({{a31, &k1}, {a32, &k2}}), scale);
        k4 = stepper.rhs(t + c4 * step, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}), scale);
        k5 = stepper.rhs(t + c5 * step, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), scale);
        k6 = stepper.rhs(t + step, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), scale);
        y5 = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        k7 = stepper.rhs(t + step, y5, scale);

        const double norm = std::max(max_abs(y), max_abs(y5));
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const Complex e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = config.abs_floor * norm + config.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double ratio = sc > 0 ? std::abs(e) / sc : (std::abs(e) > 0 ? std::numeric_limits<double>::infinity() : 0.0);
            err = std::max(err, ratio);
        }
        if (!std::isfinite(err)) err = 1e10;

        if (err <= 1.0) {
            t = hit ? target : t + step;
            y = y5;
            k1 = k7;
            const double e = std::max(err, 1e-10);
            double factor = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            factor = std::clamp(factor, 0.2, 5.0);
            err_prev = e;
            if (!hit || step >= h) h = step * factor;
            const double before = scale;
            renormalize();
            if (scale != before) {
                const double k = std::exp(before - scale);
                k1[0] *= k;
                k1[1] *= k;
            }
            if (record_all) {
                out.push_back(make_sample(t, y, scale));
            } else if (hit && next < recorded_stops) {
                out.push_back(make_sample(t, y, scale));
            }
            if (hit) ++next;
        } else {
            const double factor = std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
            h = step * factor;
            if (h < config.min_step) throw IntegrationError("step size underflow", t);
        }
    }
    return out;
}

/// f'' + A f' + B f = H along arg z = theta.
inline std::vector<RaySample> integrate_ray(const EquationSpec& spec, double theta, double t0, double t1,
                                            std::array<Complex, 2> init, const IntegratorConfig& config = {},
                                            const std::vector<double>& stops = {}) {
    return integrate_linear_ray(compile(spec), theta, t0, t1, init, config, stops);
}

/// log|f1 f2' - f2 f1'| and its phase at each common sample.
inline std::vector<LogPolar> wronskian(const std::vector<RaySample>& s1, const std::vector<RaySample>& s2) {
    if (s1.size() != s2.size()) throw std::invalid_argument("wronskian: sample lists differ in length");
    std::vector<LogPolar> w;
    w.reserve(s1.size());
    for (std::size_t k = 0; k < s1.size(); ++k) w.push_back(s1[k].f() * s2[k].fprime() - s2[k].f() * s1[k].fprime());
    return w;
}

}  // namespace ogl
