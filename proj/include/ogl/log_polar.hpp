#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace ogl {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest natural-log magnitude that still converts to a finite double.
inline constexpr double kOverflowLog = 709.0;

/// Wraps an angle into (-pi, pi].
inline double normalize_phase(double phase) {
    double p = std::remainder(phase, kTwoPi);
    if (p <= -std::numbers::pi) p += kTwoPi;
    return p;
}

/// Wraps an angle into [0, 2pi).
inline double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

/// A complex number stored as (log|w|, arg w). Values whose modulus does not
/// fit in a double (|e^{z^2}| at |z| = 30, say) stay representable here.
/// log_magnitude == -inf encodes exact zero.
struct LogPolar {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogPolar zero() { return {}; }
    static LogPolar one() { return {0.0, 0.0}; }

    static LogPolar from_parts(double log_magnitude, double phase) {
        if (std::isinf(log_magnitude) && log_magnitude < 0) return zero();
        return {log_magnitude, normalize_phase(phase)};
    }

    static LogPolar from_complex(Complex w) {
        if (w == Complex{}) return zero();
        return {std::log(std::abs(w)), std::arg(w)};
    }

    /// e^w for complex w.
    static LogPolar exp_of(Complex w) { return from_parts(w.real(), w.imag()); }

    bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }

    /// Plain complex value; overflows to inf for log_magnitude > ~709.
    Complex to_complex() const {
        if (is_zero()) return {};
        return std::polar(std::exp(log_magnitude), phase);
    }

    /// Value multiplied by e^{-shift}; used to bring huge values into range.
    Complex to_complex_scaled(double shift) const {
        if (is_zero()) return {};
        return std::polar(std::exp(log_magnitude - shift), phase);
    }

    bool fits_in_double() const { return log_magnitude < kOverflowLog; }

    friend LogPolar operator*(LogPolar a, LogPolar b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_parts(a.log_magnitude + b.log_magnitude, a.phase + b.phase);
    }

    friend LogPolar operator/(LogPolar a, LogPolar b) {
        if (a.is_zero()) return zero();
        return from_parts(a.log_magnitude - b.log_magnitude, a.phase - b.phase);
    }

    LogPolar operator-() const {
        if (is_zero()) return zero();
        return from_parts(log_magnitude, phase + std::numbers::pi);
    }
};

/// Sum of log-polar terms. Every term is rescaled by the largest magnitude,
/// the scaled values are accumulated smallest-first with Neumaier
/// compensation, and the anchor is added back in the log channel.
inline LogPolar log_polar_sum(std::span<const LogPolar> terms) {
    double anchor = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) anchor = std::max(anchor, t.log_magnitude);
    if (std::isinf(anchor) && anchor < 0) return LogPolar::zero();

    std::vector<Complex> scaled;
    scaled.reserve(terms.size());
    for (const auto& t : terms)
        if (!t.is_zero()) scaled.push_back(t.to_complex_scaled(anchor));
    std::sort(scaled.begin(), scaled.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });

    double re = 0, im = 0, c_re = 0, c_im = 0;
    auto neumaier = [](double& sum, double& comp, double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    };
    for (Complex w : scaled) {
        neumaier(re, c_re, w.real());
        neumaier(im, c_im, w.imag());
    }
    Complex total{re + c_re, im + c_im};
    if (total == Complex{}) return LogPolar::zero();
    return LogPolar::from_parts(anchor + std::log(std::abs(total)), std::arg(total));
}

inline LogPolar operator+(LogPolar a, LogPolar b) {
    const LogPolar terms[] = {a, b};
    return log_polar_sum(terms);
}

inline LogPolar operator-(LogPolar a, LogPolar b) { return a + (-b); }

}  // namespace ogl
