#pragma once

// Growth of entire functions from sampled modulus data: max/min modulus on
// circles, order and hyper-order fits, the proximity function m(r, f), and
// logarithmic derivatives along integrated rays.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ogl/integrator.hpp"
#include "ogl/log_polar.hpp"

namespace ogl {

using Evaluator = std::function<LogPolar(Complex)>;

inline Evaluator evaluator_of(const CoeffExpr& e) {
    return [c = CompiledExpr(e)](Complex z) { return c(z); };
}

struct GrowthEntry {
    double r = 0;
    double log_max_modulus = 0;
    std::optional<double> log_min_modulus;
    double argmax_theta = 0;
};

struct GrowthProfile {
    std::vector<GrowthEntry> entries;
};

enum class OrderKind { order, lower_order, hyper_order };

inline const char* to_string(OrderKind k) {
    switch (k) {
        case OrderKind::order: return "order";
        case OrderKind::lower_order: return "lower_order";
        case OrderKind::hyper_order: return "hyper_order";
    }
    return "?";
}

struct OrderEstimate {
    double value = 0;
    double fit_residual = 0;
    double r_lo = 0;
    double r_hi = 0;
    OrderKind kind = OrderKind::order;
    std::string note;
};

class ProfileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Radii r_lo * (r_hi/r_lo)^{k/(n-1)}, k = 0..n-1.
inline std::vector<double> geometric_radii(double r_lo, double r_hi, std::size_t n) {
    if (!(r_lo > 0 && r_hi > r_lo) || n < 2) throw std::invalid_argument("geometric_radii: need 0 < r_lo < r_hi, n >= 2");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = r_lo * std::pow(r_hi / r_lo, double(k) / double(n - 1));
    out.back() = r_hi;
    return out;
}

namespace detail {

inline void require_radii(const std::vector<double>& radii) {
    if (radii.empty()) throw ProfileError("profile: no radii");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0)) throw ProfileError("profile: radii must be positive");
        if (k > 0 && !(radii[k] > radii[k - 1])) throw ProfileError("profile: radii must be strictly increasing");
    }
}

struct CircleExtremum {
    double value;
    double theta;
};

/// Extremum of sign * log|f| on |z| = r: uniform grid, then Brent around the best node.
inline CircleExtremum circle_extremum(const Evaluator& f, double r, std::size_t n, double sign) {
    auto g = [&](double theta) { return sign * f(std::polar(r, theta)).log_magnitude; };
    const double h = kTwoPi / double(n);
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        double v = g(h * double(k));
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    if (!std::isfinite(best_v)) return {sign * best_v, h * double(best)};
    const double center = h * double(best);
    auto [theta, neg] = boost::math::tools::brent_find_minima([&](double th) { return -g(th); }, center - h,
                                                              center + h, std::numeric_limits<double>::digits / 2);
    if (-neg > best_v) return {-sign * neg, normalize_angle(theta)};
    return {sign * best_v, center};
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double rms = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    LineFit out;
    out.slope = sxx > 0 ? sxy / sxx : 0.0;
    out.intercept = my - out.slope * mx;
    double ss = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double r = y[k] - (out.intercept + out.slope * x[k]);
        ss += r * r;
    }
    out.rms = std::sqrt(ss / n);
    return out;
}

inline void check_profile_shape(const GrowthProfile& p) {
    for (std::size_t k = 1; k < p.entries.size(); ++k) {
        if (!(p.entries[k].r > p.entries[k - 1].r)) throw ProfileError("profile: radii must be strictly increasing");
        const double a = p.entries[k - 1].log_max_modulus, b = p.entries[k].log_max_modulus;
        if (b < a - 1e-9 * std::max(1.0, std::abs(a))) throw ProfileError("profile: log M(r) is not monotone");
    }
}

/// Applies `depth` logarithms to log M and fits against log r. With `guard`,
/// a level below that is already linear in log r yields 0.
inline OrderEstimate fit_levels(const std::vector<GrowthEntry>& tail, int depth, OrderKind kind, bool guard) {
    std::vector<double> x, below;
    for (const auto& e : tail) {
        x.push_back(std::log(e.r));
        double v = e.log_max_modulus;
        for (int d = 1; d < depth; ++d) {
            if (!(v > 1.0)) throw ProfileError("profile: log M(r) must exceed 1 on the fitted tail");
            v = std::log(v);
        }
        below.push_back(v);
    }
    OrderEstimate out;
    out.kind = kind;
    out.r_lo = tail.front().r;
    out.r_hi = tail.back().r;
    if (guard) {
        auto lin = fit_line(x, below);
        const auto [lo, hi] = std::minmax_element(below.begin(), below.end());
        if (std::isfinite(lin.rms) && lin.rms <= 1e-3 * (*hi - *lo) + 1e-12) {
            out.fit_residual = lin.rms;
            out.note = depth == 1 ? "polynomial growth: log M(r) linear in log r" : "log log M(r) linear in log r";
            return out;
        }
    }
    std::vector<double> y;
    for (double v : below) {
        if (!(v > 1.0))
            throw ProfileError(depth == 1 ? "profile: log M(r) must exceed 1 on the fitted tail"
                                          : "profile: log log M(r) must exceed 1 on the fitted tail");
        y.push_back(std::log(v));
    }
    auto fit = fit_line(x, y);
    out.value = std::max(0.0, fit.slope);
    out.fit_residual = fit.rms;
    return out;
}

inline std::vector<GrowthEntry> upper_half(const GrowthProfile& p) {
    const std::size_t n = p.entries.size();
    return {p.entries.begin() + static_cast<std::ptrdiff_t>(n / 2), p.entries.end()};
}

inline void require_estimable(const GrowthProfile& p) {
    if (p.entries.size() < 8) throw ProfileError("order estimate: at least 8 radii required");
    const double span = std::log10(p.entries.back().r / p.entries.front().r);
    if (span < 1.5 - 1e-12) throw ProfileError("order estimate: radii must span at least 1.5 decades");
    check_profile_shape(p);
}

}  // namespace detail

inline GrowthProfile max_modulus_profile(const Evaluator& f, const std::vector<double>& radii,
                                         std::size_t angular_samples = 256) {
    if (angular_samples < 64) throw ProfileError("profile: at least 64 angular samples required");
    detail::require_radii(radii);
    GrowthProfile out;
    for (double r : radii) {
        auto m = detail::circle_extremum(f, r, angular_samples, 1.0);
        out.entries.push_back({r, m.value, std::nullopt, m.theta});
    }
    return out;
}

/// Max modulus profile with the min-modulus channel filled as well.
inline GrowthProfile min_modulus_profile(const Evaluator& f, const std::vector<double>& radii,
                                         std::size_t angular_samples = 256) {
    auto out = max_modulus_profile(f, radii, angular_samples);
    for (auto& e : out.entries) e.log_min_modulus = detail::circle_extremum(f, e.r, angular_samples, -1.0).value;
    return out;
}

/// Slope of log log M against log r over the upper half of the radii.
inline OrderEstimate order_estimate(const GrowthProfile& p) {
    detail::require_estimable(p);
    return detail::fit_levels(detail::upper_half(p), 1, OrderKind::order, true);
}

/// The same fit restricted to r_lo <= r <= r_hi, without the range preconditions.
inline OrderEstimate order_fit(const GrowthProfile& p, double r_lo, double r_hi) {
    detail::check_profile_shape(p);
    std::vector<GrowthEntry> window;
    for (const auto& e : p.entries)
        if (e.r >= r_lo && e.r <= r_hi) window.push_back(e);
    if (window.size() < 3) throw ProfileError("order fit: fewer than 3 radii in the window");
    return detail::fit_levels(window, 1, OrderKind::order, false);
}

/// min over the upper half of log log M(r) / log r.
inline OrderEstimate lower_order_estimate(const GrowthProfile& p) {
    detail::require_estimable(p);
    auto tail = detail::upper_half(p);
    OrderEstimate out;
    out.kind = OrderKind::lower_order;
    out.r_lo = tail.front().r;
    out.r_hi = tail.back().r;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& e : tail) {
        if (!(e.log_max_modulus > 1.0) || !(e.r > 1.0))
            throw ProfileError("lower order: log M(r) and r must exceed 1 on the tail");
        lo = std::min(lo, std::log(e.log_max_modulus) / std::log(e.r));
    }
    out.value = std::max(0.0, lo);
    return out;
}

/// Slope of log log log M against log r over the upper half.
inline OrderEstimate hyper_order_estimate(const GrowthProfile& p) {
    detail::require_estimable(p);
    return detail::fit_levels(detail::upper_half(p), 2, OrderKind::hyper_order, true);
}

/// (1/2pi) int log^+ |f(r e^{i theta})| d theta by trapezoid doubling.
inline double nevanlinna_m(const Evaluator& f, double r, double tol = 1e-6, int max_level = 22) {
    if (!(r > 0)) throw std::invalid_argument("nevanlinna_m: r must be positive");
    auto log_plus = [&](double theta) { return std::max(0.0, f(std::polar(r, theta)).log_magnitude); };
    std::size_t n = 16;
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) sum += log_plus(kTwoPi * double(k) / double(n));
    double estimate = sum / double(n);
    for (int level = 5; level <= max_level; ++level) {
        double extra = 0;
        for (std::size_t k = 0; k < n; ++k) extra += log_plus(kTwoPi * (double(k) + 0.5) / double(n));
        sum += extra;
        n *= 2;
        const double next = sum / double(n);
        if (std::abs(next - estimate) < tol * std::max(1.0, std::abs(next))) return next;
        estimate = next;
    }
    throw std::runtime_error("nevanlinna_m: trapezoid refinement did not converge");
}

struct LogDerivativePoint {
    double t;
    double log_ratio;
};

struct LogDerivativeProfile {
    std::vector<LogDerivativePoint> points;
    std::vector<double> skipped;
};

/// log|f'/f| at each sample; samples where f vanishes are skipped.
inline LogDerivativeProfile log_derivative_profile(const std::vector<RaySample>& samples) {
    LogDerivativeProfile out;
    for (const auto& s : samples) {
        if (!std::isfinite(s.log_abs_f)) {
            out.skipped.push_back(s.t);
            continue;
        }
        out.points.push_back({s.t, s.log_abs_fprime - s.log_abs_f});
    }
    return out;
}

struct GrowthComparison {
    double r;
    double difference;
};

/// log M(r, g) - log M(r, f) per radius.
inline std::vector<GrowthComparison> compare_growth(const Evaluator& g, const Evaluator& f,
                                                    const std::vector<double>& radii,
                                                    std::size_t angular_samples = 256) {
    auto pg = max_modulus_profile(g, radii, angular_samples);
    auto pf = max_modulus_profile(f, radii, angular_samples);
    std::vector<GrowthComparison> out;
    for (std::size_t k = 0; k < radii.size(); ++k)
        out.push_back({radii[k], pg.entries[k].log_max_modulus - pf.entries[k].log_max_modulus});
    return out;
}

/// Lower bound for log M(r, f) of an integrated solution: the maximum of
/// log|f| over a fan of rays, sampled at `radii`.
inline GrowthProfile ray_fan_profile(const EquationSpec& spec, const std::vector<double>& thetas,
                                     const std::vector<double>& radii, std::array<Complex, 2> init,
                                     const IntegratorConfig& config = {}) {
    detail::require_radii(radii);
    if (thetas.empty()) throw ProfileError("ray fan: no rays");
    const auto coeffs = compile(spec);
    GrowthProfile out;
    for (double r : radii)
        out.entries.push_back({r, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0});
    for (double theta : thetas) {
        auto samples = integrate_linear_ray(coeffs, theta, 0.0, radii.back(), init, config, radii);
        // samples[0] is the start point; the rest align with radii
        for (std::size_t k = 0; k < radii.size(); ++k) {
            const double v = samples[k + 1].log_abs_f;
            auto& e = out.entries[k];
            if (v > e.log_max_modulus) {
                e.log_max_modulus = v;
                e.argmax_theta = normalize_angle(theta);
            }
            e.log_min_modulus = std::min(*e.log_min_modulus, v);
        }
    }
    return out;
}

}  // namespace ogl
