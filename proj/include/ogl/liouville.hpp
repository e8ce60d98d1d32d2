#pragma once

// f = y g with g = exp(-1/2 int_0^z A) turns f'' + A f' + B f = 0 into
// y'' + (B - A^2/4 - A'/2) y = 0.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ogl/equation.hpp"
#include "ogl/integrator.hpp"

namespace ogl {

struct TransformedEquation {
    /// B - A^2/4 - A'/2 in expanded form.
    CoeffExpr potential;
    CoeffExpr A;
    std::string conversion_exponent;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline TransformedEquation liouville_transform(const EquationSpec& spec) {
    if (!spec.homogeneous()) throw SpecError("liouville_transform: equation must be homogeneous");
    auto potential = expand(CoeffExpr::sum({spec.B, CoeffExpr::scale(-0.25, CoeffExpr::product({spec.A, spec.A})),
                                            CoeffExpr::scale(-0.5, differentiate(spec.A))}));
    return {potential, spec.A, "-1/2 * int_0^z (" + to_string(spec.A) + ") dz"};
}

/// int_0^{r e^{i theta}} A along the ray, for each r in `radii` (nondecreasing,
/// nonnegative). Each gap is integrated by adaptive Gauss-Kronrod to `rel_tol`.
inline std::vector<Complex> ray_integral(const CoeffExpr& A, double theta, const std::vector<double>& radii,
                                         double rel_tol = 1e-8) {
    const CompiledExpr a(A);
    const Complex dir = std::polar(1.0, theta);
    auto integrand = [&](double t) {
        auto v = a(t * dir);
        if (!v.fits_in_double())
            throw QuadratureError("ray_integral: integrand overflows at t = " + std::to_string(t));
        return v.to_complex() * dir;
    };
    std::vector<Complex> out;
    out.reserve(radii.size());
    Complex acc{};
    double prev = 0.0;
    for (double r : radii) {
        if (!(r >= prev)) throw std::invalid_argument("ray_integral: radii must be nondecreasing and nonnegative");
        if (r > prev && !a.is_zero()) {
            double err = 0, l1 = 0;
            Complex piece = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, prev, r, 20,
                                                                                          rel_tol, &err, &l1);
            if (!std::isfinite(err) || err > rel_tol * std::max(l1, std::abs(piece)) + 1e-300)
                throw QuadratureError("ray_integral: Gauss-Kronrod did not converge on [" + std::to_string(prev) +
                                      ", " + std::to_string(r) + "]");
            acc += piece;
        }
        out.push_back(acc);
        prev = r;
    }
    return out;
}

/// (r, log|exp(-1/2 int_0^{r e^{i theta}} A)|) per radius.
inline std::vector<std::pair<double, double>> conversion_factor_profile(const EquationSpec& spec, double theta,
                                                                        const std::vector<double>& radii) {
    auto integrals = ray_integral(spec.A, theta, radii);
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < radii.size(); ++k) out.emplace_back(radii[k], -0.5 * integrals[k].real());
    return out;
}

/// Solution of the transformed equation and the f it reconstructs.
struct TransformedRun {
    std::vector<RaySample> y;
    std::vector<RaySample> f;
};

/// Integrates y'' + V y = 0 with initial data matched to (f0, f0') at t0 and
/// maps each sample back through f = y exp(-1/2 int A), f' = g (y' - A y / 2).
inline TransformedRun integrate_transformed(const EquationSpec& spec, double theta, double t0, double t1,
                                            std::array<Complex, 2> f_init, const IntegratorConfig& config = {},
                                            const std::vector<double>& stops = {}) {
    const auto tr = liouville_transform(spec);
    const CompiledExpr a(spec.A);
    const Complex dir = std::polar(1.0, theta);

    const Complex G0 = -0.5 * ray_integral(spec.A, theta, {t0}).front();
    const Complex a0 = a(t0 * dir).to_complex();
    const Complex y0 = f_init[0] * std::exp(-G0);
    const Complex y0p = f_init[1] * std::exp(-G0) + 0.5 * a0 * y0;

    LinearCoefficients coeffs{CompiledExpr{}, CompiledExpr(tr.potential), CompiledExpr{}};
    TransformedRun run;
    run.y = integrate_linear_ray(coeffs, theta, t0, t1, {y0, y0p}, config, stops);

    std::vector<double> ts;
    for (const auto& s : run.y) ts.push_back(s.t);
    const auto integrals = ray_integral(spec.A, theta, ts);
    for (std::size_t k = 0; k < run.y.size(); ++k) {
        const auto& s = run.y[k];
        const Complex G = -0.5 * integrals[k];
        const LogPolar g = LogPolar::exp_of(G);
        const LogPolar half_a = LogPolar::from_complex(0.5) * a(s.t * dir);
        const LogPolar f = s.f() * g;
        const LogPolar fp = g * (s.fprime() - half_a * s.f());
        run.f.push_back({s.t, f.log_magnitude, f.phase, fp.log_magnitude, fp.phase, s.accumulated_rescale});
    }
    return run;
}

}  // namespace ogl
