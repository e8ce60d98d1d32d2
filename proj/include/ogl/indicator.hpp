#pragma once

// Angular geometry of e^{P}: for P(z) = (alpha + i beta) z^n + ..., the sign of
// delta(P, theta) = alpha cos(n theta) - beta sin(n theta) decides whether
// |e^{P(r e^{i theta})}| blows up or decays as r grows.

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogl/polynomial.hpp"

namespace ogl {

enum class SectorSign { positive, negative };

struct Sector {
    double theta_low = 0;
    double theta_high = 0;
    SectorSign sign = SectorSign::positive;
};

/// Zeros of delta(P, .) in [0, 2pi) and the sectors between them. The sector
/// that straddles theta = 0 is split there, so every sector satisfies
/// 0 <= low < high <= 2pi and consecutive sectors alternate in sign.
struct SectorDecomposition {
    std::vector<double> rays;
    std::vector<Sector> sectors;
};

namespace detail {
inline void require_nonconstant(const Polynomial& p, const char* what) {
    if (p.degree() < 1) throw std::invalid_argument(std::string(what) + ": polynomial must have degree >= 1");
}
}  // namespace detail

inline double delta(const Polynomial& P, double theta) {
    detail::require_nonconstant(P, "delta");
    const Complex c = P.leading();
    const double n = P.degree();
    return c.real() * std::cos(n * theta) - c.imag() * std::sin(n * theta);
}

inline SectorDecomposition critical_rays_exp(const Polynomial& P) {
    detail::require_nonconstant(P, "critical_rays_exp");
    const int n = P.degree();
    const double phi = std::arg(P.leading());
    SectorDecomposition out;
    for (int k = 0; k < 2 * n; ++k) {
        double theta = normalize_angle((std::numbers::pi / 2 - phi + k * std::numbers::pi) / n);
        // a ray a rounding error below 2pi is the ray at 0
        if (kTwoPi - theta < 1e-12) theta = 0.0;
        out.rays.push_back(theta);
    }
    std::sort(out.rays.begin(), out.rays.end());

    auto sign_at = [&](double theta) { return delta(P, theta) > 0 ? SectorSign::positive : SectorSign::negative; };
    auto push = [&](double lo, double hi) {
        if (hi > lo) out.sectors.push_back({lo, hi, sign_at(0.5 * (lo + hi))});
    };
    push(0.0, out.rays.front());
    for (std::size_t k = 0; k + 1 < out.rays.size(); ++k) push(out.rays[k], out.rays[k + 1]);
    push(out.rays.back(), kTwoPi);
    return out;
}

/// Critical rays of a polynomial potential Q of degree m: the m + 2
/// directions (-arg a_m + 2 j pi) / (m + 2).
inline std::vector<double> critical_rays_poly(const Polynomial& Q) {
    detail::require_nonconstant(Q, "critical_rays_poly");
    const int m = Q.degree();
    const double phi = std::arg(Q.leading());
    std::vector<double> rays;
    for (int j = 0; j <= m + 1; ++j) rays.push_back(normalize_angle((-phi + 2.0 * j * std::numbers::pi) / (m + 2)));
    std::sort(rays.begin(), rays.end());
    return rays;
}

inline const char* to_string(SectorSign s) { return s == SectorSign::positive ? "positive" : "negative"; }

}  // namespace ogl
