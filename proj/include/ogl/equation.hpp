#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ogl/expr.hpp"

namespace ogl {

/// Analytic properties of the coefficients that cannot be decided from the
/// expression grammar. The boolean flags assert hypotheses about A; the
/// optional orders describe the true coefficient when its expression is only
/// a surrogate (a function of order 1/2 has no exponential-polynomial form).
struct DeclaredProps {
    bool fabry_gaps = false;
    bool multiply_connected_fatou = false;
    bool lambda_lt_rho = false;
    bool h_bounded_away_on_Eplus_blows_up_on_Eminus = false;
    std::optional<double> mu_B;
    std::optional<double> rho_A;
    std::optional<double> rho_B;
    std::optional<double> rho_H;
    std::optional<bool> transcendental_A;
    std::optional<bool> transcendental_B;
    std::string notes;
};

/// f'' + A f' + B f = H  (H absent: homogeneous).
struct EquationSpec {
    std::string name;
    CoeffExpr A;
    CoeffExpr B;
    std::optional<CoeffExpr> H;
    DeclaredProps declared;

    bool homogeneous() const { return !H.has_value(); }

    /// The associated homogeneous equation.
    EquationSpec homogeneous_part() const {
        EquationSpec out = *this;
        out.H.reset();
        return out;
    }
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline double effective_order_A(const EquationSpec& s) { return s.declared.rho_A.value_or(exact_order(s.A)); }
inline double effective_order_B(const EquationSpec& s) { return s.declared.rho_B.value_or(exact_order(s.B)); }
inline std::optional<double> effective_order_H(const EquationSpec& s) {
    if (!s.H) return std::nullopt;
    return s.declared.rho_H.value_or(exact_order(*s.H));
}

/// Throws SpecError when the spec breaks an invariant.
inline void validate(const EquationSpec& s) {
    if (is_zero_function(s.B)) throw SpecError("B must not vanish identically");
    const auto& d = s.declared;
    auto nonneg = [](const std::optional<double>& v, const char* field) {
        if (v && !(*v >= 0.0)) throw SpecError(std::string("declared.") + field + " must be a nonnegative number");
    };
    nonneg(d.mu_B, "mu_B");
    nonneg(d.rho_A, "rho_A");
    nonneg(d.rho_B, "rho_B");
    nonneg(d.rho_H, "rho_H");
    if (d.rho_H && !s.H) throw SpecError("declared.rho_H given for a homogeneous equation");
    if (d.mu_B && *d.mu_B > effective_order_B(s))
        throw SpecError("declared.mu_B exceeds the order of B");
}

}  // namespace ogl
