#pragma once

// Rule engine deciding when every non-trivial solution of
// f'' + A f' + B f = H has infinite order. Each rule is a published
// sufficient condition; the engine reports every rule that fires together
// with the hypotheses it checked.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogl/equation.hpp"
#include "ogl/expr.hpp"

namespace ogl {

enum class RuleId {
    G1988a,
    H1991b,
    G1988c,
    G1988d,
    Zhang_hE_P,
    Long2018a,
    Long2018b,
    Long2018c,
    KumarSaini_Fabry,
    Fatou_MC_homog,
    Manisha_poly,
    Th2_i,
    Th2_ii,
    KumarSaini_Fabry_nonhomog,
    Fatou_MC_nonhomog,
};

inline constexpr std::array<RuleId, 15> kAllRules = {
    RuleId::G1988a,        RuleId::H1991b,    RuleId::G1988c,
    RuleId::G1988d,        RuleId::Zhang_hE_P, RuleId::Long2018a,
    RuleId::Long2018b,     RuleId::Long2018c, RuleId::KumarSaini_Fabry,
    RuleId::Fatou_MC_homog, RuleId::Manisha_poly, RuleId::Th2_i,
    RuleId::Th2_ii,        RuleId::KumarSaini_Fabry_nonhomog, RuleId::Fatou_MC_nonhomog,
};

inline const char* to_string(RuleId r) {
    switch (r) {
        case RuleId::G1988a: return "G1988a";
        case RuleId::H1991b: return "H1991b";
        case RuleId::G1988c: return "G1988c";
        case RuleId::G1988d: return "G1988d";
        case RuleId::Zhang_hE_P: return "Zhang_hE_P";
        case RuleId::Long2018a: return "Long2018a";
        case RuleId::Long2018b: return "Long2018b";
        case RuleId::Long2018c: return "Long2018c";
        case RuleId::KumarSaini_Fabry: return "KumarSaini_Fabry";
        case RuleId::Fatou_MC_homog: return "Fatou_MC_homog";
        case RuleId::Manisha_poly: return "Manisha_poly";
        case RuleId::Th2_i: return "Th2_i";
        case RuleId::Th2_ii: return "Th2_ii";
        case RuleId::KumarSaini_Fabry_nonhomog: return "KumarSaini_Fabry_nonhomog";
        case RuleId::Fatou_MC_nonhomog: return "Fatou_MC_nonhomog";
    }
    return "?";
}

inline std::optional<RuleId> rule_from_string(std::string_view s) {
    for (RuleId r : kAllRules)
        if (s == to_string(r)) return r;
    return std::nullopt;
}

inline bool is_nonhomogeneous_rule(RuleId r) {
    return r == RuleId::KumarSaini_Fabry_nonhomog || r == RuleId::Fatou_MC_nonhomog;
}

enum class Conclusion {
    AllSolutionsInfiniteOrder,
    AllSolutionsInfiniteOrderWithHyperOrder,
    NoRuleApplies,
    AtMostOneExceptionalSolution,
};

inline const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::AllSolutionsInfiniteOrder: return "AllSolutionsInfiniteOrder";
        case Conclusion::AllSolutionsInfiniteOrderWithHyperOrder: return "AllSolutionsInfiniteOrderWithHyperOrder";
        case Conclusion::NoRuleApplies: return "NoRuleApplies";
        case Conclusion::AtMostOneExceptionalSolution: return "AtMostOneExceptionalSolution";
    }
    return "?";
}

enum class HypothesisSource { computed, declared };

struct Hypothesis {
    std::string name;
    std::string value;
    bool satisfied = false;
    HypothesisSource source = HypothesisSource::computed;
};

struct Verdict {
    std::optional<RuleId> rule;
    Conclusion conclusion = Conclusion::NoRuleApplies;
    std::optional<double> hyper_order;
    std::vector<Hypothesis> hypotheses_checked;
    std::string citation;
};

/// Outcome of one rule, fired or not.
struct RuleEvaluation {
    RuleId rule;
    bool fired = false;
    Verdict verdict;
};

// ---------------------------------------------------------------------------
// Degree conditions

/// m + 2 > 2n and n does not divide m + 2 (n = deg p >= 2, m = deg Q >= 1).
inline bool check_zhang(int n, int m) {
    if (n < 2) throw std::invalid_argument("check_zhang: requires deg p = n >= 2");
    if (m < 1) throw std::invalid_argument("check_zhang: requires deg Q = m >= 1");
    return m + 2 > 2 * n && (m + 2) % n != 0;
}

enum class LongCase { case_a, case_b, case_c, none };

inline const char* to_string(LongCase c) {
    switch (c) {
        case LongCase::case_a: return "case_a";
        case LongCase::case_b: return "case_b";
        case LongCase::case_c: return "case_c";
        case LongCase::none: return "none";
    }
    return "?";
}

/// (a) m + 2 < 2n; (b) m + 2 > 2n and m + 2 is not a multiple of 2n;
/// (c) m + 2 = 2n and a_n^2 / b_m is not a negative real.
inline LongCase check_long(int n, int m, Complex a_n, Complex b_m) {
    if (b_m == Complex{}) throw std::invalid_argument("check_long: leading coefficient b_m must be nonzero");
    if (m + 2 < 2 * n) return LongCase::case_a;
    if (m + 2 > 2 * n) return (m + 2) % (2 * n) != 0 ? LongCase::case_b : LongCase::none;
    const Complex q = a_n * a_n / b_m;
    const bool negative_real = q.imag() == 0.0 && q.real() < 0.0;
    return negative_real ? LongCase::none : LongCase::case_c;
}

// ---------------------------------------------------------------------------
// Coefficient facts

/// A written as h(z) e^{P(z)} with P nonconstant.
struct ExpFactorization {
    CoeffExpr h;
    Polynomial P;
};

/// Reads h e^P off the tree as written (so h may itself carry exponentials),
/// falling back to a single-term expansion.
inline std::optional<ExpFactorization> factor_exp(const CoeffExpr& A) {
    auto t = tidy(A);
    if (auto e = t.as<ExpPoly>()) return ExpFactorization{CoeffExpr::constant(1.0), e->exponent};
    if (auto s = t.as<ScaleNode>()) {
        if (auto inner = factor_exp(s->child))
            return ExpFactorization{tidy(CoeffExpr::scale(s->factor, inner->h)), inner->P};
    }
    if (auto pr = t.as<ProductNode>()) {
        std::vector<CoeffExpr> rest;
        std::optional<Polynomial> P;
        for (const auto& f : pr->factors) {
            if (auto e = f.as<ExpPoly>(); e && !P)
                P = e->exponent;
            else
                rest.push_back(f);
        }
        if (P && !P->is_constant()) {
            CoeffExpr h = rest.empty() ? CoeffExpr::constant(1.0) : tidy(CoeffExpr::product(rest));
            return ExpFactorization{h, *P};
        }
    }
    auto terms = expand_terms(t);
    if (terms.size() == 1 && !terms.front().exponent.is_zero())
        return ExpFactorization{CoeffExpr::poly(terms.front().coefficient), terms.front().exponent};
    return std::nullopt;
}

namespace detail {

inline std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

struct Facts {
    double rho_A = 0, rho_B = 0;
    std::optional<double> rho_H;
    bool rho_A_declared = false, rho_B_declared = false, rho_H_declared = false;
    bool A_transcendental = false, B_transcendental = false;
    bool A_trans_declared = false, B_trans_declared = false;
    std::optional<Polynomial> B_poly;  // only when B is (taken as) a polynomial
    std::optional<ExpFactorization> A_exp;
    double rho_h = 0;
    bool h_polynomial = false;
};

inline Facts gather_facts(const EquationSpec& s) {
    Facts f;
    const auto& d = s.declared;
    f.rho_A = effective_order_A(s);
    f.rho_B = effective_order_B(s);
    f.rho_H = effective_order_H(s);
    f.rho_A_declared = d.rho_A.has_value();
    f.rho_B_declared = d.rho_B.has_value();
    f.rho_H_declared = d.rho_H.has_value();

    if (d.transcendental_A) {
        f.A_transcendental = *d.transcendental_A;
        f.A_trans_declared = true;
    } else if (d.rho_A) {
        f.A_transcendental = *d.rho_A > 0 || is_transcendental(s.A);
        f.A_trans_declared = *d.rho_A > 0;
    } else {
        f.A_transcendental = is_transcendental(s.A);
    }
    if (d.transcendental_B) {
        f.B_transcendental = *d.transcendental_B;
        f.B_trans_declared = true;
    } else if (d.rho_B) {
        f.B_transcendental = *d.rho_B > 0 || is_transcendental(s.B);
        f.B_trans_declared = *d.rho_B > 0;
    } else {
        f.B_transcendental = is_transcendental(s.B);
    }
    if (!f.B_transcendental) f.B_poly = as_polynomial(s.B);

    if (!f.A_trans_declared) {
        f.A_exp = factor_exp(s.A);
        if (f.A_exp) {
            f.rho_h = exact_order(f.A_exp->h);
            f.h_polynomial = as_polynomial(f.A_exp->h).has_value() && !is_zero_function(f.A_exp->h);
        }
    }
    return f;
}

inline HypothesisSource src(bool declared) { return declared ? HypothesisSource::declared : HypothesisSource::computed; }

struct TraceBuilder {
    std::vector<Hypothesis> items;
    bool all = true;
    void add(std::string name, std::string value, bool ok, HypothesisSource source = HypothesisSource::computed) {
        items.push_back({std::move(name), std::move(value), ok, source});
        all = all && ok;
    }
};

inline std::string order_value(const char* which, double v, bool declared) {
    return std::string("rho(") + which + ")=" + fmt(v) + (declared ? " (declared)" : "");
}

inline RuleEvaluation finish(RuleId rule, TraceBuilder&& t, std::string citation,
                             std::optional<double> hyper = std::nullopt) {
    RuleEvaluation ev{rule, t.all, {}};
    ev.verdict.rule = rule;
    ev.verdict.conclusion =
        hyper ? Conclusion::AllSolutionsInfiniteOrderWithHyperOrder : Conclusion::AllSolutionsInfiniteOrder;
    ev.verdict.hyper_order = hyper;
    ev.verdict.hypotheses_checked = std::move(t.items);
    ev.verdict.citation = std::move(citation);
    return ev;
}

inline void add_exp_form(TraceBuilder& t, const Facts& f, int min_degree) {
    t.add("A = h e^P with P a polynomial",
          f.A_exp ? "h = " + to_string(f.A_exp->h) + ", P = " + format_polynomial(f.A_exp->P) : "no such form",
          f.A_exp.has_value());
    const int n = f.A_exp ? f.A_exp->P.degree() : 0;
    t.add("n = deg P >= " + std::to_string(min_degree), "n=" + std::to_string(n), f.A_exp && n >= min_degree);
}

inline void add_nonconstant_B(TraceBuilder& t, const Facts& f) {
    const int m = f.B_poly ? f.B_poly->degree() : -1;
    t.add("B nonconstant polynomial", f.B_poly ? "m=deg B=" + std::to_string(m) : "B not a polynomial",
          f.B_poly && m >= 1, src(f.B_trans_declared));
}

inline RuleEvaluation rule_g1988a(const Facts& f) {
    TraceBuilder t;
    t.add("rho(A) < rho(B)",
          order_value("A", f.rho_A, f.rho_A_declared) + ", " + order_value("B", f.rho_B, f.rho_B_declared),
          f.rho_A < f.rho_B, src(f.rho_A_declared || f.rho_B_declared));
    return finish(RuleId::G1988a, std::move(t), "Gundersen, Trans. Amer. Math. Soc. 305 (1988): rho(A) < rho(B)");
}

inline RuleEvaluation rule_h1991b(const Facts& f) {
    TraceBuilder t;
    const auto s = src(f.rho_A_declared || f.rho_B_declared);
    t.add("rho(B) < rho(A)",
          order_value("A", f.rho_A, f.rho_A_declared) + ", " + order_value("B", f.rho_B, f.rho_B_declared),
          f.rho_B < f.rho_A, s);
    t.add("rho(A) <= 1/2", order_value("A", f.rho_A, f.rho_A_declared), f.rho_A <= 0.5, src(f.rho_A_declared));
    return finish(RuleId::H1991b, std::move(t),
                  "Hellerstein, Miles and Rossi, Trans. Amer. Math. Soc. 324 (1991): rho(B) < rho(A) <= 1/2");
}

inline RuleEvaluation rule_g1988c(const Facts& f) {
    TraceBuilder t;
    t.add("A transcendental", f.A_transcendental ? "yes" : "no", f.A_transcendental, src(f.A_trans_declared));
    t.add("rho(A) = 0", order_value("A", f.rho_A, f.rho_A_declared), f.rho_A == 0.0, src(f.rho_A_declared));
    t.add("B polynomial", f.B_transcendental ? "no" : "yes", !f.B_transcendental, src(f.B_trans_declared));
    return finish(RuleId::G1988c, std::move(t),
                  "Gundersen (1988): A transcendental of order zero, B polynomial");
}

inline RuleEvaluation rule_g1988d(const Facts& f) {
    TraceBuilder t;
    t.add("A polynomial", f.A_transcendental ? "no" : "yes", !f.A_transcendental, src(f.A_trans_declared));
    t.add("B transcendental", f.B_transcendental ? "yes" : "no", f.B_transcendental, src(f.B_trans_declared));
    return finish(RuleId::G1988d, std::move(t), "Gundersen (1988): A polynomial, B transcendental");
}

inline RuleEvaluation rule_zhang(const Facts& f) {
    TraceBuilder t;
    add_exp_form(t, f, 2);
    const int n = f.A_exp ? f.A_exp->P.degree() : 0;
    t.add("rho(h) < n", "rho(h)=" + fmt(f.rho_h), f.A_exp && f.rho_h < n);
    t.add("rho(A) = n", order_value("A", f.rho_A, f.rho_A_declared), f.A_exp && f.rho_A == n,
          src(f.rho_A_declared));
    add_nonconstant_B(t, f);
    const int m = f.B_poly ? f.B_poly->degree() : -1;
    const bool degrees_ok = n >= 2 && m >= 1;
    t.add("m + 2 > 2n and n does not divide m + 2",
          degrees_ok ? "m+2=" + std::to_string(m + 2) + ", 2n=" + std::to_string(2 * n) : "not applicable",
          degrees_ok && check_zhang(n, m));
    return finish(RuleId::Zhang_hE_P, std::move(t),
                  "Zhang (2018), extended from A = e^P to A = h e^P with rho(h) < deg P; B = Q polynomial");
}

inline std::vector<RuleEvaluation> rules_long(const Facts& f) {
    TraceBuilder common;
    add_exp_form(common, f, 1);
    const int n = f.A_exp ? f.A_exp->P.degree() : 0;
    common.add("rho(A) = n", order_value("A", f.rho_A, f.rho_A_declared), f.A_exp && f.rho_A == n,
               src(f.rho_A_declared));
    add_nonconstant_B(common, f);
    const int m = f.B_poly ? f.B_poly->degree() : -1;

    std::vector<RuleEvaluation> out;
    LongCase which = LongCase::none;
    if (f.A_exp && n >= 1 && f.B_poly && m >= 1) which = check_long(n, m, f.A_exp->P.leading(), f.B_poly->leading());

    for (auto [rule, want] : {std::pair{RuleId::Long2018a, LongCase::case_a},
                              std::pair{RuleId::Long2018b, LongCase::case_b},
                              std::pair{RuleId::Long2018c, LongCase::case_c}}) {
        TraceBuilder t = common;
        std::string lam_value;
        bool lam_ok = false;
        HypothesisSource lam_src = HypothesisSource::computed;
        if (f.h_polynomial) {
            lam_value = "h polynomial: finitely many zeros";
            lam_ok = true;
        } else if (f.A_exp) {
            lam_value = "declared lambda_lt_rho";
            lam_src = HypothesisSource::declared;
        } else {
            lam_value = "no h e^P form";
        }
        t.items.push_back({"lambda(A) < rho(A)", lam_value, lam_ok, lam_src});
        t.all = t.all && lam_ok;
        const char* label = want == LongCase::case_a   ? "(a) m + 2 < 2n"
                            : want == LongCase::case_b ? "(b) m + 2 > 2n and m + 2 != 2kn"
                                                       : "(c) m + 2 = 2n and a_n^2/b_m not negative real";
        t.add(label, std::string("check_long -> ") + to_string(which), which == want);
        out.push_back(finish(rule, std::move(t),
                             "Long et al. (2018), A = h e^P with lambda(A) < rho(A), B polynomial, case " +
                                 std::string(to_string(want)).substr(5)));
    }
    return out;
}

/// Caller sets the lambda hypothesis after construction: it depends on the
/// declared flag, which `rules_long` cannot see.
inline void apply_lambda_declaration(std::vector<RuleEvaluation>& evs, bool declared_flag) {
    for (auto& ev : evs) {
        bool all = true;
        for (auto& h : ev.verdict.hypotheses_checked) {
            if (h.name == "lambda(A) < rho(A)" && h.source == HypothesisSource::declared)
                h.satisfied = declared_flag;
            all = all && h.satisfied;
        }
        ev.fired = all;
    }
}

inline RuleEvaluation rule_fabry(const Facts& f, const DeclaredProps& d) {
    TraceBuilder t;
    t.add("A has Fabry gaps", d.fabry_gaps ? "declared" : "not declared", d.fabry_gaps, HypothesisSource::declared);
    t.add("rho(B) < rho(A)",
          order_value("A", f.rho_A, f.rho_A_declared) + ", " + order_value("B", f.rho_B, f.rho_B_declared),
          f.rho_B < f.rho_A, src(f.rho_A_declared || f.rho_B_declared));
    return finish(RuleId::KumarSaini_Fabry, std::move(t),
                  "Kumar and Saini (2021): A with Fabry gaps, rho(B) < rho(A); hyper-order rho_2(f) = rho(A)",
                  f.rho_A);
}

inline RuleEvaluation rule_fatou_homog(const Facts& f, const DeclaredProps& d) {
    TraceBuilder t;
    t.add("A transcendental", f.A_transcendental ? "yes" : "no", f.A_transcendental, src(f.A_trans_declared));
    t.add("A has a multiply-connected Fatou component", d.multiply_connected_fatou ? "declared" : "not declared",
          d.multiply_connected_fatou, HypothesisSource::declared);
    t.add("rho(B) < rho(A)",
          order_value("A", f.rho_A, f.rho_A_declared) + ", " + order_value("B", f.rho_B, f.rho_B_declared),
          f.rho_B < f.rho_A, src(f.rho_A_declared || f.rho_B_declared));
    return finish(RuleId::Fatou_MC_homog, std::move(t),
                  "A with a multiply-connected Fatou component and rho(B) < rho(A) (Fatou-component analogue of "
                  "Kumar and Saini's Fabry-gap theorem); hyper-order rho_2(f) = rho(A)",
                  f.rho_A);
}

inline void add_manisha_A(TraceBuilder& t, const Facts& f, const DeclaredProps& d) {
    add_exp_form(t, f, 1);
    const int n = f.A_exp ? f.A_exp->P.degree() : 0;
    t.add("rho(h) > n", "rho(h)=" + fmt(f.rho_h) + ", n=" + std::to_string(n), f.A_exp && f.rho_h > n);
    t.add("h bounded away from zero on E+ and blows up exponentially on E-",
          d.h_bounded_away_on_Eplus_blows_up_on_Eminus ? "declared" : "not declared",
          d.h_bounded_away_on_Eplus_blows_up_on_Eminus, HypothesisSource::declared);
}

inline RuleEvaluation rule_manisha(const Facts& f, const DeclaredProps& d) {
    TraceBuilder t;
    add_manisha_A(t, f, d);
    t.add("B polynomial", f.B_transcendental ? "no" : "yes", !f.B_transcendental, src(f.B_trans_declared));
    return finish(RuleId::Manisha_poly, std::move(t),
                  "Kumar, Saini et al.: A = h e^P with rho(h) > deg P and h bounded away / blowing up on E+/E-, "
                  "B polynomial");
}

inline RuleEvaluation rule_th2(const Facts& f, const DeclaredProps& d, bool lower_order_variant) {
    TraceBuilder t;
    add_manisha_A(t, f, d);
    t.add("B transcendental", f.B_transcendental ? "yes" : "no", f.B_transcendental, src(f.B_trans_declared));
    if (!lower_order_variant) {
        t.add("rho(B) < rho(A)",
              order_value("A", f.rho_A, f.rho_A_declared) + ", " + order_value("B", f.rho_B, f.rho_B_declared),
              f.rho_B < f.rho_A, src(f.rho_A_declared || f.rho_B_declared));
        return finish(RuleId::Th2_i, std::move(t),
                      "A as for h e^P with rho(h) > deg P (E+/E- behaviour), B transcendental with rho(B) < rho(A)");
    }
    t.add("mu(B) < rho(A)", d.mu_B ? "mu(B)=" + fmt(*d.mu_B) + " (declared), rho(A)=" + fmt(f.rho_A) : "mu(B) unknown",
          d.mu_B && *d.mu_B < f.rho_A, HypothesisSource::declared);
    return finish(RuleId::Th2_ii, std::move(t),
                  "A as for h e^P with rho(h) > deg P (E+/E- behaviour), B transcendental with mu(B) < rho(A)");
}

inline void add_nonhomog_orders(TraceBuilder& t, const Facts& f) {
    t.add("H present", f.rho_H ? "yes" : "no (homogeneous)", f.rho_H.has_value());
    const double mx = std::max(f.rho_H.value_or(0.0), f.rho_B);
    t.add("max(rho(H), rho(B)) < rho(A)",
          (f.rho_H ? order_value("H", *f.rho_H, f.rho_H_declared) + ", " : std::string()) +
              order_value("B", f.rho_B, f.rho_B_declared) + ", " + order_value("A", f.rho_A, f.rho_A_declared),
          f.rho_H && mx < f.rho_A, src(f.rho_A_declared || f.rho_B_declared || f.rho_H_declared));
}

inline RuleEvaluation rule_fabry_nonhomog(const Facts& f, const DeclaredProps& d) {
    TraceBuilder t;
    t.add("A has Fabry gaps", d.fabry_gaps ? "declared" : "not declared", d.fabry_gaps, HypothesisSource::declared);
    add_nonhomog_orders(t, f);
    return finish(RuleId::KumarSaini_Fabry_nonhomog, std::move(t),
                  "Kumar and Saini (2021): non-homogeneous equation, A with Fabry gaps, max(rho(H), rho(B)) < "
                  "rho(A)");
}

inline RuleEvaluation rule_fatou_nonhomog(const Facts& f, const DeclaredProps& d) {
    TraceBuilder t;
    t.add("A transcendental", f.A_transcendental ? "yes" : "no", f.A_transcendental, src(f.A_trans_declared));
    t.add("A has a multiply-connected Fatou component", d.multiply_connected_fatou ? "declared" : "not declared",
          d.multiply_connected_fatou, HypothesisSource::declared);
    add_nonhomog_orders(t, f);
    return finish(RuleId::Fatou_MC_nonhomog, std::move(t),
                  "Non-homogeneous equation, A with a multiply-connected Fatou component, max(rho(H), rho(B)) < "
                  "rho(A)");
}

}  // namespace detail

/// Every rule evaluated against the spec, in RuleId order.
inline std::vector<RuleEvaluation> evaluate_rules(const EquationSpec& spec) {
    using namespace detail;
    const Facts f = gather_facts(spec);
    const auto& d = spec.declared;
    std::vector<RuleEvaluation> out;
    out.push_back(rule_g1988a(f));
    out.push_back(rule_h1991b(f));
    out.push_back(rule_g1988c(f));
    out.push_back(rule_g1988d(f));
    out.push_back(rule_zhang(f));
    auto longs = rules_long(f);
    apply_lambda_declaration(longs, d.lambda_lt_rho);
    for (auto& ev : longs) out.push_back(std::move(ev));
    out.push_back(rule_fabry(f, d));
    out.push_back(rule_fatou_homog(f, d));
    out.push_back(rule_manisha(f, d));
    out.push_back(rule_th2(f, d, false));
    out.push_back(rule_th2(f, d, true));
    out.push_back(rule_fabry_nonhomog(f, d));
    out.push_back(rule_fatou_nonhomog(f, d));
    return out;
}

/// Verdicts of every rule whose hypotheses all hold. A single NoRuleApplies
/// verdict when none does; for a non-homogeneous equation on which only
/// homogeneous rules fire, an AtMostOneExceptionalSolution note is appended.
inline std::vector<Verdict> classify(const EquationSpec& spec) {
    auto evs = evaluate_rules(spec);
    std::vector<Verdict> out;
    bool nonhomog_fired = false;
    for (const auto& ev : evs) {
        if (!ev.fired) continue;
        nonhomog_fired = nonhomog_fired || is_nonhomogeneous_rule(ev.rule);
        out.push_back(ev.verdict);
    }
    if (out.empty()) {
        Verdict none;
        none.conclusion = Conclusion::NoRuleApplies;
        for (const auto& ev : evs) {
            auto failing = std::find_if(ev.verdict.hypotheses_checked.begin(), ev.verdict.hypotheses_checked.end(),
                                        [](const Hypothesis& h) { return !h.satisfied; });
            none.hypotheses_checked.push_back(
                {std::string(to_string(ev.rule)) + " fires", "fails: " + failing->name, false, failing->source});
        }
        none.citation = "no sufficient condition for infinite order applies";
        out.push_back(std::move(none));
        return out;
    }
    if (!spec.homogeneous() && !nonhomog_fired) {
        Verdict note;
        note.conclusion = Conclusion::AtMostOneExceptionalSolution;
        std::string via;
        for (const auto& v : out) via += (via.empty() ? "" : ", ") + std::string(to_string(*v.rule));
        note.hypotheses_checked.push_back(
            {"associated homogeneous equation has only infinite-order solutions", "via " + via, true,
             HypothesisSource::computed});
        note.hypotheses_checked.push_back({"H present", "yes", true, HypothesisSource::computed});
        note.citation =
            "two finite-order solutions of the non-homogeneous equation would differ by a finite-order "
            "homogeneous solution, so at most one solution has finite order (Laine, 1990)";
        out.push_back(std::move(note));
    }
    return out;
}

/// The hyper-order rho_2(f) = rho(A) claimed by the Fabry-gap and Fatou
/// component rules; reported, not certified.
inline std::optional<double> hyper_order_claim(const EquationSpec& spec) {
    for (const auto& v : classify(spec))
        if (v.rule && (*v.rule == RuleId::KumarSaini_Fabry || *v.rule == RuleId::Fatou_MC_homog)) return v.hyper_order;
    return std::nullopt;
}

}  // namespace ogl
