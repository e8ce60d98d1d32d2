#pragma once

// Structured entire functions: polynomials, exp of polynomials, and finite
// sums, products and scalar multiples of those. Every such function is an
// exponential polynomial sum_k p_k(z) e^{E_k(z)}, which is what `expand`
// computes; the tree itself keeps the shape the user wrote (so that a
// factorisation A = h e^P stays visible to the classifier).

#include <algorithm>
#include <charconv>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ogl/log_polar.hpp"
#include "ogl/polynomial.hpp"

namespace ogl {

struct ExprNode;

/// Immutable handle to an expression tree. Copies share structure.
class CoeffExpr {
public:
    /// The zero polynomial.
    CoeffExpr();

    static CoeffExpr poly(Polynomial p);
    static CoeffExpr constant(Complex c) { return poly(Polynomial::constant(c)); }
    static CoeffExpr exp_poly(Polynomial exponent);
    static CoeffExpr sum(std::vector<CoeffExpr> terms);
    static CoeffExpr product(std::vector<CoeffExpr> factors);
    static CoeffExpr scale(Complex factor, CoeffExpr child);

    const ExprNode& node() const { return *node_; }

    template <class T>
    const T* as() const;

private:
    explicit CoeffExpr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct PolyLeaf {
    Polynomial poly;
};
struct ExpPoly {
    Polynomial exponent;
};
struct SumNode {
    std::vector<CoeffExpr> terms;
};
struct ProductNode {
    std::vector<CoeffExpr> factors;
};
struct ScaleNode {
    Complex factor;
    CoeffExpr child;
};

struct ExprNode {
    std::variant<PolyLeaf, ExpPoly, SumNode, ProductNode, ScaleNode> value;
};

inline CoeffExpr::CoeffExpr() : node_(std::make_shared<const ExprNode>(ExprNode{PolyLeaf{}})) {}

inline CoeffExpr CoeffExpr::poly(Polynomial p) {
    return CoeffExpr(std::make_shared<const ExprNode>(ExprNode{PolyLeaf{std::move(p)}}));
}
inline CoeffExpr CoeffExpr::exp_poly(Polynomial exponent) {
    return CoeffExpr(std::make_shared<const ExprNode>(ExprNode{ExpPoly{std::move(exponent)}}));
}
inline CoeffExpr CoeffExpr::sum(std::vector<CoeffExpr> terms) {
    return CoeffExpr(std::make_shared<const ExprNode>(ExprNode{SumNode{std::move(terms)}}));
}
inline CoeffExpr CoeffExpr::product(std::vector<CoeffExpr> factors) {
    return CoeffExpr(std::make_shared<const ExprNode>(ExprNode{ProductNode{std::move(factors)}}));
}
inline CoeffExpr CoeffExpr::scale(Complex factor, CoeffExpr child) {
    return CoeffExpr(std::make_shared<const ExprNode>(ExprNode{ScaleNode{factor, std::move(child)}}));
}

template <class T>
const T* CoeffExpr::as() const {
    return std::get_if<T>(&node_->value);
}

inline bool operator==(const CoeffExpr& a, const CoeffExpr& b);

inline bool operator==(const PolyLeaf& a, const PolyLeaf& b) { return a.poly == b.poly; }
inline bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.exponent == b.exponent; }
inline bool operator==(const SumNode& a, const SumNode& b) { return a.terms == b.terms; }
inline bool operator==(const ProductNode& a, const ProductNode& b) { return a.factors == b.factors; }
inline bool operator==(const ScaleNode& a, const ScaleNode& b) {
    return a.factor == b.factor && a.child == b.child;
}

/// Structural equality (exact coefficient comparison).
inline bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
    if (&a.node() == &b.node()) return true;
    return a.node().value == b.node().value;
}

// ---------------------------------------------------------------------------
// Exponential-polynomial expansion

/// One term p(z) e^{E(z)} of an expanded expression. E has no constant term.
struct ExpTerm {
    Polynomial exponent;
    Polynomial coefficient;
};

namespace detail {

inline void merge_into(std::vector<ExpTerm>& acc, ExpTerm term) {
    if (term.coefficient.is_zero()) return;
    for (auto& t : acc) {
        if (t.exponent == term.exponent) {
            t.coefficient = t.coefficient + term.coefficient;
            return;
        }
    }
    acc.push_back(std::move(term));
}

inline std::vector<ExpTerm> drop_zero_terms(std::vector<ExpTerm> terms) {
    std::erase_if(terms, [](const ExpTerm& t) { return t.coefficient.is_zero(); });
    return terms;
}

}  // namespace detail

/// Expands an expression into sum_k p_k e^{E_k} with distinct, constant-free
/// E_k and nonzero p_k, sorted: highest exponent degree first, the purely
/// polynomial term (E = 0) last.
inline std::vector<ExpTerm> expand_terms(const CoeffExpr& expr) {
    std::vector<ExpTerm> out;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                if (!n.poly.is_zero()) out.push_back({Polynomial{}, n.poly});
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                Complex c = std::exp(n.exponent.constant_term());
                out.push_back({n.exponent.without_constant(), Polynomial::constant(c)});
            } else if constexpr (std::is_same_v<T, SumNode>) {
                for (const auto& t : n.terms)
                    for (auto& term : expand_terms(t)) detail::merge_into(out, std::move(term));
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                out.push_back({Polynomial{}, Polynomial::constant(1.0)});
                for (const auto& f : n.factors) {
                    auto rhs = expand_terms(f);
                    std::vector<ExpTerm> next;
                    for (const auto& a : out)
                        for (const auto& b : rhs)
                            detail::merge_into(next, {a.exponent + b.exponent, a.coefficient * b.coefficient});
                    out = std::move(next);
                }
            } else {
                for (auto& term : expand_terms(n.child)) {
                    term.coefficient = term.coefficient * n.factor;
                    detail::merge_into(out, std::move(term));
                }
            }
        },
        expr.node().value);
    out = detail::drop_zero_terms(std::move(out));
    std::sort(out.begin(), out.end(), [](const ExpTerm& a, const ExpTerm& b) {
        if (a.exponent.is_zero() != b.exponent.is_zero()) return b.exponent.is_zero();
        return polynomial_less(a.exponent, b.exponent);
    });
    return out;
}

/// Tree form of a single expanded term.
inline CoeffExpr term_to_expr(const ExpTerm& t) {
    if (t.exponent.is_zero()) return CoeffExpr::poly(t.coefficient);
    auto e = CoeffExpr::exp_poly(t.exponent);
    if (t.coefficient == Polynomial::constant(1.0)) return e;
    if (t.coefficient.is_constant()) return CoeffExpr::scale(t.coefficient.constant_term(), e);
    return CoeffExpr::product({CoeffExpr::poly(t.coefficient), e});
}

/// Canonical expanded form. Two expressions denote the same function iff
/// their expansions are structurally equal (up to floating-point rounding).
inline CoeffExpr expand(const CoeffExpr& expr) {
    auto terms = expand_terms(expr);
    if (terms.empty()) return CoeffExpr{};
    if (terms.size() == 1) return term_to_expr(terms.front());
    std::vector<CoeffExpr> parts;
    for (const auto& t : terms) parts.push_back(term_to_expr(t));
    return CoeffExpr::sum(std::move(parts));
}

/// The polynomial an expression reduces to, if it has no exponential part.
inline std::optional<Polynomial> as_polynomial(const CoeffExpr& expr) {
    auto terms = expand_terms(expr);
    if (terms.empty()) return Polynomial{};
    if (terms.size() == 1 && terms.front().exponent.is_zero()) return terms.front().coefficient;
    return std::nullopt;
}

inline bool is_zero_function(const CoeffExpr& expr) { return expand_terms(expr).empty(); }

/// True when the expression is not a polynomial.
inline bool is_transcendental(const CoeffExpr& expr) { return !as_polynomial(expr).has_value(); }

// ---------------------------------------------------------------------------
// Tidy form: what the parser returns and what differentiation produces.

namespace detail {

inline CoeffExpr scale_tidy(Complex c, const CoeffExpr& x) {
    if (c == Complex{}) return CoeffExpr{};
    if (c == Complex{1.0}) return x;
    if (auto p = x.as<PolyLeaf>()) return CoeffExpr::poly(p->poly * c);
    if (auto s = x.as<ScaleNode>()) return scale_tidy(c * s->factor, s->child);
    if (auto pr = x.as<ProductNode>()) {
        if (!pr->factors.empty()) {
            if (auto lead = pr->factors.front().as<PolyLeaf>(); lead && !lead->poly.is_constant()) {
                auto factors = pr->factors;
                factors.front() = CoeffExpr::poly(lead->poly * c);
                return CoeffExpr::product(std::move(factors));
            }
        }
    }
    return CoeffExpr::scale(c, x);
}

}  // namespace detail

/// Light normalisation that keeps the written shape: nested sums/products are
/// flattened, polynomial pieces are folded into one PolyLeaf (placed last in
/// a sum, first in a product), exp factors of a product are merged, and
/// scalars are pulled into a single Scale node. Idempotent.
inline CoeffExpr tidy(const CoeffExpr& expr) {
    return std::visit(
        [&](const auto& n) -> CoeffExpr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                return expr;
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                if (n.exponent.is_constant()) return CoeffExpr::constant(std::exp(n.exponent.constant_term()));
                return expr;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return detail::scale_tidy(n.factor, tidy(n.child));
            } else if constexpr (std::is_same_v<T, SumNode>) {
                Polynomial poly;
                std::vector<CoeffExpr> others;
                auto take = [&](const CoeffExpr& t) {
                    if (auto p = t.as<PolyLeaf>())
                        poly = poly + p->poly;
                    else
                        others.push_back(t);
                };
                for (const auto& raw : n.terms) {
                    auto t = tidy(raw);
                    if (auto s = t.template as<SumNode>())
                        for (const auto& inner : s->terms) take(inner);
                    else
                        take(t);
                }
                if (!poly.is_zero()) others.push_back(CoeffExpr::poly(poly));
                if (others.empty()) return CoeffExpr{};
                if (others.size() == 1) return others.front();
                return CoeffExpr::sum(std::move(others));
            } else {
                Complex scalar{1.0};
                Polynomial poly = Polynomial::constant(1.0);
                Polynomial exponent;
                std::vector<CoeffExpr> others;
                auto take = [&](const CoeffExpr& f) {
                    if (auto p = f.as<PolyLeaf>())
                        poly = poly * p->poly;
                    else if (auto e = f.as<ExpPoly>())
                        exponent = exponent + e->exponent;
                    else
                        others.push_back(f);
                };
                auto take_flat = [&](const CoeffExpr& f) {
                    if (auto pr = f.as<ProductNode>())
                        for (const auto& inner : pr->factors) take(inner);
                    else
                        take(f);
                };
                for (const auto& raw : n.factors) {
                    auto f = tidy(raw);
                    if (auto s = f.template as<ScaleNode>()) {
                        scalar *= s->factor;
                        take_flat(s->child);
                    } else {
                        take_flat(f);
                    }
                }
                if (poly.is_zero()) return CoeffExpr{};
                if (exponent.is_constant()) {
                    scalar *= std::exp(exponent.constant_term());
                    exponent = Polynomial{};
                }
                std::vector<CoeffExpr> factors;
                if (!poly.is_constant()) {
                    factors.push_back(CoeffExpr::poly(poly * scalar));
                    scalar = 1.0;
                } else {
                    scalar *= poly.constant_term();
                }
                if (!exponent.is_zero()) factors.push_back(CoeffExpr::exp_poly(exponent));
                for (auto& o : others) factors.push_back(std::move(o));
                if (factors.empty()) return CoeffExpr::constant(scalar);
                if (factors.size() == 1) return detail::scale_tidy(scalar, factors.front());
                return detail::scale_tidy(scalar, CoeffExpr::product(std::move(factors)));
            }
        },
        expr.node().value);
}

// ---------------------------------------------------------------------------
// Printing (inverse of the parser on tidy trees)

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline bool starts_with_minus(const std::string& s) { return !s.empty() && s.front() == '-'; }

inline std::string join_terms(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& s = parts[i];
        if (i == 0)
            out += s;
        else if (starts_with_minus(s))
            out += " - " + s.substr(1);
        else
            out += " + " + s;
    }
    return out;
}

}  // namespace detail

/// Complex literal in the expression grammar: "2", "-0.5", "3i", "(1-2i)".
inline std::string format_complex(Complex c) {
    using detail::format_double;
    if (c.imag() == 0.0) return format_double(c.real());
    if (c.real() == 0.0) return format_double(c.imag()) + "i";
    std::string im = format_double(std::abs(c.imag()));
    return "(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") + im + "i)";
}

inline std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<std::string> parts;
    for (int k = p.degree(); k >= 0; --k) {
        Complex c = p.coefficient(static_cast<std::size_t>(k));
        if (c == Complex{}) continue;
        if (k == 0) {
            parts.push_back(format_complex(c));
            continue;
        }
        std::string mono = k == 1 ? "z" : "z^" + std::to_string(k);
        if (c == Complex{1.0})
            parts.push_back(mono);
        else if (c == Complex{-1.0})
            parts.push_back("-" + mono);
        else
            parts.push_back(format_complex(c) + "*" + mono);
    }
    return detail::join_terms(parts);
}

inline std::string to_string(const CoeffExpr& expr);

namespace detail {

inline std::size_t nonzero_terms(const Polynomial& p) {
    return static_cast<std::size_t>(
        std::count_if(p.coefficients().begin(), p.coefficients().end(), [](Complex c) { return c != Complex{}; }));
}

/// Printed form of a factor, parenthesised when it would not bind as one.
inline std::string factor_string(const CoeffExpr& f) {
    std::string s = to_string(f);
    bool wrap = f.as<SumNode>() != nullptr || starts_with_minus(s);
    if (auto p = f.as<PolyLeaf>()) wrap = wrap || nonzero_terms(p->poly) > 1;
    return wrap ? "(" + s + ")" : s;
}

}  // namespace detail

inline std::string to_string(const CoeffExpr& expr) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                return format_polynomial(n.poly);
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                return "exp(" + format_polynomial(n.exponent) + ")";
            } else if constexpr (std::is_same_v<T, SumNode>) {
                std::vector<std::string> parts;
                for (const auto& t : n.terms)
                    parts.push_back(t.template as<SumNode>() ? "(" + to_string(t) + ")" : to_string(t));
                return parts.empty() ? "0" : detail::join_terms(parts);
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                if (n.factors.empty()) return "1";
                std::string out;
                for (std::size_t i = 0; i < n.factors.size(); ++i)
                    out += (i ? "*" : "") + detail::factor_string(n.factors[i]);
                return out;
            } else {
                if (n.factor == Complex{-1.0}) return "-" + detail::factor_string(n.child);
                return format_complex(n.factor) + "*" + detail::factor_string(n.child);
            }
        },
        expr.node().value);
}

// ---------------------------------------------------------------------------
// Evaluation, differentiation, order

/// Value at z in log-polar form; never overflows.
inline LogPolar evaluate(const CoeffExpr& expr, Complex z) {
    return std::visit(
        [&](const auto& n) -> LogPolar {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                return LogPolar::from_complex(n.poly(z));
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                return LogPolar::exp_of(n.exponent(z));
            } else if constexpr (std::is_same_v<T, SumNode>) {
                std::vector<LogPolar> values;
                values.reserve(n.terms.size());
                for (const auto& t : n.terms) values.push_back(evaluate(t, z));
                return log_polar_sum(values);
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                LogPolar acc = LogPolar::one();
                for (const auto& f : n.factors) acc = acc * evaluate(f, z);
                return acc;
            } else {
                return LogPolar::from_complex(n.factor) * evaluate(n.child, z);
            }
        },
        expr.node().value);
}

/// d/dz, returned in tidy form.
inline CoeffExpr differentiate(const CoeffExpr& expr) {
    auto raw = std::visit(
        [&](const auto& n) -> CoeffExpr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                return CoeffExpr::poly(n.poly.derivative());
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                return CoeffExpr::product({CoeffExpr::poly(n.exponent.derivative()), expr});
            } else if constexpr (std::is_same_v<T, SumNode>) {
                std::vector<CoeffExpr> terms;
                for (const auto& t : n.terms) terms.push_back(differentiate(t));
                return CoeffExpr::sum(std::move(terms));
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                std::vector<CoeffExpr> terms;
                for (std::size_t i = 0; i < n.factors.size(); ++i) {
                    auto factors = n.factors;
                    factors[i] = differentiate(n.factors[i]);
                    terms.push_back(CoeffExpr::product(std::move(factors)));
                }
                return CoeffExpr::sum(std::move(terms));
            } else {
                return CoeffExpr::scale(n.factor, differentiate(n.child));
            }
        },
        expr.node().value);
    return tidy(raw);
}

/// Order of growth read off the tree: polynomials 0, exp(P) deg P, and the
/// maximum over children for sums and products. Exact on expanded trees;
/// may overestimate when terms of a sum cancel.
inline double symbolic_order(const CoeffExpr& expr) {
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PolyLeaf>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, ExpPoly>) {
                return std::max(0, n.exponent.degree());
            } else if constexpr (std::is_same_v<T, SumNode>) {
                double m = 0;
                for (const auto& t : n.terms) m = std::max(m, symbolic_order(t));
                return m;
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                double m = 0;
                for (const auto& f : n.factors) m = std::max(m, symbolic_order(f));
                return m;
            } else {
                return n.factor == Complex{} ? 0.0 : symbolic_order(n.child);
            }
        },
        expr.node().value);
}

/// Order of the function itself (no cancellation overestimate).
inline double exact_order(const CoeffExpr& expr) { return symbolic_order(expand(expr)); }

}  // namespace ogl
