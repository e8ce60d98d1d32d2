#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ogl/log_polar.hpp"

namespace ogl {

/// Complex polynomial, coefficients lowest degree first. Trailing zero
/// coefficients are trimmed on construction; the zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
    Polynomial(std::initializer_list<Complex> coefficients) : coeffs_(coefficients) { trim(); }

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    /// c * z^k
    static Polynomial monomial(Complex c, std::size_t k) {
        std::vector<Complex> v(k + 1);
        v[k] = c;
        return Polynomial(std::move(v));
    }

    const std::vector<Complex>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Complex coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
    Complex constant_term() const { return coefficient(0); }

    Complex operator()(Complex z) const {
        Complex acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return Polynomial(std::move(d));
    }

    /// Same polynomial with the constant term removed.
    Polynomial without_constant() const {
        if (coeffs_.empty()) return {};
        auto v = coeffs_;
        v[0] = Complex{};
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coefficient(k) + b.coefficient(k);
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * Complex{-1.0}; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Polynomial& a, Complex c) {
        std::vector<Complex> v(a.coeffs_);
        for (auto& x : v) x *= c;
        return Polynomial(std::move(v));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

/// Lexicographic order from the top coefficient down; only used to give
/// canonical forms a deterministic term order.
inline bool polynomial_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        Complex x = a.coefficient(static_cast<std::size_t>(k));
        Complex y = b.coefficient(static_cast<std::size_t>(k));
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace ogl
