#pragma once

// Grammar (whitespace-insensitive):
//   expr   := ["-"] term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := NUMBER | NUMBER "i" | "i" | "z" ("^" UINT)? | "exp" "(" expr ")" | "(" expr ")"
// exp arguments must reduce to polynomials.

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ogl/expr.hpp"

namespace ogl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    CoeffExpr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return tidy(e);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    CoeffExpr expr() {
        std::vector<CoeffExpr> terms;
        if (accept('-'))
            terms.push_back(CoeffExpr::scale(-1.0, term()));
        else
            terms.push_back(term());
        for (;;) {
            if (accept('+'))
                terms.push_back(term());
            else if (accept('-'))
                terms.push_back(CoeffExpr::scale(-1.0, term()));
            else
                break;
        }
        return terms.size() == 1 ? terms.front() : CoeffExpr::sum(std::move(terms));
    }

    CoeffExpr term() {
        std::vector<CoeffExpr> factors{factor()};
        while (accept('*')) factors.push_back(factor());
        return factors.size() == 1 ? factors.front() : CoeffExpr::product(std::move(factors));
    }

    CoeffExpr factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = number();
            if (accept('i')) return CoeffExpr::constant({0.0, value});
            return CoeffExpr::constant(value);
        }
        if (c == 'z') {
            ++pos_;
            std::size_t power = 1;
            if (accept('^')) power = unsigned_integer();
            return CoeffExpr::poly(Polynomial::monomial(1.0, power));
        }
        if (c == 'i') {
            ++pos_;
            return CoeffExpr::constant({0.0, 1.0});
        }
        if (text_.substr(pos_, 3) == "exp") {
            pos_ += 3;
            expect('(');
            std::size_t arg_start = pos_;
            auto inner = expr();
            expect(')');
            auto poly = as_polynomial(inner);
            if (!poly) throw ParseError("exp applied to a non-polynomial argument", arg_start);
            return CoeffExpr::exp_poly(*poly);
        }
        if (c == '\0') fail("unexpected end of expression");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    double number() {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits();
            else
                pos_ = save;
        }
        std::string lexeme(text_.substr(start, pos_ - start));
        if (lexeme.front() == '.') lexeme.insert(lexeme.begin(), '0');
        double value = 0;
        auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc{} || ptr != lexeme.data() + lexeme.size()) {
            pos_ = start;
            fail("malformed number");
        }
        return value;
    }

    std::size_t unsigned_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || value > 64) {
            pos_ = start;
            fail("exponent out of range");
        }
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a coefficient expression and returns it in tidy form.
inline CoeffExpr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace ogl
