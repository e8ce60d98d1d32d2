#include <gtest/gtest.h>

#include <random>

#include "ogl/parser.hpp"

using namespace ogl;

namespace {

Complex value(const CoeffExpr& e, Complex z) { return evaluate(e, z).to_complex(); }

const char* const kSamples[] = {"z^3 - 2*z + 1",       "exp(z)",
                                "exp(z^2 - i*z)",      "z*exp(-z) + 3",
                                "(exp(z) + 1)*exp(z^2)", "exp(z)*exp(-z) + z",
                                "0.5 - 0.25*exp(2i*z) - 0.25*exp(-2i*z)"};

}  // namespace

TEST(Differentiate, AgreesWithCentralDifferences) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const char* text : kSamples) {
        const auto f = parse_expression(text);
        const auto df = differentiate(f);
        for (int k = 0; k < 10; ++k) {
            const Complex z(u(rng), u(rng));
            const double h = 1e-5;
            const Complex fd = (value(f, z + h) - value(f, z - h)) / (2 * h);
            const Complex exact = value(df, z);
            EXPECT_NEAR(std::abs(fd - exact), 0.0, 1e-7 * (1 + std::abs(exact))) << text << " at " << z;
        }
    }
}

TEST(Differentiate, ClosedForms) {
    EXPECT_EQ(expand(differentiate(parse_expression("exp(z^2)"))), expand(parse_expression("2*z*exp(z^2)")));
    EXPECT_EQ(expand(differentiate(parse_expression("z^3"))), expand(parse_expression("3*z^2")));
    EXPECT_TRUE(is_zero_function(differentiate(parse_expression("7 - 2i"))));
}

TEST(Expand, CollectsLikeExponentials) {
    const auto e = expand(parse_expression("exp(z) + 2*exp(z) - 3*exp(z)"));
    EXPECT_TRUE(is_zero_function(e));
    const auto terms = expand_terms(parse_expression("exp(z)*exp(-z) + z"));
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_TRUE(terms.front().exponent.is_zero());
    EXPECT_EQ(terms.front().coefficient, Polynomial({1.0, 1.0}));
}

TEST(Expand, PreservesValues) {
    for (const char* text : kSamples) {
        const auto f = parse_expression(text);
        const auto g = expand(f);
        for (Complex z : {Complex(0.4, 0.9), Complex(-2.0, 0.1)})
            EXPECT_NEAR(std::abs(value(f, z) - value(g, z)), 0.0, 1e-12 * (1 + std::abs(value(f, z)))) << text;
    }
}

TEST(Order, SymbolicAndExact) {
    EXPECT_EQ(symbolic_order(parse_expression("z^9")), 0.0);
    EXPECT_EQ(symbolic_order(parse_expression("exp(z^2) + exp(z)")), 2.0);
    EXPECT_EQ(exact_order(parse_expression("(exp(z) + 1)*exp(z^2)")), 2.0);
    // the tree alone overestimates when exponentials cancel
    const auto cancels = parse_expression("exp(z^3)*exp(-z^3) + exp(z)");
    EXPECT_GE(symbolic_order(cancels), exact_order(cancels));
    EXPECT_EQ(exact_order(cancels), 1.0);
}

TEST(Order, SymbolicNeverBelowExact) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> deg(0, 4), pick(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<CoeffExpr> terms;
        for (int k = 0; k < 3; ++k) {
            const int d = deg(rng);
            auto e = CoeffExpr::exp_poly(Polynomial::monomial(pick(rng) % 2 ? 1.0 : -1.0, static_cast<std::size_t>(d)));
            terms.push_back(pick(rng) == 0 ? CoeffExpr::product({e, CoeffExpr::exp_poly(Polynomial::monomial(-1.0, d))})
                                           : e);
        }
        const auto s = CoeffExpr::sum(terms);
        EXPECT_GE(symbolic_order(s), exact_order(s));
    }
}

TEST(Evaluate, StaysFiniteBeyondOverflow) {
    // |e^{z^2}| at z = 40 is e^{1600}
    auto v = evaluate(parse_expression("exp(z^2) + z"), Complex(40.0, 0.0));
    EXPECT_NEAR(v.log_magnitude, 1600.0, 1e-9);
    EXPECT_TRUE(std::isfinite(v.log_magnitude));
}

TEST(Tidy, Idempotent) {
    for (const char* text : kSamples) {
        const auto t = tidy(parse_expression(text));
        EXPECT_EQ(tidy(t), t) << text;
    }
}
