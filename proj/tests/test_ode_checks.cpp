#include <gtest/gtest.h>

#include "ogl/ode_checks.hpp"
#include "ogl/parser.hpp"

using namespace ogl;

namespace {

EquationSpec spec(const char* a, const char* b, const char* h = nullptr) {
    EquationSpec s{"test", parse_expression(a), parse_expression(b), std::nullopt, {}};
    if (h) s.H = parse_expression(h);
    return s;
}

const std::vector<Complex> kPoints = {{0.1, 0.2}, {1.0, -2.0}, {-2.5, 1.0}, {0.0, 2.9}, {2.0, 2.0}};

}  // namespace

TEST(Residual, ExactSolutions) {
    EXPECT_LT(residual_check(parse_expression("exp(z)"), spec("-exp(z)", "exp(z) - 1"), kPoints), 1e-12);
    EXPECT_LT(residual_check(parse_expression("exp(-z)"), spec("z", "exp(z)", "exp(-z)*(1 - z) + 1"), kPoints),
              1e-12);
    EXPECT_LT(residual_check(parse_expression("exp(2*z)"), spec("-3", "2"), kPoints), 1e-12);
}

TEST(Residual, WrongSignIsDetected) {
    EXPECT_GT(residual_check(parse_expression("exp(z)"), spec("exp(z)", "exp(z) - 1"), {Complex(1.0, 0.0)}), 0.1);
}

TEST(Residual, LargeArgumentsStayFinite) {
    const double r = residual_check(parse_expression("exp(z^2)"), spec("0", "-4*z^2 - 2"), {Complex(30.0, 1.0)});
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_LT(r, 1e-12);
}

TEST(Decay, AlgebraicDecayOnCriticalRay) {
    auto rep = check_decay_on_ray(parse_expression("z"), 0.0, {1, 2, 90, 100});
    // t^{-1/4} between t ~ 1.5 and t ~ 95
    EXPECT_LT(rep.ratio, 0.5);
    EXPECT_GT(rep.ratio, 0.2);
    EXPECT_EQ(rep.tail_exp_part_sup, 0.0);
}

TEST(Decay, ConstantPotentialKeepsAmplitude) {
    auto rep = check_decay_on_ray(parse_expression("1"), 0.0, DecayWindows::fractions(0, 50));
    EXPECT_NEAR(rep.ratio, 1.0, 1e-6);
}

TEST(Decay, ExponentialPartVanishesOnDecaySector) {
    auto rep = check_decay_on_ray(parse_expression("z^4 - 0.25*exp(2*z) - 0.5*exp(z)"), std::numbers::pi,
                                  DecayWindows::fractions(1, 20));
    EXPECT_LT(rep.tail_exp_part_sup, 1e-6);
}

TEST(Decay, Windows) {
    auto w = DecayWindows::fractions(10, 20, 0.2);
    EXPECT_DOUBLE_EQ(w.head_hi, 12);
    EXPECT_DOUBLE_EQ(w.tail_lo, 18);
    EXPECT_THROW(check_decay_on_ray(parse_expression("1"), 0.0, {2, 1, 3, 4}), std::invalid_argument);
    EXPECT_THROW(check_decay_on_ray(parse_expression("1"), 0.0, {1, 2, 3, 4}, {}, 1), std::invalid_argument);
}
