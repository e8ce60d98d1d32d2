#include <gtest/gtest.h>

#include "ogl/integrator.hpp"
#include "ogl/parser.hpp"

using namespace ogl;

namespace {

EquationSpec spec(const char* a, const char* b, const char* h = nullptr) {
    EquationSpec s{"test", parse_expression(a), parse_expression(b), std::nullopt, {}};
    if (h) s.H = parse_expression(h);
    return s;
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 1; k <= n; ++k) out.push_back(lo + (hi - lo) * k / n);
    return out;
}

}  // namespace

TEST(Integrator, Cosine) {
    auto samples = integrate_ray(spec("0", "1"), 0.0, 0.0, 10.0, {1.0, 0.0}, {}, grid(0, 10, 20));
    ASSERT_EQ(samples.size(), 21u);
    for (const auto& s : samples) {
        EXPECT_NEAR(std::abs(s.f().to_complex() - std::cos(s.t)), 0.0, 1e-8) << s.t;
        EXPECT_NEAR(std::abs(s.fprime().to_complex() + std::sin(s.t)), 0.0, 1e-8) << s.t;
    }
}

TEST(Integrator, ExponentialAlongAnImaginaryRay) {
    // f = e^z on arg z = pi/2 has |f| = 1 and phase t
    const double theta = std::numbers::pi / 2;
    auto samples = integrate_ray(spec("0", "-1"), theta, 0.0, 6.0, {1.0, 1.0}, {}, grid(0, 6, 12));
    for (const auto& s : samples) {
        const Complex z = s.t * std::polar(1.0, theta);
        EXPECT_NEAR(std::abs(s.f().to_complex() - std::exp(z)), 0.0, 1e-8);
    }
}

TEST(Integrator, ConstantCoefficients) {
    // f'' - 3 f' + 2 f = 0 with f(0) = 1, f'(0) = 2 is e^{2z}
    auto samples = integrate_ray(spec("-3", "2"), 0.0, 0.0, 5.0, {1.0, 2.0}, {}, grid(0, 5, 10));
    for (const auto& s : samples) {
        EXPECT_NEAR(s.log_abs_f, 2 * s.t, 1e-8);
        EXPECT_NEAR(s.log_abs_fprime, std::log(2.0) + 2 * s.t, 1e-8);
    }
}

TEST(Integrator, ForcedEquation) {
    // f = e^{-z} solves f'' + z f' + e^z f = e^{-z}(1 - z) + 1
    auto samples = integrate_ray(spec("z", "exp(z)", "exp(-z)*(1 - z) + 1"), 0.7, 0.0, 3.0, {1.0, -1.0}, {},
                                 grid(0, 3, 6));
    for (const auto& s : samples) {
        const Complex z = s.t * std::polar(1.0, 0.7);
        EXPECT_NEAR(std::abs(s.f().to_complex() / std::exp(-z) - 1.0), 0.0, 1e-8) << s.t;
    }
}

TEST(Integrator, Linearity) {
    auto s = spec("exp(z)", "z");
    auto stops = grid(0, 3, 6);
    auto u = integrate_ray(s, 0.4, 0.0, 3.0, {1.0, 0.0}, {}, stops);
    auto v = integrate_ray(s, 0.4, 0.0, 3.0, {0.0, 1.0}, {}, stops);
    const Complex a(2.0, -1.0), b(0.5, 3.0);
    auto w = integrate_ray(s, 0.4, 0.0, 3.0, {a, b}, {}, stops);
    for (std::size_t k = 0; k < w.size(); ++k) {
        const Complex combo = a * u[k].f().to_complex() + b * v[k].f().to_complex();
        EXPECT_NEAR(std::abs(w[k].f().to_complex() - combo), 0.0, 1e-7 * (1 + std::abs(combo)));
    }
}

TEST(Integrator, WronskianFollowsAbel) {
    // W' = -A W, so W(t) = exp(-int_0^z A) = exp(-z^2/2) for A = z
    auto s = spec("z", "exp(z)");
    auto stops = grid(0, 2, 8);
    auto u = integrate_ray(s, 0.0, 0.0, 2.0, {1.0, 0.0}, {}, stops);
    auto v = integrate_ray(s, 0.0, 0.0, 2.0, {0.0, 1.0}, {}, stops);
    auto w = wronskian(u, v);
    for (std::size_t k = 0; k < w.size(); ++k)
        EXPECT_NEAR(w[k].log_magnitude, -0.5 * u[k].t * u[k].t, 1e-7) << u[k].t;
    EXPECT_THROW(wronskian(u, {}), std::invalid_argument);
}

TEST(Integrator, RescalesPastDoubleRange) {
    // e^{100 t} reaches e^{3000}
    auto samples = integrate_ray(spec("0", "-10000"), 0.0, 0.0, 30.0, {1.0, 100.0}, {}, {10.0, 20.0, 30.0});
    ASSERT_EQ(samples.size(), 4u);
    for (const auto& s : samples) {
        EXPECT_NEAR(s.log_abs_f / std::max(1.0, 100 * s.t), s.t > 0 ? 1.0 : 0.0, 1e-8);
        EXPECT_TRUE(std::isfinite(s.log_abs_f));
    }
    EXPECT_GT(samples.back().accumulated_rescale, 2000.0);
}

TEST(Integrator, RecordsEveryStepWithoutStops) {
    auto samples = integrate_ray(spec("0", "1"), 0.0, 0.0, 2.0, {1.0, 0.0});
    ASSERT_GT(samples.size(), 2u);
    EXPECT_EQ(samples.front().t, 0.0);
    EXPECT_EQ(samples.back().t, 2.0);
    for (std::size_t k = 1; k < samples.size(); ++k) EXPECT_GT(samples[k].t, samples[k - 1].t);
}

TEST(Integrator, StepUnderflowReportsLastGoodT) {
    IntegratorConfig c;
    c.min_step = 0.05;
    c.initial_step = 0.05;
    try {
        integrate_ray(spec("0", "1000000"), 0.0, 0.0, 1.0, {1.0, 0.0}, c);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_GE(e.last_good_t(), 0.0);
        EXPECT_LT(e.last_good_t(), 1.0);
    }
}

TEST(Integrator, StepBudget) {
    IntegratorConfig c;
    c.max_steps = 5;
    EXPECT_THROW(integrate_ray(spec("0", "1"), 0.0, 0.0, 10.0, {1.0, 0.0}, c), IntegrationError);
}

TEST(Integrator, RejectsBadArguments) {
    EXPECT_THROW(integrate_ray(spec("0", "1"), 0.0, 1.0, 0.5, {1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(integrate_ray(spec("0", "1"), 0.0, 0.0, 1.0, {1.0, 0.0}, {}, {0.5, 0.2}), std::invalid_argument);
    IntegratorConfig bad;
    bad.rel_tol = 0.1;
    EXPECT_THROW(integrate_ray(spec("0", "1"), 0.0, 0.0, 1.0, {1.0, 0.0}, bad), std::invalid_argument);
}

TEST(CompiledExpr, MatchesTreeEvaluation) {
    for (const char* text : {"z^2 + exp(z)", "(exp(z) + 1)*exp(z^2) - 3i", "exp(-z)*(1 - z) + 1"}) {
        auto e = parse_expression(text);
        CompiledExpr c(e);
        for (Complex z : {Complex(0.3, 0.4), Complex(-2, 1), Complex(5, -3)}) {
            auto a = c(z), b = evaluate(e, z);
            EXPECT_NEAR(a.log_magnitude, b.log_magnitude, 1e-12) << text;
        }
    }
    EXPECT_TRUE(CompiledExpr(parse_expression("exp(z) - exp(z)")).is_zero());
}
