#include <gtest/gtest.h>

#include "ogl/liouville.hpp"
#include "ogl/parser.hpp"

using namespace ogl;

namespace {

EquationSpec spec(const char* a, const char* b) {
    return {"test", parse_expression(a), parse_expression(b), std::nullopt, {}};
}

}  // namespace

TEST(Liouville, PotentialClosedForms) {
    EXPECT_EQ(liouville_transform(spec("2*z", "z^2")).potential, CoeffExpr::constant(-1.0));
    EXPECT_EQ(liouville_transform(spec("0", "z")).potential, expand(parse_expression("z")));
    EXPECT_EQ(liouville_transform(spec("exp(z)", "z^4")).potential,
              expand(parse_expression("z^4 - 0.25*exp(2*z) - 0.5*exp(z)")));
}

TEST(Liouville, RejectsForcedEquations) {
    auto s = spec("z", "1");
    s.H = parse_expression("1");
    EXPECT_THROW(liouville_transform(s), SpecError);
}

TEST(Liouville, RayIntegralOfExponential) {
    // int_0^{r e^{i theta}} e^s ds = e^{r e^{i theta}} - 1
    const double theta = 0.8;
    std::vector<double> radii = {0.5, 1.0, 2.0, 4.0};
    auto I = ray_integral(parse_expression("exp(z)"), theta, radii);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const Complex expect = std::exp(radii[k] * std::polar(1.0, theta)) - 1.0;
        EXPECT_NEAR(std::abs(I[k] - expect), 0.0, 1e-9 * (1 + std::abs(expect)));
    }
}

TEST(Liouville, ConversionFactorOnDecaySector) {
    auto prof = conversion_factor_profile(spec("exp(z)", "1"), std::numbers::pi, {1.0, 10.0, 30.0});
    for (auto [r, v] : prof) EXPECT_NEAR(v, 0.5 * (1.0 - std::exp(-r)), 1e-9);
}

TEST(Liouville, ReconstructionMatchesDirectIntegration) {
    auto s = spec("2*z", "z^2");
    std::vector<double> stops = {1.0, 2.0, 3.0, 4.0, 5.0};
    auto f = integrate_ray(s, 0.0, 0.0, 5.0, {1.0, 0.5}, {}, stops);
    auto run = integrate_transformed(s, 0.0, 0.0, 5.0, {1.0, 0.5}, {}, stops);
    ASSERT_EQ(f.size(), run.f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        EXPECT_NEAR(f[k].log_abs_f, run.f[k].log_abs_f, 1e-6 * (1 + std::abs(f[k].log_abs_f)));
        EXPECT_NEAR(f[k].log_abs_fprime, run.f[k].log_abs_fprime, 1e-6 * (1 + std::abs(f[k].log_abs_fprime)));
    }
}

TEST(Liouville, ReconstructionOnOtherRay) {
    auto s = spec("exp(z)", "z");
    std::vector<double> stops = {0.5, 1.0, 1.5, 2.0};
    auto f = integrate_ray(s, 2.0, 0.0, 2.0, {1.0, -1.0}, {}, stops);
    auto run = integrate_transformed(s, 2.0, 0.0, 2.0, {1.0, -1.0}, {}, stops);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Complex a = f[k].f().to_complex(), b = run.f[k].f().to_complex();
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-7 * (1 + std::abs(a)));
    }
}
