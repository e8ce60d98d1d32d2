#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ogl/log_polar.hpp"

using namespace ogl;

TEST(LogPolar, ZeroAndOne) {
    EXPECT_TRUE(LogPolar::zero().is_zero());
    EXPECT_FALSE(LogPolar::one().is_zero());
    EXPECT_EQ(LogPolar::from_complex(0.0).to_complex(), Complex{});
    EXPECT_EQ(LogPolar::one().to_complex(), Complex(1.0, 0.0));
}

TEST(LogPolar, ComplexRoundTrip) {
    for (Complex w : {Complex(3, -4), Complex(-1e-200, 2e-200), Complex(-7, 0), Complex(0, 1e150)}) {
        const Complex back = LogPolar::from_complex(w).to_complex();
        EXPECT_NEAR(std::abs(back - w) / std::abs(w), 0.0, 1e-13) << w;
    }
}

TEST(LogPolar, PhaseIsNormalized) {
    auto v = LogPolar::from_parts(0.0, 7 * std::numbers::pi);
    EXPECT_LE(std::abs(v.phase), std::numbers::pi + 1e-15);
    EXPECT_NEAR(v.to_complex().real(), -1.0, 1e-14);
}

TEST(LogPolar, ProductQuotientNegation) {
    const Complex a(1.5, -2), b(-0.25, 3);
    const auto la = LogPolar::from_complex(a), lb = LogPolar::from_complex(b);
    EXPECT_NEAR(std::abs((la * lb).to_complex() - a * b), 0.0, 1e-13);
    EXPECT_NEAR(std::abs((la / lb).to_complex() - a / b), 0.0, 1e-13);
    EXPECT_NEAR(std::abs((-la).to_complex() + a), 0.0, 1e-14);
    EXPECT_TRUE((la * LogPolar::zero()).is_zero());
}

TEST(LogPolar, ExpOfBeyondDoubleRange) {
    // e^{2000 + i} has no double representation but its log does
    auto v = LogPolar::exp_of(Complex(2000.0, 1.0));
    EXPECT_DOUBLE_EQ(v.log_magnitude, 2000.0);
    EXPECT_NEAR(v.phase, 1.0, 1e-15);
    EXPECT_FALSE(v.fits_in_double());
    EXPECT_NEAR(std::abs(v.to_complex_scaled(2000.0) - std::polar(1.0, 1.0)), 0.0, 1e-15);
}

TEST(LogPolarSum, MatchesDirectArithmetic) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Complex> xs(1 + trial % 7);
        std::vector<LogPolar> ls;
        Complex direct{};
        for (auto& x : xs) {
            x = Complex(g(rng), g(rng));
            direct += x;
            ls.push_back(LogPolar::from_complex(x));
        }
        const Complex sum = log_polar_sum(ls).to_complex();
        double scale = 0;
        for (auto x : xs) scale += std::abs(x);
        EXPECT_LE(std::abs(sum - direct), 1e-14 * scale) << "trial " << trial;
    }
}

TEST(LogPolarSum, HugeTermsKeepRelativeAccuracy) {
    const double shift = 5000.0;
    std::vector<LogPolar> terms = {LogPolar::from_parts(shift + std::log(3.0), 0.0),
                                   LogPolar::from_parts(shift + std::log(4.0), std::numbers::pi / 2)};
    auto s = log_polar_sum(terms);
    EXPECT_NEAR(s.log_magnitude - shift, std::log(5.0), 1e-15 * shift);
    EXPECT_NEAR(s.phase, std::atan2(4.0, 3.0), 1e-15 * shift);
}

TEST(LogPolarSum, ExactCancellationIsZero) {
    auto a = LogPolar::from_parts(800.0, 0.3);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_TRUE(log_polar_sum({}).is_zero());
}

TEST(LogPolarSum, SmallTermsSurviveNextToLargeOnes) {
    // 1 + 1e-17 - 1 loses the small term in plain double sums without compensation
    std::vector<LogPolar> terms = {LogPolar::one(), LogPolar::from_complex(1e-17), LogPolar::from_complex(-1.0)};
    auto s = log_polar_sum(terms);
    ASSERT_FALSE(s.is_zero());
    EXPECT_NEAR(s.to_complex().real(), 1e-17, 1e-30);
}
