#include <gtest/gtest.h>

#include <random>

#include "ogl/indicator.hpp"

using namespace ogl;

namespace {

Polynomial random_polynomial(std::mt19937_64& rng, int degree) {
    std::normal_distribution<double> g;
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = Complex(g(rng), g(rng));
    if (c.back() == Complex{}) c.back() = 1.0;
    return Polynomial(c);
}

}  // namespace

TEST(Delta, Examples) {
    const Polynomial z2 = {0.0, 0.0, 1.0};
    EXPECT_DOUBLE_EQ(delta(z2, 0.0), 1.0);
    EXPECT_NEAR(delta(z2, std::numbers::pi / 2), -1.0, 1e-15);
    const Polynomial iz = {0.0, Complex(0.0, 1.0)};
    EXPECT_NEAR(delta(iz, std::numbers::pi / 2), -1.0, 1e-15);
    EXPECT_THROW(delta(Polynomial{2.0}, 0.0), std::invalid_argument);
}

TEST(CriticalRays, ExpZ) {
    auto d = critical_rays_exp(Polynomial{0.0, 1.0});
    ASSERT_EQ(d.rays.size(), 2u);
    EXPECT_NEAR(d.rays[0], std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(d.rays[1], 3 * std::numbers::pi / 2, 1e-15);
    ASSERT_EQ(d.sectors.size(), 3u);
    EXPECT_EQ(d.sectors[0].sign, SectorSign::positive);
    EXPECT_EQ(d.sectors[1].sign, SectorSign::negative);
    EXPECT_EQ(d.sectors[2].sign, SectorSign::positive);
}

TEST(CriticalRays, RayAtZeroIsNotDuplicated) {
    // P = i z: delta = -sin(theta), zero at 0 and pi
    auto d = critical_rays_exp(Polynomial{0.0, Complex(0.0, 1.0)});
    ASSERT_EQ(d.rays.size(), 2u);
    EXPECT_EQ(d.rays[0], 0.0);
    EXPECT_NEAR(d.rays[1], std::numbers::pi, 1e-15);
    EXPECT_EQ(d.sectors.size(), 2u);
}

TEST(CriticalRays, RandomPolynomialProperties) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto P = random_polynomial(rng, deg(rng));
        const int n = P.degree();
        const auto d = critical_rays_exp(P);
        ASSERT_EQ(d.rays.size(), static_cast<std::size_t>(2 * n));
        for (double r : d.rays) {
            EXPECT_LT(std::abs(delta(P, r)), 1e-12 * std::abs(P.leading()));
            EXPECT_GE(r, 0.0);
            EXPECT_LT(r, kTwoPi);
        }
        for (std::size_t k = 1; k < d.sectors.size(); ++k) {
            EXPECT_NE(d.sectors[k].sign, d.sectors[k - 1].sign);
            EXPECT_DOUBLE_EQ(d.sectors[k].theta_low, d.sectors[k - 1].theta_high);
        }
        for (const auto& s : d.sectors) {
            const double mid = 0.5 * (s.theta_low + s.theta_high);
            EXPECT_EQ(delta(P, mid) > 0, s.sign == SectorSign::positive);
        }
        const auto Q = random_polynomial(rng, deg(rng));
        const auto rays = critical_rays_poly(Q);
        ASSERT_EQ(rays.size(), static_cast<std::size_t>(Q.degree() + 2));
        const double spacing = kTwoPi / (Q.degree() + 2);
        for (std::size_t k = 1; k < rays.size(); ++k) EXPECT_NEAR(rays[k] - rays[k - 1], spacing, 1e-12);
        EXPECT_NEAR(rays.front() + kTwoPi - rays.back(), spacing, 1e-12);
    }
}

TEST(CriticalRays, PolynomialPotential) {
    // Q = z: rays where z^3 is real and positive after rotation, i.e. 0, 2pi/3, 4pi/3
    auto rays = critical_rays_poly(Polynomial{0.0, 1.0});
    ASSERT_EQ(rays.size(), 3u);
    EXPECT_NEAR(rays[0], 0.0, 1e-15);
    EXPECT_NEAR(rays[1], kTwoPi / 3, 1e-15);
    EXPECT_THROW(critical_rays_poly(Polynomial{1.0}), std::invalid_argument);
}
