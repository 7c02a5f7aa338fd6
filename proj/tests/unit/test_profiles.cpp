#include <wittenlab/errors.hpp>
#include <wittenlab/profiles.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wittenlab;

namespace {

double integrate(const PotentialProfile& p, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return p.phi(x); }, a, b, 15, 1e-14);
}

double abs_integrate(const PotentialProfile& p, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return std::abs(p.phi(x)); }, a, b, 15, 1e-14);
}

std::vector<PotentialProfile> suite() {
    return {
        builtin_profile(ProfileKind::gaussian, 1.0, 1.0),
        builtin_profile(ProfileKind::gaussian, 0.7, -2.0),
        builtin_profile(ProfileKind::sech2, 1.3, 0.8),
        builtin_profile(ProfileKind::bump, 1.0, 1.5),
        builtin_profile(ProfileKind::bump, 0.5, -0.7, 2.0),
    };
}

}  // namespace

TEST(Profiles, GaussianTotalIntegral) {
    EXPECT_NEAR(builtin_profile(ProfileKind::gaussian, 1.0, 1.0).total_integral(), 1.772453851, 1e-9);
    EXPECT_NEAR(builtin_profile(ProfileKind::gaussian, 1.0, -2.0).total_integral(),
                -2.0 * std::sqrt(std::numbers::pi), 1e-14);
}

TEST(Profiles, ZeroAmplitudeBump) {
    const auto p = builtin_profile(ProfileKind::bump, 1.0, 0.0);
    EXPECT_EQ(p.total_integral(), 0.0);
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.sign(0.0), 0.0);
}

TEST(Profiles, AntiderivativeMatchesQuadrature) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (const auto& p : suite()) {
        EXPECT_EQ(p.antiderivative(0.0), 0.0);
        for (int k = 0; k < 25; ++k) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            // Split at the bump kinks so the reference quadrature stays accurate.
            double ref = 0.0;
            std::vector<double> cuts{a};
            for (double c : p.breakpoints()) if (c > a && c < b) cuts.push_back(c);
            cuts.push_back(b);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) ref += integrate(p, cuts[i], cuts[i + 1]);
            EXPECT_NEAR(p.antiderivative(b) - p.antiderivative(a), ref, 1e-10)
                << to_string(p.kind()) << " on [" << a << ", " << b << "]";
        }
    }
}

TEST(Profiles, LimitsAndNorms) {
    for (const auto& p : suite()) {
        EXPECT_NEAR(p.antiderivative_plus_infinity() - p.antiderivative_minus_infinity(),
                    p.total_integral(), 1e-14);
        EXPECT_NEAR(p.antiderivative(60.0), p.antiderivative_plus_infinity(), 1e-12);
        EXPECT_NEAR(p.antiderivative(-60.0), p.antiderivative_minus_infinity(), 1e-12);
        EXPECT_GE(p.l1_norm(), std::abs(p.total_integral()));
        EXPECT_EQ(p.sup_norm(), std::abs(p.amplitude()));
    }
}

TEST(Profiles, TailRadiusMonotoneAndBounding) {
    for (const auto& p : suite()) {
        double previous = std::numeric_limits<double>::infinity();
        for (double eps : {1e-14, 1e-12, 1e-9, 1e-6, 1e-3, 1e-1}) {
            const double r = p.tail_radius(eps);
            EXPECT_LE(r, previous);
            previous = r;
            const double tail = abs_integrate(p, r, r + 80.0) + abs_integrate(p, -r - 80.0, -r);
            if (p.kind() == ProfileKind::bump) {
                EXPECT_EQ(tail, 0.0);
            } else {
                EXPECT_LT(tail, eps);
                EXPECT_NEAR(p.tail_mass(r), tail, 1e-13 + 1e-6 * tail);
            }
        }
    }
}

TEST(Profiles, BumpShape) {
    const auto p = builtin_profile(ProfileKind::bump, 0.5, 2.0, 1.5);
    EXPECT_EQ(p.tail_radius(1e-12), 1.5);
    EXPECT_EQ(p.phi(0.9), 2.0);
    EXPECT_EQ(p.phi(1.5), 0.0);
    EXPECT_NEAR(p.phi(1.25), 1.0, 1e-15);
    EXPECT_NEAR(p.total_integral(), 2.0 * (2 * 1.5 - 0.5), 1e-14);
    EXPECT_EQ(p.breakpoints(), (std::vector<double>{-1.5, -1.0, 1.0, 1.5}));
    const auto cos2 = builtin_profile(ProfileKind::bump, 1.0, 1.0);
    EXPECT_NEAR(cos2.phi(0.5), std::pow(std::cos(std::numbers::pi / 4), 2), 1e-15);
    EXPECT_EQ(cos2.tail_radius(1e-3), 1.0);
}

TEST(Profiles, InvalidArguments) {
    EXPECT_THROW(builtin_profile(ProfileKind::gaussian, 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(builtin_profile(ProfileKind::sech2, -1.0, 1.0), InvalidArgument);
    EXPECT_THROW(builtin_profile(ProfileKind::gaussian, 1.0, std::nan("")), InvalidArgument);
    EXPECT_THROW(builtin_profile(ProfileKind::bump, 1.0, 1.0, 0.5), InvalidArgument);
    EXPECT_THROW(builtin_profile(ProfileKind::gaussian, 1.0, 1.0, 2.0), InvalidArgument);
    EXPECT_THROW(builtin_profile(ProfileKind::gaussian, 1.0, 1.0).tail_radius(0.0), InvalidArgument);
    EXPECT_THROW(profile_kind_from_string("square"), InvalidArgument);
    EXPECT_EQ(profile_kind_from_string(to_string(ProfileKind::sech2)), ProfileKind::sech2);
}

TEST(Profiles, SymmetrizedFactors) {
    const auto p = builtin_profile(ProfileKind::gaussian, 1.0, -3.0);
    for (double x : {-1.0, 0.0, 0.4}) {
        EXPECT_NEAR(p.sign(x) * p.sqrt_abs(x) * p.sqrt_abs(x), p.phi(x), 1e-14);
    }
}

TEST(Switch, LimitsAndNormalization) {
    const SwitchProfile theta(0.8);
    EXPECT_NEAR(theta.theta(-40.0), 0.0, 1e-15);
    EXPECT_NEAR(theta.theta(40.0), 1.0, 1e-15);
    for (double t = -5.0; t <= 5.0; t += 0.25) {
        EXPECT_GE(theta.theta(t), 0.0);
        EXPECT_LE(theta.theta(t), 1.0);
    }
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { return theta.theta_prime(t); }, -60.0, 60.0, 15, 1e-14);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_THROW(SwitchProfile(0.0), InvalidArgument);
}

TEST(Chi, Examples) {
    EXPECT_EQ(chi(1, 0.0), 1.0);
    EXPECT_NEAR(chi(3, 4.0), 0.6, 1e-15);
    EXPECT_THROW(chi(0, 1.0), InvalidArgument);
    for (int n : {10, 100, 1000}) {
        const double nu = 1.7;
        EXPECT_NEAR(chi(n, nu), 1.0 - nu * nu / (2.0 * n * n), 3.0 * std::pow(nu / n, 4));
    }
}

TEST(C0, Examples) {
    EXPECT_NEAR(c0(builtin_profile(ProfileKind::gaussian, 1.0, 1.0)), 0.2820947918, 1e-10);
    EXPECT_EQ(c0(builtin_profile(ProfileKind::sech2, 1.0, 0.0)), 0.0);
    const double base = c0(builtin_profile(ProfileKind::sech2, 1.2, 1.0));
    EXPECT_NEAR(c0(builtin_profile(ProfileKind::sech2, 1.2, -3.5)), -3.5 * base, 1e-14);
}
