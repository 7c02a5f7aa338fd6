#include <wittenlab/errors.hpp>
#include <wittenlab/kernels.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wittenlab;

namespace {

const cplx I{0.0, 1.0};

// i (n/2) int e^{iz(x - s)} theta(+/-(x - s)) e^{-n|s - x'|} ds by adaptive quadrature.
cplx mollified_reference(int n, const SpectralPoint& z, double x, double xp) {
    const double dn = n;
    auto integrand = [&](double s) { return std::exp(I * z.z() * (x - s)) * std::exp(-dn * std::abs(s - xp)); };
    auto piece = [&](double a, double b) {
        auto re = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double s) { return integrand(s).real(); }, a, b, 20, 1e-15);
        auto im = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double s) { return integrand(s).imag(); }, a, b, 20, 1e-15);
        return cplx(re, im);
    };
    const double reach = 45.0 / dn + 45.0 / std::max(1e-3, std::abs(z.z().imag()) + dn);
    cplx sum;
    if (z.upper()) {
        // s in (-inf, x], split at x' when it falls inside.
        const double lo = std::min(x, xp) - reach;
        if (xp < x) {
            sum = piece(lo, xp) + piece(xp, x);
        } else {
            sum = piece(lo, x);
        }
        return I * 0.5 * dn * sum;
    }
    const double hi = std::max(x, xp) + reach;
    sum = xp > x ? piece(x, xp) + piece(xp, hi) : piece(x, hi);
    return -I * 0.5 * dn * sum;
}

}  // namespace

TEST(FreeResolvent, Examples) {
    const auto z = SpectralPoint::off_axis({0.0, 1.0});
    const cplx v = free_resolvent_kernel(z, 1.0, 0.0);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.367879441171, 1e-12);
    EXPECT_EQ(free_resolvent_kernel(z, 0.0, 1.0), cplx{});
    EXPECT_EQ(free_resolvent_kernel(z, 0.3, 0.3), cplx{});
    const auto b = SpectralPoint::boundary(2.5, Side::upper);
    EXPECT_NEAR(std::abs(free_resolvent_kernel(b, 1.0, -0.4)), 1.0, 1e-15);
    const auto lower = SpectralPoint::boundary(2.5, Side::lower);
    EXPECT_EQ(free_resolvent_kernel(lower, 1.0, -0.4), cplx{});
    EXPECT_NEAR(std::abs(free_resolvent_kernel(lower, -0.4, 1.0)), 1.0, 1e-15);
}

TEST(FreeResolvent, RealParameterNeedsSide) {
    EXPECT_THROW(SpectralPoint::off_axis({1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(SpectralPoint::boundary(std::nan(""), Side::upper), InvalidArgument);
    EXPECT_FALSE(SpectralPoint::off_axis({1.0, -0.5}).upper());
}

TEST(PerturbedResolvent, PhaseFactor) {
    const auto g = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    const auto zero = builtin_profile(ProfileKind::gaussian, 1.0, 0.0);
    const auto z = SpectralPoint::off_axis({0.0, 1.0});
    const cplx expected = I * std::exp(-1.0) * std::polar(1.0, -0.5 * std::sqrt(M_PI) * std::erf(1.0));
    EXPECT_LT(std::abs(perturbed_resolvent_kernel(g, z, 1.0, 0.0) - expected), 1e-15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const double x = u(rng), xp = u(rng);
        const auto w = SpectralPoint::off_axis({u(rng), 0.3});
        EXPECT_EQ(perturbed_resolvent_kernel(zero, w, x, xp), free_resolvent_kernel(w, x, xp));
        EXPECT_NEAR(std::abs(perturbed_resolvent_kernel(g, w, x, xp)),
                    std::abs(free_resolvent_kernel(w, x, xp)), 1e-15);
    }
}

TEST(BirmanSchwinger, Examples) {
    const auto g = builtin_profile(ProfileKind::gaussian, 1.0, -1.0);
    const auto nu0 = SpectralPoint::boundary(0.0, Side::upper);
    const cplx v = bs_kernel(g, nu0, 0.5, -0.2);
    EXPECT_NEAR(v.real(), 0.0, 1e-16);
    EXPECT_NEAR(v.imag(), -std::sqrt(std::abs(g.phi(0.5) * g.phi(-0.2))), 1e-15);
    const auto bump = builtin_profile(ProfileKind::bump, 1.0, 1.0);
    EXPECT_EQ(bs_kernel(bump, nu0, 1.5, 0.0), cplx{});
    EXPECT_EQ(bs_kernel(bump, nu0, 0.5, 0.5), cplx{});
}

TEST(Mollified, ClosedFormMatchesQuadrature) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> freq(-6.0, 6.0);
    std::uniform_int_distribution<int> index(1, 12);
    for (int k = 0; k < 20; ++k) {
        const int n = index(rng);
        const double x = pos(rng), xp = pos(rng);
        const double nu = freq(rng);
        for (const SpectralPoint& z :
             {SpectralPoint::boundary(nu, Side::upper), SpectralPoint::boundary(nu, Side::lower),
              SpectralPoint::off_axis({nu, 0.7}), SpectralPoint::off_axis({nu, -0.4})}) {
            const cplx closed = mollified_green(n, z, x, xp);
            const cplx ref = mollified_reference(n, z, x, xp);
            EXPECT_LT(std::abs(closed - ref), 1e-10)
                << "n=" << n << " nu=" << nu << " x=" << x << " x'=" << xp;
        }
    }
}

TEST(Mollified, InnerIntegralExamples) {
    // (n/2) int_{-inf}^{x} e^{-i nu s} e^{-n|s - x'|} ds; mollified_green carries i e^{i nu x}.
    const int n = 5;
    const double nu = 1.3;
    auto inner = [&](double x, double xp) {
        return mollified_green(n, SpectralPoint::boundary(nu, Side::upper), x, xp) * std::exp(-I * nu * x) / I;
    };
    {
        const double x = 0.2, xp = 0.9;
        const cplx expected = 0.5 * n * std::exp(-I * nu * x) * std::exp(-n * (xp - x)) / (double(n) - I * nu);
        EXPECT_LT(std::abs(inner(x, xp) - expected), 1e-14);
    }
    {
        const double x = 0.7, xp = -0.1;
        const cplx expected = std::exp(-I * nu * xp) * double(n * n) / (n * n + nu * nu) -
                              0.5 * n * std::exp(-I * nu * x) * std::exp(-n * (x - xp)) / (double(n) + I * nu);
        EXPECT_LT(std::abs(inner(x, xp) - expected), 1e-14);
    }
}

TEST(Mollified, ContinuousAcrossDiagonal) {
    for (const auto side : {Side::upper, Side::lower}) {
        const auto z = SpectralPoint::boundary(2.0, side);
        const cplx on = mollified_green(4, z, 0.3, 0.3);
        EXPECT_LT(std::abs(mollified_green(4, z, 0.3 + 1e-9, 0.3) - on), 1e-7);
        EXPECT_LT(std::abs(mollified_green(4, z, 0.3 - 1e-9, 0.3) - on), 1e-7);
    }
}

TEST(Mollified, LowerSideIsAdjointOfUpper) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const double x = u(rng), xp = u(rng), nu = 3.0 * u(rng);
        const cplx lower = mollified_green(3, SpectralPoint::boundary(nu, Side::lower), x, xp);
        const cplx upper = mollified_green(3, SpectralPoint::boundary(nu, Side::upper), xp, x);
        EXPECT_LT(std::abs(lower - std::conj(upper)), 1e-14);
    }
}

TEST(Mollified, ConvergesToUnmollifiedKernel) {
    const auto g = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    const auto z = SpectralPoint::boundary(1.5, Side::upper);
    std::vector<double> errors;
    for (int n : {2, 4, 8, 16, 32, 64}) {
        double worst = 0.0;
        for (double x : {-1.0, -0.3, 0.4, 1.1}) {
            for (double xp : {-0.8, 0.1, 0.9}) {
                worst = std::max(worst, std::abs(bs_kernel_mollified(g, n, z, x, xp) - bs_kernel(g, z, x, xp)));
            }
        }
        errors.push_back(worst);
    }
    for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LT(errors[i], errors[i - 1]);
    // O(1/n) pointwise: halving ratio near 2 at the finest step.
    EXPECT_GT(errors[errors.size() - 2] / errors.back(), 1.6);
    EXPECT_THROW(bs_kernel_mollified(g, 0, z, 0.0, 1.0), InvalidArgument);
}

TEST(Eta, Examples) {
    const auto g = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    EXPECT_NEAR(eta_n_im(g, 7, 0.0), 0.5 * g.total_integral(), 1e-15);
    EXPECT_NEAR(eta_n_im(g, 1, 1.0), std::sqrt(M_PI) / 4.0, 1e-15);
    EXPECT_NEAR(eta_n_im(g, 3, 1e4) * 1e8, 0.5 * 9.0 * g.total_integral(), 1e-3);
    EXPECT_THROW(eta_n_im(g, 0, 0.0), InvalidArgument);
}

TEST(Scattering, PhasesAreUnimodular) {
    const auto zero = builtin_profile(ProfileKind::sech2, 1.0, 0.0);
    EXPECT_EQ(wave_phase(zero, true, 0.3), cplx(1.0, 0.0));
    EXPECT_EQ(scattering_matrix(zero), cplx(1.0, 0.0));
    const auto g = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    const cplx s = scattering_matrix(g);
    EXPECT_NEAR(s.real(), -0.200293541, 1e-9);
    EXPECT_NEAR(s.imag(), -0.979735932, 1e-9);
    EXPECT_NEAR(std::abs(wave_phase(g, false, 0.7)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(wave_phase(g, true, 80.0) - 1.0), 0.0, 1e-15);
    // S = Omega_+^* Omega_- at any x.
    for (double x : {-1.0, 0.0, 2.0}) {
        EXPECT_LT(std::abs(std::conj(wave_phase(g, true, x)) * wave_phase(g, false, x) - s), 1e-14);
    }
    EXPECT_LT(std::abs(s - std::polar(1.0, -2.0 * M_PI * c0(g))), 1e-14);
}
