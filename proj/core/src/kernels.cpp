#include "wittenlab/kernels.hpp"

#include "wittenlab/errors.hpp"

#include <cmath>

namespace wittenlab {

namespace {

constexpr cplx kI{0.0, 1.0};

// (1 - e^{-u}) / u, continuous at u = 0.
cplx one_minus_exp_over(cplx u) {
    if (std::abs(u) < 0.1) {
        cplx term = 1.0;
        cplx sum = 1.0;
        for (int k = 1; k < 12; ++k) {
            term *= -u / static_cast<double>(k + 1);
            sum += term;
        }
        return sum;
    }
    return (1.0 - std::exp(-u)) / u;
}

void require_n(int n) {
    if (n < 1) {
        throw InvalidArgument("mollifier index n must be >= 1");
    }
}

}  // namespace

SpectralPoint SpectralPoint::boundary(double nu, Side side) {
    if (!std::isfinite(nu)) {
        throw InvalidArgument("spectral boundary value must be finite");
    }
    return SpectralPoint(cplx(nu, 0.0), side, true);
}

SpectralPoint SpectralPoint::off_axis(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("spectral parameter must be finite");
    }
    if (z.imag() == 0.0) {
        throw InvalidArgument("real spectral parameter needs a side (+i0 or -i0)");
    }
    return SpectralPoint(z, z.imag() > 0.0 ? Side::upper : Side::lower, false);
}

cplx free_resolvent_kernel(const SpectralPoint& z, double x, double xp) {
    const double d = x - xp;
    if (z.upper()) {
        return d > 0.0 ? kI * std::exp(kI * z.z() * d) : cplx{};
    }
    return d < 0.0 ? -kI * std::exp(kI * z.z() * d) : cplx{};
}

cplx perturbed_resolvent_kernel(const PotentialProfile& profile, const SpectralPoint& z,
                                double x, double xp) {
    cplx g = free_resolvent_kernel(z, x, xp);
    if (g == cplx{}) return g;
    double phase = profile.antiderivative(x) - profile.antiderivative(xp);
    return g * std::polar(1.0, -phase);
}

cplx bs_kernel(const PotentialProfile& profile, const SpectralPoint& z, double x, double xp) {
    double left = profile.sign(x) * profile.sqrt_abs(x);
    double right = profile.sqrt_abs(xp);
    if (left == 0.0 || right == 0.0) return {};
    return left * free_resolvent_kernel(z, x, xp) * right;
}

cplx mollified_green(int n, const SpectralPoint& z, double x, double xp) {
    require_n(n);
    const double dn = static_cast<double>(n);
    const cplx zz = z.z();
    if (z.upper()) {
        const double d = x - xp;
        if (d > 0.0) {
            cplx inner = 1.0 / (dn - kI * zz) + d * one_minus_exp_over((dn + kI * zz) * d);
            return kI * 0.5 * dn * std::exp(kI * zz * d) * inner;
        }
        return kI * 0.5 * dn * std::exp(dn * d) / (dn - kI * zz);
    }
    const double d = xp - x;
    if (d >= 0.0) {
        cplx inner = 1.0 / (dn + kI * zz) + d * one_minus_exp_over((dn - kI * zz) * d);
        return -kI * 0.5 * dn * std::exp(-kI * zz * d) * inner;
    }
    return -kI * 0.5 * dn * std::exp(dn * d) / (dn + kI * zz);
}

cplx bs_kernel_mollified(const PotentialProfile& profile, int n, const SpectralPoint& z,
                         double x, double xp) {
    require_n(n);
    double left = profile.sign(x) * profile.sqrt_abs(x);
    double right = profile.sqrt_abs(xp);
    if (left == 0.0 || right == 0.0) return {};
    return left * mollified_green(n, z, x, xp) * right;
}

double eta_n_im(const PotentialProfile& profile, int n, double nu) {
    require_n(n);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    return 0.5 * n2 / (nu * nu + n2) * profile.total_integral();
}

cplx wave_phase(const PotentialProfile& profile, bool positive, double x) {
    double end = positive ? profile.antiderivative_plus_infinity()
                          : profile.antiderivative_minus_infinity();
    return std::polar(1.0, end - profile.antiderivative(x));
}

cplx scattering_matrix(const PotentialProfile& profile) {
    return std::polar(1.0, -profile.total_integral());
}

}  // namespace wittenlab
