#pragma once

#include "wittenlab/profiles.hpp"

#include <complex>

namespace wittenlab {

using cplx = std::complex<double>;

enum class Side { upper, lower };

/// Spectral parameter: either a boundary value nu +/- i0 or an off-axis z.
class SpectralPoint {
public:
    static SpectralPoint boundary(double nu, Side side);
    /// Throws InvalidArgument when Im z == 0 (a real z needs a side tag).
    static SpectralPoint off_axis(cplx z);

    bool is_boundary() const noexcept { return boundary_; }
    Side side() const noexcept { return side_; }
    bool upper() const noexcept { return side_ == Side::upper; }
    /// nu + 0i for boundary points.
    cplx z() const noexcept { return z_; }
    double nu() const noexcept { return z_.real(); }

private:
    SpectralPoint(cplx z, Side side, bool boundary) : z_(z), side_(side), boundary_(boundary) {}

    cplx z_;
    Side side_;
    bool boundary_;
};

// Heaviside convention: theta(0) = 0, so every Volterra-type kernel below
// vanishes on the diagonal x == x'.

/// Green's function of A_- = -i d/dx:
///   upper:  i e^{iz(x-x')} theta(x - x')
///   lower: -i e^{iz(x-x')} theta(x' - x)
cplx free_resolvent_kernel(const SpectralPoint& z, double x, double xp);

/// Green's function of A_+ = A_- + phi: the free kernel times e^{-i(Phi(x) - Phi(x'))}.
cplx perturbed_resolvent_kernel(const PotentialProfile& profile, const SpectralPoint& z,
                                double x, double xp);

/// sgn(phi(x)) |phi(x)|^{1/2} (A_- - z)^{-1}(x, x') |phi(x')|^{1/2}.
cplx bs_kernel(const PotentialProfile& profile, const SpectralPoint& z, double x, double xp);

/// Scalar part of the mollified Birman-Schwinger kernel,
///   (n/2) i int e^{iz(x-x'')} chi_{(-inf,x]}(x'') e^{-n|x''-x'|} dx''   (upper side)
/// and its mirror image for the lower side, as a function of x - x'.
/// Continuous across the diagonal.
cplx mollified_green(int n, const SpectralPoint& z, double x, double xp);

/// sgn(phi(x)) |phi(x)|^{1/2} (A_- - z)^{-1} chi_n(A_-)^2 |phi(x')|^{1/2}, closed form.
cplx bs_kernel_mollified(const PotentialProfile& profile, int n, const SpectralPoint& z,
                         double x, double xp);

/// Im eta_n(nu + i0) without the integration constant: (1/2) n^2/(nu^2+n^2) int phi.
double eta_n_im(const PotentialProfile& profile, int n, double nu);

/// e^{i(Phi(+/-inf) - Phi(x))}; positive selects +infinity.
cplx wave_phase(const PotentialProfile& profile, bool positive, double x);

/// Scattering matrix of (A_+, A_-): multiplication by e^{-i int phi}.
cplx scattering_matrix(const PotentialProfile& profile);

}  // namespace wittenlab
