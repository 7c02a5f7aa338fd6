#pragma once

#include "wittenlab/kernels.hpp"
#include "wittenlab/profiles.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace wittenlab {

using ComplexMatrix = Eigen::MatrixXcd;

/// Gauss-Legendre nodes and weights on the truncated line [-L, L].
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double half_length = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }
    /// Largest gap between adjacent nodes.
    double max_spacing() const;
};

/// N-point grid on [-L, L] with L = max(profile.tail_radius(tail_eps), profile.width()).
/// Throws InvalidArgument for N < 8 or tail_eps <= 0 and ResolutionError when the
/// tail radius is not finite.
QuadratureGrid build_grid(const PotentialProfile& profile, std::size_t nodes, double tail_eps);

/// Throws ResolutionError unless max_spacing * |nu_max| < 0.5.
void require_oscillation_resolution(const QuadratureGrid& grid, double nu_max);

/// Discretized Hilbert-Schmidt operator T_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j).
struct BirmanSchwingerMatrix {
    ComplexMatrix entries;
    SpectralPoint point;
    std::optional<int> mollifier;
};

using KernelFunction = std::function<cplx(double x, double xp)>;

/// Symmetrized Nystrom matrix of an arbitrary kernel; rows are filled in parallel.
/// Throws AssemblyError naming the first non-finite entry.
ComplexMatrix assemble(const KernelFunction& kernel, const QuadratureGrid& grid);

/// Nystrom matrix of bs_kernel at one spectral point.
BirmanSchwingerMatrix assemble_bs(const PotentialProfile& profile, const QuadratureGrid& grid,
                                  const SpectralPoint& point);

/// Nystrom matrix of bs_kernel_mollified at one spectral point.
BirmanSchwingerMatrix assemble_bs_mollified(const PotentialProfile& profile, int n,
                                            const QuadratureGrid& grid,
                                            const SpectralPoint& point);

/// Periodic plane-wave discretization of A_- and A_{+,n} = A_- + chi_n(A_-) phi chi_n(A_-)
/// on the circle [-box_half_length, box_half_length).
struct FourierOperatorPair {
    double box_half_length = 0.0;
    int mollifier = 1;
    /// k_m = pi m / box_half_length, m = -M/2 .. M/2 - 1; A_- = diag(momenta).
    std::vector<double> momenta;
    ComplexMatrix a_plus_n;

    std::size_t modes() const noexcept { return momenta.size(); }
    ComplexMatrix a_minus() const;
    /// max |A - A^*| over entries of a_plus_n.
    double hermiticity_residual() const;
};

/// Plane-wave matrix elements (1 / 2B) int phi(x) e^{-i(k - k')x} dx are computed by
/// composite Gauss-Legendre quadrature over [-support_radius, support_radius].
/// Throws InvalidArgument for odd M or M < 64 and CoverageError when the box is
/// smaller than the support radius.
FourierOperatorPair fourier_pair(const PotentialProfile& profile, int n, double box_half_length,
                                 std::size_t modes, double support_radius);

/// g_z(x) = x (x^2 - z)^{-1/2}, principal branch.
cplx gz(double x, cplx z);
/// g_z'(x) = -z (x^2 - z)^{-3/2}.
cplx gz_prime(double x, cplx z);

/// tr(g_z(A_{+,n}) - g_z(A_-)) from Hermitian eigendecompositions, z outside [0, inf).
cplx trace_gz_diff(const FourierOperatorPair& pair, cplx z);

}  // namespace wittenlab
