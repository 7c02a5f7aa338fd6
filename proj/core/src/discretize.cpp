#include "wittenlab/discretize.hpp"

#include "wittenlab/errors.hpp"
#include "wittenlab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

namespace wittenlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Wavelengths of the fastest plane-wave difference per quadrature panel.
constexpr double kWavelengthsPerPanel = 2.0;
constexpr std::size_t kNodesPerPanel = 20;

void check_finite_entries(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const cplx v = m(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw AssemblyError(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        }
    }
}

// Row/column factors sign(phi) |phi|^{1/2} sqrt(w) and |phi|^{1/2} sqrt(w).
struct SandwichFactors {
    std::vector<double> left;
    std::vector<double> right;
};

SandwichFactors sandwich_factors(const PotentialProfile& profile, const QuadratureGrid& grid) {
    SandwichFactors f;
    f.left.resize(grid.size());
    f.right.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        const double root = profile.sqrt_abs(x) * std::sqrt(grid.weights[i]);
        f.left[i] = profile.sign(x) * root;
        f.right[i] = root;
    }
    return f;
}

}  // namespace

double QuadratureGrid::max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        h = std::max(h, nodes[i] - nodes[i - 1]);
    }
    return h;
}

QuadratureGrid build_grid(const PotentialProfile& profile, std::size_t nodes, double tail_eps) {
    if (nodes < 8) {
        throw InvalidArgument("quadrature grid needs at least 8 nodes");
    }
    if (!(tail_eps > 0.0)) {
        throw InvalidArgument("tail tolerance must be positive");
    }
    const double radius = profile.tail_radius(tail_eps);
    if (!std::isfinite(radius)) {
        throw ResolutionError(
            fmt::format("tail radius for eps = {:g} is not finite; profile is not integrable "
                        "to that tolerance",
                        tail_eps));
    }
    const double half_length = std::max(radius, profile.width());
    QuadratureRule rule = gauss_legendre(nodes, -half_length, half_length);
    return QuadratureGrid{std::move(rule.nodes), std::move(rule.weights), half_length};
}

void require_oscillation_resolution(const QuadratureGrid& grid, double nu_max) {
    const double h = grid.max_spacing();
    if (!(h * std::abs(nu_max) < 0.5)) {
        throw ResolutionError(fmt::format(
            "grid spacing {:.4g} does not resolve e^(i nu x) up to |nu| = {:.4g} "
            "(need h |nu| < 0.5; increase the node count to at least {})",
            h, std::abs(nu_max),
            static_cast<std::size_t>(std::ceil(grid.size() * h * std::abs(nu_max) / 0.5)) + 1));
    }
}

ComplexMatrix assemble(const KernelFunction& kernel, const QuadratureGrid& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    ComplexMatrix m(n, n);
    std::vector<double> root_w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) root_w[i] = std::sqrt(grid.weights[i]);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = root_w[i] * kernel(grid.nodes[i], grid.nodes[j]) * root_w[j];
        }
    }
    check_finite_entries(m);
    return m;
}

BirmanSchwingerMatrix assemble_bs(const PotentialProfile& profile, const QuadratureGrid& grid,
                                  const SpectralPoint& point) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    const SandwichFactors f = sandwich_factors(profile, grid);
    ComplexMatrix m(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = f.left[i] * free_resolvent_kernel(point, grid.nodes[i], grid.nodes[j]) *
                      f.right[j];
        }
    }
    check_finite_entries(m);
    return BirmanSchwingerMatrix{std::move(m), point, std::nullopt};
}

BirmanSchwingerMatrix assemble_bs_mollified(const PotentialProfile& profile, int n,
                                            const QuadratureGrid& grid,
                                            const SpectralPoint& point) {
    if (n < 1) {
        throw InvalidArgument("mollifier index n must be >= 1");
    }
    const auto size = static_cast<Eigen::Index>(grid.size());
    const SandwichFactors f = sandwich_factors(profile, grid);
    ComplexMatrix m(size, size);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            if (f.left[i] == 0.0 || f.right[j] == 0.0) {
                m(i, j) = 0.0;
                continue;
            }
            m(i, j) = f.left[i] * mollified_green(n, point, grid.nodes[i], grid.nodes[j]) *
                      f.right[j];
        }
    }
    check_finite_entries(m);
    return BirmanSchwingerMatrix{std::move(m), point, n};
}

ComplexMatrix FourierOperatorPair::a_minus() const {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(momenta.size()));
    for (std::size_t i = 0; i < momenta.size(); ++i) d(static_cast<Eigen::Index>(i)) = momenta[i];
    return d.asDiagonal();
}

double FourierOperatorPair::hermiticity_residual() const {
    return (a_plus_n - a_plus_n.adjoint()).cwiseAbs().maxCoeff();
}

FourierOperatorPair fourier_pair(const PotentialProfile& profile, int n, double box_half_length,
                                 std::size_t modes, double support_radius) {
    if (n < 1) {
        throw InvalidArgument("mollifier index n must be >= 1");
    }
    if (modes < 64 || modes % 2 != 0) {
        throw InvalidArgument("Fourier mode count must be even and >= 64");
    }
    if (!(support_radius > 0.0)) {
        throw InvalidArgument("support radius must be positive");
    }
    if (box_half_length < support_radius) {
        throw CoverageError(fmt::format(
            "Fourier box half-length {:.6g} is smaller than the profile support radius {:.6g}",
            box_half_length, support_radius));
    }

    const auto m_count = static_cast<long>(modes);
    const double dk = kPi / box_half_length;

    FourierOperatorPair pair;
    pair.box_half_length = box_half_length;
    pair.mollifier = n;
    pair.momenta.resize(modes);
    for (long m = 0; m < m_count; ++m) {
        pair.momenta[static_cast<std::size_t>(m)] = dk * static_cast<double>(m - m_count / 2);
    }

    // Matrix elements depend on k - k' = dk * (m - m') only.
    const double q_max = dk * static_cast<double>(m_count - 1);
    const double span = 2.0 * support_radius;
    const auto panels = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::ceil(q_max * span / (2.0 * kPi) / kWavelengthsPerPanel)));
    std::vector<double> breaks;
    for (std::size_t p = 0; p <= panels; ++p) {
        breaks.push_back(-support_radius + span * static_cast<double>(p) / static_cast<double>(panels));
    }
    for (double b : profile.breakpoints()) {
        if (b > -support_radius && b < support_radius) breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 breaks.end());
    const QuadratureRule rule = composite_gauss_legendre(breaks, kNodesPerPanel);
    std::vector<double> weighted_phi(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
        weighted_phi[j] = rule.weights[j] * profile.phi(rule.nodes[j]);
    }

    const long diffs = 2 * m_count - 1;
    std::vector<cplx> element(static_cast<std::size_t>(diffs));
    const double norm = 1.0 / (2.0 * box_half_length);
#pragma omp parallel for schedule(static)
    for (long d = 0; d < diffs; ++d) {
        const double q = dk * static_cast<double>(d - (m_count - 1));
        cplx sum = 0.0;
        for (std::size_t j = 0; j < rule.size(); ++j) {
            sum += weighted_phi[j] * std::polar(1.0, -q * rule.nodes[j]);
        }
        element[static_cast<std::size_t>(d)] = norm * sum;
    }

    std::vector<double> chi_k(modes);
    for (std::size_t m = 0; m < modes; ++m) chi_k[m] = chi(n, pair.momenta[m]);

    pair.a_plus_n.resize(m_count, m_count);
#pragma omp parallel for schedule(static)
    for (long j = 0; j < m_count; ++j) {
        for (long i = 0; i < m_count; ++i) {
            const cplx v = element[static_cast<std::size_t>(i - j + m_count - 1)];
            pair.a_plus_n(i, j) = chi_k[static_cast<std::size_t>(i)] * v *
                                  chi_k[static_cast<std::size_t>(j)];
        }
    }
    // Exact Hermitian symmetry: average with the adjoint removes quadrature round-off.
    ComplexMatrix sym = 0.5 * (pair.a_plus_n + pair.a_plus_n.adjoint());
    pair.a_plus_n = std::move(sym);
    for (long m = 0; m < m_count; ++m) {
        pair.a_plus_n(m, m) += pair.momenta[static_cast<std::size_t>(m)];
    }
    return pair;
}

cplx gz(double x, cplx z) {
    return x / std::sqrt(x * x - z);
}

cplx gz_prime(double x, cplx z) {
    const cplx w = x * x - z;
    return -z / (w * std::sqrt(w));
}

cplx trace_gz_diff(const FourierOperatorPair& pair, cplx z) {
    if (z.imag() == 0.0 && z.real() >= 0.0) {
        throw InvalidArgument("g_z requires z outside [0, infinity)");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(pair.a_plus_n, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw LinearAlgebraError("Hermitian eigendecomposition of A_{+,n} failed");
    }
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    std::vector<double> free = pair.momenta;
    std::sort(free.begin(), free.end());

    // x^2 - z stays off the cut (-inf, 0] for z outside [0, inf); verify on the spectrum.
    auto check_branch = [z](double x) {
        const cplx w = x * x - z;
        if (w.imag() == 0.0 && w.real() <= 0.0) {
            throw InvalidArgument("(x^2 - z)^{1/2} hits its branch cut on the spectrum");
        }
    };
    cplx sum = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        check_branch(lambda(i));
        sum += gz(lambda(i), z) - gz(free[static_cast<std::size_t>(i)], z);
    }
    return sum;
}

}  // namespace wittenlab
