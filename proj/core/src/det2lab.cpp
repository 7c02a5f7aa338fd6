#include "wittenlab/det2lab.hpp"

#include "wittenlab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace wittenlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_square(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument(fmt::format("determinant of a non-square {}x{} matrix", m.rows(),
                                          m.cols()));
    }
}

// Principal representative in (-pi, pi].
double wrap(double phase) {
    double w = std::remainder(phase, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

}  // namespace

cplx LogDeterminant::value() const {
    if (singular) return {};
    return std::polar(std::exp(log_modulus), phase);
}

LogDeterminant log_det(const ComplexMatrix& m) {
    require_square(m);
    LogDeterminant out;
    if (m.rows() == 0) return out;
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const ComplexMatrix& packed = lu.matrixLU();
    double phase = 0.0;
    for (Eigen::Index i = 0; i < packed.rows(); ++i) {
        const cplx u = packed(i, i);
        if (u == cplx{}) {
            out.singular = true;
            out.log_modulus = -std::numeric_limits<double>::infinity();
            out.phase = 0.0;
            return out;
        }
        out.log_modulus += std::log(std::abs(u));
        phase += std::arg(u);
    }
    // Permutation sign: parity of the transposition count.
    if (lu.permutationP().determinant() < 0) phase += kPi;
    out.phase = wrap(phase);
    return out;
}

cplx det_complex(const ComplexMatrix& m) {
    return log_det(m).value();
}

LogDeterminant log_det2(const ComplexMatrix& t) {
    require_square(t);
    ComplexMatrix shifted = t;
    shifted.diagonal().array() += 1.0;
    LogDeterminant d = log_det(shifted);
    if (d.singular) return d;
    const cplx trace = t.trace();
    d.log_modulus -= trace.real();
    d.phase = wrap(d.phase - trace.imag());
    return d;
}

cplx det2(const ComplexMatrix& t) {
    return log_det2(t).value();
}

cplx det2_eigenvalue_product(const ComplexMatrix& t) {
    require_square(t);
    if (t.rows() == 0) return 1.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, false);
    if (solver.info() != Eigen::Success) {
        throw LinearAlgebraError("complex eigenvalue solver did not converge");
    }
    cplx product = 1.0;
    for (const cplx& lambda : solver.eigenvalues()) {
        product *= (1.0 + lambda) * std::exp(-lambda);
    }
    return product;
}

double hs_norm(const ComplexMatrix& t) {
    return t.norm();
}

PhaseCurve phase_curve(const std::vector<double>& nu_grid, const std::vector<cplx>& det2_values,
                       const PhaseCurveOptions& options) {
    if (nu_grid.size() != det2_values.size()) {
        throw InvalidArgument("phase curve: grid and determinant counts differ");
    }
    if (nu_grid.size() < 2) {
        throw InvalidArgument("phase curve needs at least two nodes");
    }
    for (std::size_t i = 1; i < nu_grid.size(); ++i) {
        if (!(nu_grid[i] > nu_grid[i - 1])) {
            throw InvalidArgument("phase curve grid must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < det2_values.size(); ++i) {
        const double modulus = std::abs(det2_values[i]);
        if (!(modulus >= options.near_singular)) {
            throw NearSingular(nu_grid[i], modulus);
        }
    }

    PhaseCurve curve;
    curve.nu_grid = nu_grid;
    curve.raw_det2 = det2_values;
    curve.anchor = 0;
    curve.unwrapped_phase.resize(nu_grid.size());

    const cplx first = det2_values.front();
    const double start = std::arg(first);
    if (options.check_endpoints) {
        if (std::abs(first - 1.0) >= options.endpoint_tolerance || std::abs(start) >= kPi / 4) {
            throw CoverageError(fmt::format(
                "det2 at nu = {:.6g} is {:.6g}{:+.6g}i, not within {:g} of 1; widen the nu-range",
                nu_grid.front(), first.real(), first.imag(), options.endpoint_tolerance));
        }
    }
    curve.unwrapped_phase[0] = start;
    for (std::size_t i = 1; i < nu_grid.size(); ++i) {
        const double step = std::arg(det2_values[i] / det2_values[i - 1]);
        if (std::abs(step) >= kPi / 2) {
            throw RefinementNeeded(nu_grid[i - 1], nu_grid[i], std::abs(step));
        }
        curve.unwrapped_phase[i] = curve.unwrapped_phase[i - 1] + step;
    }
    if (options.check_endpoints && std::abs(curve.unwrapped_phase.back()) >= kPi / 4) {
        throw WindingError(fmt::format(
            "unwrapped phase {:.6g} at nu = {:.6g} does not return to the principal branch",
            curve.unwrapped_phase.back(), nu_grid.back()));
    }
    return curve;
}

PhaseCurve phase_curve(const std::vector<double>& nu_grid, const MatrixFamily& family,
                       const PhaseCurveOptions& options) {
    std::vector<cplx> values(nu_grid.size());
    std::exception_ptr failure;
    const auto count = static_cast<long>(nu_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            values[static_cast<std::size_t>(i)] = det2(family(nu_grid[static_cast<std::size_t>(i)]));
        } catch (...) {
#pragma omp critical(wittenlab_phase_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return phase_curve(nu_grid, values, options);
}

}  // namespace wittenlab
