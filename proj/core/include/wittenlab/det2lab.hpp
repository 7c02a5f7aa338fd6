#pragma once

#include "wittenlab/discretize.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace wittenlab {

/// det M = e^{log_modulus + i phase}; kept in log form so large matrices do not overflow.
struct LogDeterminant {
    double log_modulus = 0.0;
    double phase = 0.0;
    /// A zero pivot was hit; log_modulus is -inf and value() is 0.
    bool singular = false;

    cplx value() const;
};

/// Partial-pivot LU determinant in log form.
LogDeterminant log_det(const ComplexMatrix& m);
/// det M; 0 for an exactly singular matrix.
cplx det_complex(const ComplexMatrix& m);

/// det2(I + T) = det(I + T) e^{-tr T}.
cplx det2(const ComplexMatrix& t);
LogDeterminant log_det2(const ComplexMatrix& t);
/// prod_k (1 + lambda_k) e^{-lambda_k} over the eigenvalues of T; an independent route to det2.
cplx det2_eigenvalue_product(const ComplexMatrix& t);

/// Frobenius norm.
double hs_norm(const ComplexMatrix& t);

struct PhaseCurveOptions {
    /// Require |det2 - 1| < endpoint_tolerance and a principal phase within pi/4 of 0
    /// at nu_grid.front(), and a final phase within pi/4 of 0 at nu_grid.back().
    bool check_endpoints = true;
    double endpoint_tolerance = 0.2;
    double near_singular = 1e-12;
};

/// Continuous branch of Im ln det2 along an ascending nu-grid, pinned at the first node.
struct PhaseCurve {
    std::vector<double> nu_grid;
    std::vector<cplx> raw_det2;
    std::vector<double> unwrapped_phase;
    std::size_t anchor = 0;
};

/// Unwraps precomputed det2 samples. Throws NearSingular, RefinementNeeded (jump >= pi/2
/// between neighbours), WindingError (far endpoint off the principal branch) or
/// CoverageError (first endpoint not close to 1).
PhaseCurve phase_curve(const std::vector<double>& nu_grid, const std::vector<cplx>& det2_values,
                       const PhaseCurveOptions& options = {});

using MatrixFamily = std::function<ComplexMatrix(double nu)>;

/// Evaluates det2(I + family(nu)) at every node in parallel, then unwraps sequentially.
PhaseCurve phase_curve(const std::vector<double>& nu_grid, const MatrixFamily& family,
                       const PhaseCurveOptions& options = {});

}  // namespace wittenlab
