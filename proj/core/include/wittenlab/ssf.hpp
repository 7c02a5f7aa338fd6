#pragma once

#include "wittenlab/det2lab.hpp"
#include "wittenlab/profiles.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wittenlab {

enum class CurveKind {
    one_dim_mollified,
    one_dim_limit,
    /// det2 phase of the unmollified kernel alone, no eta term.
    one_dim_phase,
    two_dim,
};

std::string_view to_string(CurveKind kind);

struct CurveProvenance {
    std::size_t nodes = 0;
    double tail_eps = 0.0;
    double nu_max = 0.0;
    std::optional<int> mollifier;
    std::string note;
};

/// Analytic continuation of a curve past its last grid point:
///   constant + c0 * sum_k weight_k n_k^2 / (n_k^2 + x^2).
/// A two-dimensional curve uses the constant alone.
struct TailModel {
    struct Term {
        double weight;
        int n;
    };
    double constant = 0.0;
    double c0 = 0.0;
    std::vector<Term> terms;

    double value(double x) const;
};

/// Sampled spectral shift function. One-dimensional curves live on a nu-grid,
/// two-dimensional ones on an ascending positive lambda-grid (xi = 0 for lambda < 0).
struct SSFCurve {
    std::vector<double> grid;
    std::vector<double> values;
    CurveKind kind = CurveKind::one_dim_mollified;
    CurveProvenance provenance;
    std::optional<TailModel> tail;

    bool two_dimensional() const noexcept { return kind == CurveKind::two_dim; }
};

/// Interpolating evaluator for an SSFCurve: cubic B-spline on uniform grids (in ln lambda
/// for two-dimensional curves), makima otherwise. Outside the grid a one-dimensional curve
/// uses its tail model or throws CoverageError; a two-dimensional curve is 0 for lambda < 0,
/// its first value on (0, grid.front()) and its tail constant (or last value) beyond.
class CurveFunction {
public:
    explicit CurveFunction(const SSFCurve& curve);

    double operator()(double x) const;
    /// True when [lo, hi] can be evaluated without a CoverageError.
    bool covers(double lo, double hi) const;

private:
    std::shared_ptr<const SSFCurve> curve_;
    std::function<double(double)> inner_;
    bool log_axis_ = false;
};

struct NystromParams {
    std::size_t nodes = 400;
    double tail_eps = 1e-12;
};

/// Uniform grid lo, lo + step, ..., hi (hi included when it falls on the lattice).
std::vector<double> uniform_grid(double lo, double hi, double step);
/// count points geometrically spaced on [lo, hi], lo > 0.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// xi_n(nu) = unwrapped det2 phase / pi + eta_n_im / pi for the mollified kernel at nu + i0.
/// Throws RefinementNeeded, NearSingular, WindingError or ResolutionError from below.
SSFCurve ssf_mollified(const PotentialProfile& profile, int n, const std::vector<double>& nu_grid,
                       const NystromParams& params = {});

/// Phase part of the unmollified kernel alone: unwrapped det2 phase / pi.
SSFCurve ssf_unmollified_phase(const PotentialProfile& profile, const std::vector<double>& nu_grid,
                               const NystromParams& params = {});

/// Attaches the analytic eta-term tail (phase part taken as 0 beyond the grid).
SSFCurve with_eta_tail(SSFCurve curve, const PotentialProfile& profile, int n);

/// The n -> infinity limit, constant in nu: c0(profile).
double ssf_limit_1d(const PotentialProfile& profile);

constexpr std::size_t kPushnitskiNodes = 512;

/// (1/pi) int_{-sqrt(lambda)}^{sqrt(lambda)} xi(nu) (lambda - nu^2)^{-1/2} dnu through
/// nu = sqrt(lambda) sin t and a uniform midpoint rule in t.
/// Throws InvalidArgument for lambda <= 0 and CoverageError when xi cannot be
/// evaluated on [-sqrt(lambda), sqrt(lambda)].
double pushnitski(const CurveFunction& xi, double lambda, std::size_t t_nodes = kPushnitskiNodes);
double pushnitski(const std::function<double(double)>& xi, double lambda,
                  std::size_t t_nodes = kPushnitskiNodes);
double pushnitski(double constant, double lambda, std::size_t t_nodes = kPushnitskiNodes);

/// Two-dimensional curve xi(lambda; H2, H1) on lambda_grid from a one-dimensional curve.
SSFCurve pushnitski_curve(const SSFCurve& one_dim, const std::vector<double>& lambda_grid);

struct ResolventIntegralOptions {
    /// Below lambda_min the integrand is frozen at f(lambda_min).
    double lambda_min = 1e-8;
    /// Beyond lambda_max the integrand is taken as tail_constant.
    double lambda_max = 1e4;
    double tail_constant = 0.0;
    /// Extra panel breaks (kinks or jumps of f).
    std::vector<double> breakpoints;
    std::size_t nodes_per_panel = 16;
};

struct ResolventIntegral {
    std::complex<double> value;
    /// Contribution of the constant tail beyond lambda_max.
    std::complex<double> tail;
};

/// int_0^inf f(lambda) (lambda - z)^{-2} dlambda, z outside [0, inf). Composite
/// Gauss-Legendre in ln lambda over decade panels; constants integrate exactly.
ResolventIntegral resolvent_square_integral(const std::function<double(double)>& f,
                                            std::complex<double> z,
                                            const ResolventIntegralOptions& options);

struct KreinParams {
    NystromParams nystrom;
    std::size_t modes = 1024;
    /// Fourier box half-length; 0 selects 2 L with L the Nystrom truncation radius.
    double box_half_length = 0.0;
    std::size_t nu_nodes = 241;
    double nu_max = 12.0;
};

struct KreinReport {
    std::complex<double> z;
    int n = 0;
    /// (1/(2z)) tr(g_z(A_{+,n}) - g_z(A_-)) from the Fourier oracle.
    std::complex<double> lhs;
    /// (1/(2z)) int xi_n(nu) g_z'(nu) dnu from the det2 side.
    std::complex<double> rhs;
    double residual = 0.0;
    std::size_t modes = 0;
    std::size_t nodes = 0;
    double box_half_length = 0.0;
};

KreinReport krein_check_trn(const PotentialProfile& profile, int n, std::complex<double> z,
                            const KreinParams& params = {});

struct Eq1Params {
    NystromParams nystrom;
    double nu_max = 12.0;
    double nu_step = 0.1;
};

struct Eq1Report {
    std::complex<double> z;
    /// int_0^inf xi_2D(lambda) (lambda - z)^{-2} dlambda.
    std::complex<double> lhs;
    /// (1/2) int xi_1D(nu) (nu^2 - z)^{-3/2} dnu.
    std::complex<double> rhs;
    double residual = 0.0;
    double relative_residual = 0.0;
    double lambda_cutoff = 0.0;
};

/// Both sides of the lambda/nu trace identity for xi_n. Throws CoverageError when the
/// constant tail beyond the cutoff exceeds 10% of the value.
Eq1Report trace_identity_eq1(const PotentialProfile& profile, int n, std::complex<double> z,
                             const Eq1Params& params = {});

/// Same identity fed a known one-dimensional function xi (with tail_constant its limit at
/// |nu| -> infinity); a constant c gives c / (-z) on both sides.
Eq1Report trace_identity_eq1(const std::function<double(double)>& xi, double tail_constant,
                             std::complex<double> z, double nu_max = 12.0);

}  // namespace wittenlab
