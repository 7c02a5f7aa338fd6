#include "wittenlab/ssf.hpp"

#include "wittenlab/discretize.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/kernels.hpp"
#include "wittenlab/quadrature.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/makima.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

namespace wittenlab {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void require_ascending(const std::vector<double>& grid, const char* what) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw InvalidArgument(fmt::format("{} must be strictly increasing", what));
        }
    }
}

bool is_uniform(const std::vector<double>& x) {
    const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * std::abs(h)) return false;
    }
    return true;
}

void require_off_cut(cplx z) {
    if (z.imag() == 0.0 && z.real() >= 0.0) {
        throw InvalidArgument("spectral parameter z must lie off [0, infinity)");
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("spectral parameter z must be finite");
    }
}

// int_{|nu| > nu_max} f(nu) dnu via nu = +/- nu_max / t.
template <typename F>
auto outer_integral(F&& f, double nu_max) {
    const QuadratureRule rule = gauss_legendre(48, 0.0, 1.0);
    decltype(f(1.0)) sum{};
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double t = rule.nodes[k];
        const double nu = nu_max / t;
        const double jac = nu_max / (t * t);
        sum += rule.weights[k] * jac * (f(nu) + f(-nu));
    }
    return sum;
}

// int_{-nu_max}^{nu_max} f(nu) dnu, composite Gauss-Legendre with panels no wider than 0.5.
template <typename F>
auto inner_integral(F&& f, double nu_max) {
    const auto panels = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(4.0 * nu_max)));
    std::vector<double> breaks(panels + 1);
    for (std::size_t p = 0; p <= panels; ++p) {
        breaks[p] = -nu_max + 2.0 * nu_max * static_cast<double>(p) / static_cast<double>(panels);
    }
    const QuadratureRule rule = composite_gauss_legendre(breaks, 16);
    decltype(f(0.0)) sum{};
    for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
    return sum;
}

SpectralPoint upper(double nu) {
    return SpectralPoint::boundary(nu, Side::upper);
}

}  // namespace

std::string_view to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::one_dim_mollified: return "one_dim_mollified";
        case CurveKind::one_dim_limit: return "one_dim_limit";
        case CurveKind::one_dim_phase: return "one_dim_phase";
        case CurveKind::two_dim: return "two_dim";
    }
    return "unknown";
}

double TailModel::value(double x) const {
    double v = constant;
    for (const Term& term : terms) {
        const double n2 = static_cast<double>(term.n) * static_cast<double>(term.n);
        v += c0 * term.weight * n2 / (n2 + x * x);
    }
    return v;
}

CurveFunction::CurveFunction(const SSFCurve& curve)
    : curve_(std::make_shared<const SSFCurve>(curve)) {
    const SSFCurve& c = *curve_;
    if (c.grid.size() != c.values.size()) {
        throw InvalidArgument("curve grid and value counts differ");
    }
    if (c.grid.size() < 4) {
        throw InvalidArgument("curve needs at least 4 samples to interpolate");
    }
    require_ascending(c.grid, "curve grid");
    log_axis_ = c.two_dimensional();
    std::vector<double> x = c.grid;
    if (log_axis_) {
        if (!(c.grid.front() > 0.0)) {
            throw InvalidArgument("two-dimensional curve grid must be positive");
        }
        for (double& v : x) v = std::log(v);
    }
    if (is_uniform(x)) {
        const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
        boost::math::interpolators::cardinal_cubic_b_spline<double> spline(
            c.values.begin(), c.values.end(), x.front(), h);
        inner_ = [spline](double t) { return spline(t); };
    } else {
        std::vector<double> y = c.values;
        auto spline = std::make_shared<boost::math::interpolators::makima<std::vector<double>>>(
            std::move(x), std::move(y));
        inner_ = [spline](double t) { return (*spline)(t); };
    }
}

double CurveFunction::operator()(double x) const {
    const SSFCurve& c = *curve_;
    if (log_axis_) {
        if (x < 0.0) return 0.0;
        if (x <= c.grid.front()) return c.values.front();
        if (x >= c.grid.back()) {
            return x == c.grid.back() ? c.values.back()
                                      : (c.tail ? c.tail->constant : c.values.back());
        }
        return inner_(std::log(x));
    }
    if (x >= c.grid.front() && x <= c.grid.back()) return inner_(x);
    if (c.tail) return c.tail->value(x);
    throw CoverageError(fmt::format("curve sampled on [{:.6g}, {:.6g}] evaluated at {:.6g}",
                                    c.grid.front(), c.grid.back(), x));
}

bool CurveFunction::covers(double lo, double hi) const {
    const SSFCurve& c = *curve_;
    if (log_axis_ || c.tail) return true;
    return lo >= c.grid.front() && hi <= c.grid.back();
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) {
        throw InvalidArgument("uniform grid needs lo < hi and a positive step");
    }
    const auto intervals = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> grid(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) grid[i] = lo + step * static_cast<double>(i);
    // Snap the last point when it lands on hi up to round-off.
    if (std::abs(grid.back() - hi) < 1e-9 * step) grid.back() = hi;
    return grid;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw InvalidArgument("geometric grid needs 0 < lo < hi and at least 2 points");
    }
    std::vector<double> grid(count);
    const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(ratio * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

SSFCurve ssf_mollified(const PotentialProfile& profile, int n, const std::vector<double>& nu_grid,
                       const NystromParams& params) {
    if (n < 1) throw InvalidArgument("mollifier index n must be >= 1");
    if (nu_grid.size() < 2) throw InvalidArgument("nu-grid needs at least two nodes");
    require_ascending(nu_grid, "nu-grid");
    const QuadratureGrid grid = build_grid(profile, params.nodes, params.tail_eps);
    const double nu_max = std::max(std::abs(nu_grid.front()), std::abs(nu_grid.back()));
    require_oscillation_resolution(grid, nu_max);

    const PhaseCurve phase = phase_curve(nu_grid, [&](double nu) {
        return assemble_bs_mollified(profile, n, grid, upper(nu)).entries;
    });

    SSFCurve curve;
    curve.grid = nu_grid;
    curve.values.resize(nu_grid.size());
    for (std::size_t i = 0; i < nu_grid.size(); ++i) {
        curve.values[i] = (phase.unwrapped_phase[i] + eta_n_im(profile, n, nu_grid[i])) / kPi;
    }
    curve.kind = CurveKind::one_dim_mollified;
    curve.provenance = CurveProvenance{params.nodes, params.tail_eps, nu_max, n, "det2 phase"};
    return curve;
}

SSFCurve ssf_unmollified_phase(const PotentialProfile& profile, const std::vector<double>& nu_grid,
                               const NystromParams& params) {
    if (nu_grid.size() < 2) throw InvalidArgument("nu-grid needs at least two nodes");
    require_ascending(nu_grid, "nu-grid");
    const QuadratureGrid grid = build_grid(profile, params.nodes, params.tail_eps);
    const double nu_max = std::max(std::abs(nu_grid.front()), std::abs(nu_grid.back()));
    require_oscillation_resolution(grid, nu_max);

    const PhaseCurve phase = phase_curve(
        nu_grid, [&](double nu) { return assemble_bs(profile, grid, upper(nu)).entries; });
    SSFCurve curve;
    curve.grid = nu_grid;
    curve.values.resize(nu_grid.size());
    for (std::size_t i = 0; i < nu_grid.size(); ++i) {
        curve.values[i] = phase.unwrapped_phase[i] / kPi;
    }
    curve.kind = CurveKind::one_dim_phase;
    curve.provenance = CurveProvenance{params.nodes, params.tail_eps, nu_max, std::nullopt,
                                       "unmollified det2 phase"};
    return curve;
}

SSFCurve with_eta_tail(SSFCurve curve, const PotentialProfile& profile, int n) {
    if (n < 1) throw InvalidArgument("mollifier index n must be >= 1");
    curve.tail = TailModel{0.0, c0(profile), {{1.0, n}}};
    return curve;
}

double ssf_limit_1d(const PotentialProfile& profile) {
    return c0(profile);
}

double pushnitski(const std::function<double(double)>& xi, double lambda, std::size_t t_nodes) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument(fmt::format("Pushnitski transform needs lambda > 0, got {:g}", lambda));
    }
    if (t_nodes < 2) throw InvalidArgument("Pushnitski transform needs at least 2 nodes");
    const double root = std::sqrt(lambda);
    const double dt = kPi / static_cast<double>(t_nodes);
    CompensatedSum sum;
    for (std::size_t j = 0; j < t_nodes; ++j) {
        const double t = -0.5 * kPi + (static_cast<double>(j) + 0.5) * dt;
        sum.add(xi(root * std::sin(t)));
    }
    // (1/pi) * dt * sum = sum / t_nodes
    return sum.value() / static_cast<double>(t_nodes);
}

double pushnitski(const CurveFunction& xi, double lambda, std::size_t t_nodes) {
    if (lambda > 0.0 && !xi.covers(-std::sqrt(lambda), std::sqrt(lambda))) {
        throw CoverageError(fmt::format(
            "one-dimensional curve does not cover [-{0:.6g}, {0:.6g}] and has no tail model",
            std::sqrt(lambda)));
    }
    return pushnitski(std::function<double(double)>(std::cref(xi)), lambda, t_nodes);
}

double pushnitski(double constant, double lambda, std::size_t t_nodes) {
    return pushnitski(std::function<double(double)>([constant](double) { return constant; }),
                      lambda, t_nodes);
}

SSFCurve pushnitski_curve(const SSFCurve& one_dim, const std::vector<double>& lambda_grid) {
    if (one_dim.two_dimensional()) {
        throw InvalidArgument("Pushnitski transform needs a one-dimensional curve");
    }
    if (lambda_grid.size() < 4) throw InvalidArgument("lambda-grid needs at least 4 points");
    require_ascending(lambda_grid, "lambda-grid");
    if (!(lambda_grid.front() > 0.0)) throw InvalidArgument("lambda-grid must be positive");
    const CurveFunction xi(one_dim);
    if (!xi.covers(-std::sqrt(lambda_grid.back()), std::sqrt(lambda_grid.back()))) {
        throw CoverageError(fmt::format(
            "one-dimensional curve does not cover |nu| <= {:.6g} and has no tail model",
            std::sqrt(lambda_grid.back())));
    }
    SSFCurve out;
    out.grid = lambda_grid;
    out.values.resize(lambda_grid.size());
    const auto count = static_cast<long>(lambda_grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out.values[k] = pushnitski(xi, lambda_grid[k]);
    }
    out.kind = CurveKind::two_dim;
    out.provenance = one_dim.provenance;
    out.provenance.note = "pushnitski transform of " + std::string(to_string(one_dim.kind));
    out.tail = TailModel{out.values.back(), 0.0, {}};
    return out;
}

ResolventIntegral resolvent_square_integral(const std::function<double(double)>& f, cplx z,
                                            const ResolventIntegralOptions& options) {
    require_off_cut(z);
    const double a = options.lambda_min;
    const double b = options.lambda_max;
    if (!(a > 0.0) || !(b > a)) {
        throw InvalidArgument("resolvent integral needs 0 < lambda_min < lambda_max");
    }
    const double c = options.tail_constant;

    std::vector<double> breaks{a, b};
    for (double p = std::pow(10.0, std::ceil(std::log10(a))); p < b; p *= 10.0) {
        if (p > a) breaks.push_back(p);
    }
    for (double p : options.breakpoints) {
        if (p > a && p < b) breaks.push_back(p);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double u, double v) { return std::abs(u - v) <= 1e-14 * v; }),
                 breaks.end());

    // Constant part c * int_0^inf (lambda - z)^{-2} = c / (-z) is exact; only f - c is sampled.
    cplx value = c / (-z);
    value += (f(a) - c) * (1.0 / (-z) - 1.0 / (a - z));
    std::vector<double> log_breaks(breaks.size());
    for (std::size_t i = 0; i < breaks.size(); ++i) log_breaks[i] = std::log(breaks[i]);
    const QuadratureRule rule = composite_gauss_legendre(log_breaks, options.nodes_per_panel);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double lambda = std::exp(rule.nodes[k]);
        const cplx w = lambda - z;
        value += rule.weights[k] * (f(lambda) - c) * lambda / (w * w);
    }
    return ResolventIntegral{value, c / (b - z)};
}

KreinReport krein_check_trn(const PotentialProfile& profile, int n, cplx z,
                            const KreinParams& params) {
    require_off_cut(z);
    if (n < 1) throw InvalidArgument("mollifier index n must be >= 1");
    if (params.nu_nodes < 8) throw InvalidArgument("Krein check needs at least 8 nu-nodes");
    const QuadratureGrid grid = build_grid(profile, params.nystrom.nodes, params.nystrom.tail_eps);
    const double radius = grid.half_length;
    const double box = params.box_half_length > 0.0 ? params.box_half_length : 2.0 * radius;

    KreinReport report;
    report.z = z;
    report.n = n;
    report.modes = params.modes;
    report.nodes = params.nystrom.nodes;
    report.box_half_length = box;

    const FourierOperatorPair pair = fourier_pair(profile, n, box, params.modes, radius);
    report.lhs = trace_gz_diff(pair, z) / (2.0 * z);

    require_oscillation_resolution(grid, params.nu_max);
    const QuadratureRule nu_rule = gauss_legendre(params.nu_nodes, -params.nu_max, params.nu_max);
    PhaseCurveOptions options;
    // Gauss nodes stop short of +/- nu_max; the endpoint contract still applies there.
    const PhaseCurve phase = phase_curve(
        nu_rule.nodes,
        [&](double nu) { return assemble_bs_mollified(profile, n, grid, upper(nu)).entries; },
        options);
    cplx integral = 0.0;
    for (std::size_t k = 0; k < nu_rule.size(); ++k) {
        const double nu = nu_rule.nodes[k];
        const double xi = (phase.unwrapped_phase[k] + eta_n_im(profile, n, nu)) / kPi;
        integral += nu_rule.weights[k] * xi * gz_prime(nu, z);
    }
    integral += outer_integral(
        [&](double nu) { return eta_n_im(profile, n, nu) / kPi * gz_prime(nu, z); },
        params.nu_max);
    report.rhs = integral / (2.0 * z);
    report.residual = std::abs(report.lhs - report.rhs);
    return report;
}

Eq1Report trace_identity_eq1(const std::function<double(double)>& xi, double tail_constant,
                             cplx z, double nu_max) {
    require_off_cut(z);
    if (!(nu_max > 0.0)) throw InvalidArgument("nu_max must be positive");
    Eq1Report report;
    report.z = z;

    // (1/2) int (nu^2 - z)^{-3/2} dnu = 1/(-z); integrate only xi - tail_constant.
    auto weight = [z](double nu) {
        const cplx w = nu * nu - z;
        return 1.0 / (w * std::sqrt(w));
    };
    auto shifted = [&](double nu) { return (xi(nu) - tail_constant) * weight(nu); };
    report.rhs = tail_constant / (-z) + 0.5 * (inner_integral(shifted, nu_max) +
                                               outer_integral(shifted, nu_max));

    const double cutoff = 100.0 * std::max(1.0, nu_max * nu_max);
    report.lambda_cutoff = cutoff;
    auto xi_2d = [&](double lambda) { return pushnitski(xi, lambda); };
    ResolventIntegralOptions options;
    options.lambda_min = 1e-6 * std::min(1.0, std::abs(z));
    options.lambda_max = cutoff;
    options.tail_constant = xi_2d(cutoff);
    options.breakpoints = {nu_max * nu_max};
    const ResolventIntegral lhs = resolvent_square_integral(xi_2d, z, options);
    if (std::abs(lhs.tail) > 0.1 * std::abs(lhs.value) && std::abs(lhs.tail) > 1e-300) {
        throw CoverageError(fmt::format(
            "lambda cutoff {:.6g} too small: constant tail {:.3e} exceeds 10% of {:.3e}", cutoff,
            std::abs(lhs.tail), std::abs(lhs.value)));
    }
    report.lhs = lhs.value;
    report.residual = std::abs(report.lhs - report.rhs);
    const double scale = std::abs(report.rhs);
    report.relative_residual = scale > 0.0 ? report.residual / scale : report.residual;
    return report;
}

Eq1Report trace_identity_eq1(const PotentialProfile& profile, int n, cplx z,
                             const Eq1Params& params) {
    require_off_cut(z);
    const std::vector<double> nu_grid = uniform_grid(-params.nu_max, params.nu_max, params.nu_step);
    const SSFCurve curve =
        with_eta_tail(ssf_mollified(profile, n, nu_grid, params.nystrom), profile, n);
    const CurveFunction xi(curve);
    return trace_identity_eq1(std::function<double(double)>(std::cref(xi)), 0.0, z, params.nu_max);
}

}  // namespace wittenlab
