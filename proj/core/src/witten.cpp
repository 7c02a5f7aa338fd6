#include "wittenlab/witten.hpp"

#include "wittenlab/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wittenlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_negative(double lambda) {
    if (!(lambda < 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument(fmt::format("Delta_r needs lambda < 0, got {:g}", lambda));
    }
}

}  // namespace

double delta_r(const std::function<double(double)>& xi, double lambda, double tail_constant,
               const std::vector<double>& breakpoints, double mu_max) {
    require_negative(lambda);
    ResolventIntegralOptions options;
    options.lambda_min = 1e-10 * std::min(1.0, -lambda);
    options.lambda_max = std::max(mu_max, 1e6 * std::max(1.0, -lambda));
    options.tail_constant = tail_constant;
    options.breakpoints = breakpoints;
    return (-lambda) * resolvent_square_integral(xi, lambda, options).value.real();
}

double delta_r(const SSFCurve& xi_2d, double lambda) {
    require_negative(lambda);
    if (!xi_2d.two_dimensional()) {
        throw InvalidArgument("Delta_r needs a two-dimensional spectral shift function");
    }
    const CurveFunction xi(xi_2d);
    ResolventIntegralOptions options;
    options.lambda_min = xi_2d.grid.front();
    options.lambda_max = xi_2d.grid.back();
    options.tail_constant = xi_2d.tail ? xi_2d.tail->constant : xi_2d.values.back();
    return (-lambda) *
           resolvent_square_integral(std::cref(xi), lambda, options).value.real();
}

SSFCurve richardson_combine(const SSFCurve& coarse, const SSFCurve& fine, double order) {
    if (!coarse.provenance.mollifier || !fine.provenance.mollifier) {
        throw InvalidArgument("Richardson step needs two mollified curves");
    }
    const int n_coarse = *coarse.provenance.mollifier;
    const int n_fine = *fine.provenance.mollifier;
    if (n_fine <= n_coarse) {
        throw InvalidArgument("Richardson step needs n_fine > n_coarse");
    }
    if (coarse.grid.size() != fine.grid.size()) {
        throw InvalidArgument("Richardson step needs curves on the same grid");
    }
    for (std::size_t i = 0; i < coarse.grid.size(); ++i) {
        if (std::abs(coarse.grid[i] - fine.grid[i]) > 1e-12 * std::max(1.0, std::abs(fine.grid[i]))) {
            throw InvalidArgument("Richardson step needs curves on the same grid");
        }
    }
    if (coarse.tail.has_value() != fine.tail.has_value()) {
        throw InvalidArgument("Richardson step needs both curves with or without tails");
    }
    const double gain = std::pow(static_cast<double>(n_fine) / n_coarse, order);
    const double wf = gain / (gain - 1.0);
    const double wc = -1.0 / (gain - 1.0);

    SSFCurve out;
    out.grid = fine.grid;
    out.values.resize(fine.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = wf * fine.values[i] + wc * coarse.values[i];
    }
    out.kind = CurveKind::one_dim_limit;
    out.provenance = fine.provenance;
    out.provenance.mollifier.reset();
    out.provenance.note = fmt::format("richardson n = {}, {} (order {:g})", n_coarse, n_fine, order);
    if (fine.tail) {
        TailModel tail;
        tail.constant = wf * fine.tail->constant + wc * coarse.tail->constant;
        tail.c0 = fine.tail->c0;
        auto add_terms = [&tail](const TailModel& src, double w) {
            // Terms carry c0 as a common factor; rescale if the sources disagree.
            const double scale = tail.c0 != 0.0 ? src.c0 / tail.c0 : 0.0;
            for (const TailModel::Term& t : src.terms) tail.terms.push_back({w * scale * t.weight, t.n});
        };
        add_terms(*fine.tail, wf);
        add_terms(*coarse.tail, wc);
        out.tail = std::move(tail);
    }
    return out;
}

std::vector<double> default_lambda_schedule(std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = -std::ldexp(1.0, -static_cast<int>(k + 1));
    return out;
}

WittenReport witten_index(const PotentialProfile& profile, const std::vector<int>& n_schedule,
                          const std::vector<double>& lambda_schedule, const WittenParams& params) {
    if (n_schedule.empty() || lambda_schedule.empty()) {
        throw InvalidArgument("Witten index needs nonempty n and lambda schedules");
    }
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
        if (n_schedule[i] < 1 || (i > 0 && n_schedule[i] <= n_schedule[i - 1])) {
            throw InvalidArgument("n-schedule must be positive and strictly increasing");
        }
    }
    for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
        require_negative(lambda_schedule[i]);
        if (i > 0 && !(lambda_schedule[i] > lambda_schedule[i - 1])) {
            throw InvalidArgument("lambda-schedule must increase toward 0");
        }
    }

    WittenReport report;
    report.n_schedule = n_schedule;
    report.lambda_samples = lambda_schedule;
    report.reference_c0 = c0(profile);

    const std::vector<double> nu_grid = uniform_grid(-params.nu_max, params.nu_max, params.nu_step);
    std::vector<SSFCurve> curves;
    curves.reserve(n_schedule.size());
    for (int n : n_schedule) {
        curves.push_back(with_eta_tail(ssf_mollified(profile, n, nu_grid, params.nystrom), profile, n));
        report.xi_at_zero.push_back(CurveFunction(curves.back())(0.0));
    }

    SSFCurve limit = curves.back();
    if (curves.size() >= 2) {
        limit = richardson_combine(curves[curves.size() - 2], curves.back(), params.assumed_order);
    }
    report.richardson_xi0 = CurveFunction(limit)(0.0);

    report.observed_order_n = kNaN;
    if (curves.size() >= 3) {
        const std::size_t k = curves.size() - 1;
        const double d1 = report.xi_at_zero[k - 1] - report.xi_at_zero[k - 2];
        const double d2 = report.xi_at_zero[k] - report.xi_at_zero[k - 1];
        const double ratio = static_cast<double>(n_schedule[k]) / n_schedule[k - 1];
        if (std::max(std::abs(d1), std::abs(d2)) > 1e-14) {
            report.observed_order_n = std::log(std::abs(d1 / d2)) / std::log(ratio);
            if (!std::isfinite(report.observed_order_n) ||
                std::abs(report.observed_order_n - params.assumed_order) > params.order_tolerance) {
                report.low_confidence = true;
                report.notes.push_back(fmt::format(
                    "observed order {:.3g} in n at nu = 0 differs from the assumed {:g}",
                    report.observed_order_n, params.assumed_order));
            }
        } else {
            report.notes.push_back("xi_n(0) independent of n; order not measurable");
        }
    } else {
        report.notes.push_back("fewer than three n values; order not measured");
    }

    const double cutoff = 100.0 * std::max(1.0, params.nu_max * params.nu_max);
    const SSFCurve xi_2d = pushnitski_curve(
        limit, geometric_grid(1e-8, cutoff, params.lambda_grid_points));
    for (double lambda : lambda_schedule) report.delta_r_values.push_back(delta_r(xi_2d, lambda));

    const std::size_t m = lambda_schedule.size();
    report.extrapolated_index = report.delta_r_values.back();
    if (m >= 2) {
        const double lam1 = lambda_schedule[m - 2];
        const double lam2 = lambda_schedule[m - 1];
        const double slope = (report.delta_r_values[m - 1] - report.delta_r_values[m - 2]) / (lam2 - lam1);
        report.extrapolated_index = report.delta_r_values[m - 1] - lam2 * slope;
    }
    report.lambda_residual_ratio = kNaN;
    if (m >= 3) {
        const double s1 = (report.delta_r_values[m - 2] - report.delta_r_values[m - 3]) /
                          (lambda_schedule[m - 2] - lambda_schedule[m - 3]);
        const double s2 = (report.delta_r_values[m - 1] - report.delta_r_values[m - 2]) /
                          (lambda_schedule[m - 1] - lambda_schedule[m - 2]);
        if (std::max(std::abs(s1), std::abs(s2)) > 1e-12) report.lambda_residual_ratio = s2 / s1;
    }
    report.abs_error = std::abs(report.extrapolated_index - report.reference_c0);
    return report;
}

}  // namespace wittenlab
