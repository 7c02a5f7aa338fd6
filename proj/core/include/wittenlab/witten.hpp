#pragma once

#include "wittenlab/profiles.hpp"
#include "wittenlab/ssf.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wittenlab {

/// Delta_r(lambda) = (-lambda) int_0^inf xi(mu) (mu - lambda)^{-2} dmu, lambda < 0.
/// Sampled part by quadrature, constant tail exact. Throws InvalidArgument for lambda >= 0.
double delta_r(const SSFCurve& xi_2d, double lambda);

/// Same for a callable xi on [0, inf): breakpoints mark jumps or kinks of xi and
/// tail_constant is its value beyond mu_max.
double delta_r(const std::function<double(double)>& xi, double lambda, double tail_constant,
               const std::vector<double>& breakpoints = {}, double mu_max = 1e6);

/// One Richardson step in n on two curves sampled on the same nu-grid:
/// (r^p fine - coarse) / (r^p - 1), r = n_fine / n_coarse. Tail models combine alike.
SSFCurve richardson_combine(const SSFCurve& coarse, const SSFCurve& fine, double order = 2.0);

struct WittenParams {
    NystromParams nystrom;
    double nu_max = 12.0;
    double nu_step = 0.1;
    /// Richardson order assumed for xi_n -> xi.
    double assumed_order = 2.0;
    /// |observed - assumed| above this flags the report as low confidence.
    double order_tolerance = 0.5;
    std::size_t lambda_grid_points = 241;
};

struct WittenReport {
    std::vector<double> lambda_samples;
    std::vector<double> delta_r_values;
    std::vector<int> n_schedule;
    /// xi_n(0) for each n in the schedule.
    std::vector<double> xi_at_zero;
    double extrapolated_index = 0.0;
    /// Richardson-combined xi(0) from the two finest n.
    double richardson_xi0 = 0.0;
    double reference_c0 = 0.0;
    double abs_error = 0.0;
    /// Order estimated from the last three n at nu = 0 (NaN when differences vanish).
    double observed_order_n = 0.0;
    /// Slope ratio of the last lambda steps; ~1 for a linear approach to lambda = 0.
    double lambda_residual_ratio = 0.0;
    bool low_confidence = false;
    std::vector<std::string> notes;
};

/// lambda_k = -2^{-k}, k = 1..count.
std::vector<double> default_lambda_schedule(std::size_t count = 8);

/// xi_n curves for each n -> Richardson in n -> Pushnitski -> Delta_r on lambda_schedule ->
/// linear extrapolation to lambda = 0 -> comparison with c0.
WittenReport witten_index(const PotentialProfile& profile, const std::vector<int>& n_schedule,
                          const std::vector<double>& lambda_schedule,
                          const WittenParams& params = {});

}  // namespace wittenlab
