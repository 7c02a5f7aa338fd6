#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wittenlab {

enum class ProfileKind { gaussian, sech2, bump };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// Real perturbation phi in L^1 cap L^infinity with a closed-form antiderivative.
///
/// Builtins (amplitude A, width a > 0):
///   gaussian  A exp(-(x/a)^2)
///   sech2     A sech^2(x/a)
///   bump      A on |x| <= s - a, raised-cosine taper of width a down to 0 at |x| = s
///             (s = support >= a; s == a gives A cos^2(pi x / (2a)) on |x| < a)
///
/// Instances are immutable and cheap to copy.
class PotentialProfile {
public:
    ProfileKind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    double width() const noexcept { return width_; }
    /// Support radius for bump; 0 for profiles without compact support.
    double support() const noexcept { return support_; }

    double phi(double x) const;
    double operator()(double x) const { return phi(x); }

    /// Phi(x) = int_0^x phi.
    double antiderivative(double x) const;
    /// Phi(+infinity) and Phi(-infinity).
    double antiderivative_plus_infinity() const;
    double antiderivative_minus_infinity() const;

    double total_integral() const;
    double l1_norm() const;
    double sup_norm() const;

    /// int_{|x| > radius} |phi|.
    double tail_mass(double radius) const;
    /// Smallest radius R (for bump: the support radius) with tail_mass(R) < eps.
    double tail_radius(double eps) const;

    /// |phi(x)|^{1/2} and sgn(phi(x)), the factors of the symmetrized perturbation.
    double sqrt_abs(double x) const;
    double sign(double x) const;

    bool is_zero() const noexcept { return amplitude_ == 0.0; }

    /// Points where phi is not smooth (bump edges); empty for analytic profiles.
    std::vector<double> breakpoints() const;

    friend PotentialProfile builtin_profile(ProfileKind, double, double, std::optional<double>);

private:
    PotentialProfile(ProfileKind kind, double amplitude, double width, double support)
        : kind_(kind), amplitude_(amplitude), width_(width), support_(support) {}

    double bump_primitive(double u) const;

    ProfileKind kind_;
    double amplitude_;
    double width_;
    double support_;
};

/// Throws InvalidArgument for non-positive/non-finite width, non-finite amplitude,
/// bump support smaller than its width, or a support given for a non-bump kind.
PotentialProfile builtin_profile(ProfileKind kind, double width, double amplitude,
                                 std::optional<double> support = std::nullopt);

/// Switching function theta with theta(-inf) = 0, theta(+inf) = 1.
///
/// Only carried so the two-dimensional model can be described and validated;
/// every computed quantity is independent of the choice of theta.
class SwitchProfile {
public:
    explicit SwitchProfile(double scale = 1.0);

    /// (1 + tanh(t / scale)) / 2
    double theta(double t) const;
    double theta_prime(double t) const;
    double scale() const noexcept { return scale_; }

private:
    double scale_;
};

/// Mollifier chi_n(nu) = n / sqrt(nu^2 + n^2), n >= 1.
double chi(int n, double nu);

/// Closed-form index (1 / 2pi) int phi.
double c0(const PotentialProfile& profile);

}  // namespace wittenlab
