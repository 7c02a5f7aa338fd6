#include "wittenlab/profiles.hpp"

#include "wittenlab/errors.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace wittenlab {

namespace {

constexpr double kPi = std::numbers::pi;
// Nudges the solved radius outward so the tail bound holds strictly.
constexpr double kStrictTail = 1.0 + 1e-9;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidArgument(std::string(what) + " must be finite");
    }
}

double sech2(double u) {
    double c = std::cosh(u);
    return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::gaussian: return "gaussian";
        case ProfileKind::sech2: return "sech2";
        case ProfileKind::bump: return "bump";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name) {
    if (name == "gaussian") return ProfileKind::gaussian;
    if (name == "sech2") return ProfileKind::sech2;
    if (name == "bump") return ProfileKind::bump;
    throw InvalidArgument("unknown profile kind '" + std::string(name) +
                          "' (expected gaussian, sech2 or bump)");
}

PotentialProfile builtin_profile(ProfileKind kind, double width, double amplitude,
                                 std::optional<double> support) {
    require_finite(amplitude, "amplitude");
    require_finite(width, "width");
    if (width <= 0.0) {
        throw InvalidArgument("width must be positive");
    }
    double s = 0.0;
    if (kind == ProfileKind::bump) {
        s = support.value_or(width);
        require_finite(s, "support");
        if (s < width) {
            throw InvalidArgument("bump support must be at least its width");
        }
    } else if (support) {
        throw InvalidArgument("support only applies to the bump profile");
    }
    return PotentialProfile(kind, amplitude, width, s);
}

double PotentialProfile::phi(double x) const {
    const double a = width_;
    switch (kind_) {
        case ProfileKind::gaussian: {
            double u = x / a;
            return amplitude_ * std::exp(-u * u);
        }
        case ProfileKind::sech2:
            return amplitude_ * sech2(x / a);
        case ProfileKind::bump: {
            double u = std::abs(x);
            double plateau = support_ - a;
            if (u <= plateau) return amplitude_;
            if (u >= support_) return 0.0;
            double c = std::cos(kPi * (u - plateau) / (2.0 * a));
            return amplitude_ * c * c;
        }
    }
    return 0.0;
}

// int_0^u of the unit-amplitude bump, u >= 0.
double PotentialProfile::bump_primitive(double u) const {
    const double a = width_;
    const double plateau = support_ - a;
    if (u <= plateau) return u;
    if (u >= support_) return plateau + 0.5 * a;
    double v = u - plateau;
    return plateau + 0.5 * v + a / (2.0 * kPi) * std::sin(kPi * v / a);
}

double PotentialProfile::antiderivative(double x) const {
    const double a = width_;
    switch (kind_) {
        case ProfileKind::gaussian:
            return amplitude_ * a * 0.5 * std::sqrt(kPi) * std::erf(x / a);
        case ProfileKind::sech2:
            return amplitude_ * a * std::tanh(x / a);
        case ProfileKind::bump:
            return amplitude_ * std::copysign(bump_primitive(std::abs(x)), x);
    }
    return 0.0;
}

double PotentialProfile::antiderivative_plus_infinity() const {
    return 0.5 * total_integral();
}

double PotentialProfile::antiderivative_minus_infinity() const {
    return -0.5 * total_integral();
}

double PotentialProfile::total_integral() const {
    const double a = width_;
    switch (kind_) {
        case ProfileKind::gaussian: return amplitude_ * a * std::sqrt(kPi);
        case ProfileKind::sech2: return 2.0 * amplitude_ * a;
        case ProfileKind::bump: return amplitude_ * (2.0 * support_ - a);
    }
    return 0.0;
}

double PotentialProfile::l1_norm() const {
    return std::abs(total_integral());
}

double PotentialProfile::sup_norm() const {
    return std::abs(amplitude_);
}

double PotentialProfile::tail_mass(double radius) const {
    if (radius <= 0.0) return l1_norm();
    const double a = width_;
    const double amp = std::abs(amplitude_);
    switch (kind_) {
        case ProfileKind::gaussian:
            return amp * a * std::sqrt(kPi) * std::erfc(radius / a);
        case ProfileKind::sech2: {
            // 1 - tanh(u) = 2 e^{-2u} / (1 + e^{-2u})
            double e = std::exp(-2.0 * radius / a);
            return 2.0 * amp * a * 2.0 * e / (1.0 + e);
        }
        case ProfileKind::bump:
            return 2.0 * amp * (bump_primitive(support_) - bump_primitive(radius));
    }
    return 0.0;
}

double PotentialProfile::tail_radius(double eps) const {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw InvalidArgument("tail tolerance must be positive and finite");
    }
    if (kind_ == ProfileKind::bump) return support_;
    const double mass = l1_norm();
    if (eps >= mass) return 0.0;
    const double a = width_;
    switch (kind_) {
        case ProfileKind::gaussian:
            return kStrictTail * a * boost::math::erfc_inv(eps / mass);
        case ProfileKind::sech2: {
            double q = eps / mass;
            return kStrictTail * a * 0.5 * std::log((2.0 - q) / q);
        }
        case ProfileKind::bump:
            break;
    }
    return support_;
}

double PotentialProfile::sqrt_abs(double x) const {
    return std::sqrt(std::abs(phi(x)));
}

double PotentialProfile::sign(double x) const {
    double v = phi(x);
    return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

std::vector<double> PotentialProfile::breakpoints() const {
    if (kind_ != ProfileKind::bump) return {};
    const double plateau = support_ - width_;
    if (plateau > 0.0) return {-support_, -plateau, plateau, support_};
    return {-support_, support_};
}

SwitchProfile::SwitchProfile(double scale) : scale_(scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidArgument("switch scale must be positive");
    }
}

double SwitchProfile::theta(double t) const {
    return 0.5 * (1.0 + std::tanh(t / scale_));
}

double SwitchProfile::theta_prime(double t) const {
    return 0.5 * sech2(t / scale_) / scale_;
}

double chi(int n, double nu) {
    if (n < 1) {
        throw InvalidArgument("mollifier index n must be >= 1");
    }
    double dn = static_cast<double>(n);
    return dn / std::hypot(nu, dn);
}

double c0(const PotentialProfile& profile) {
    return profile.total_integral() / (2.0 * kPi);
}

}  // namespace wittenlab
