#include "wittenlab/io.hpp"

#include "wittenlab/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wittenlab {

namespace {

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

Json complex_number(std::complex<double> z) {
    return Json{{"re", number(z.real())}, {"im", number(z.imag())}};
}

Json numbers(const std::vector<double>& xs) {
    Json out = Json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

double required_number(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw InvalidArgument(fmt::format("profile descriptor is missing \"{}\"", key));
    }
    if (!j.at(key).is_number()) {
        throw InvalidArgument(fmt::format("profile field \"{}\" must be a number", key));
    }
    return j.at(key).get<double>();
}

}  // namespace

std::string format_number(double x) {
    return fmt::format("{:.12g}", x);
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format_number(x));
}

PotentialProfile profile_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("profile descriptor must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw InvalidArgument("profile descriptor needs a string \"kind\"");
    }
    const ProfileKind kind = profile_kind_from_string(j.at("kind").get<std::string>());
    const double amplitude = required_number(j, "amplitude");
    const double width = required_number(j, "width");
    std::optional<double> support;
    if (j.contains("support") && !j.at("support").is_null()) support = required_number(j, "support");
    return builtin_profile(kind, width, amplitude, support);
}

PotentialProfile profile_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument(fmt::format("cannot open profile file '{}'", path.string()));
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(fmt::format("profile file '{}' is not valid JSON: {}", path.string(), e.what()));
    }
    try {
        return profile_from_json(j);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(fmt::format("profile file '{}': {}", path.string(), e.what()));
    }
}

Json profile_to_json(const PotentialProfile& profile) {
    Json j;
    j["kind"] = std::string(to_string(profile.kind()));
    j["amplitude"] = number(profile.amplitude());
    j["width"] = number(profile.width());
    if (profile.kind() == ProfileKind::bump) j["support"] = number(profile.support());
    return j;
}

void write_curve_csv(std::ostream& out, const SSFCurve& curve) {
    out << (curve.two_dimensional() ? "lambda,xi\n" : "nu,xi\n");
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out << format_number(curve.grid[i]) << ',' << format_number(curve.values[i]) << '\n';
    }
}

Json curve_to_json(const SSFCurve& curve) {
    Json j;
    j["kind"] = std::string(to_string(curve.kind));
    Json prov;
    prov["nodes"] = curve.provenance.nodes;
    prov["tail_eps"] = number(curve.provenance.tail_eps);
    prov["nu_max"] = number(curve.provenance.nu_max);
    prov["n"] = curve.provenance.mollifier ? Json(*curve.provenance.mollifier) : Json(nullptr);
    prov["note"] = curve.provenance.note;
    j["provenance"] = prov;
    j["grid"] = numbers(curve.grid);
    j["values"] = numbers(curve.values);
    if (curve.tail) {
        Json tail;
        tail["constant"] = number(curve.tail->constant);
        tail["c0"] = number(curve.tail->c0);
        Json terms = Json::array();
        for (const auto& t : curve.tail->terms) terms.push_back(Json{{"weight", number(t.weight)}, {"n", t.n}});
        tail["terms"] = terms;
        j["tail"] = tail;
    } else {
        j["tail"] = nullptr;
    }
    return j;
}

Json report_to_json(const WittenReport& r) {
    Json j;
    j["extrapolated_index"] = number(r.extrapolated_index);
    j["reference_c0"] = number(r.reference_c0);
    j["abs_error"] = number(r.abs_error);
    j["low_confidence"] = r.low_confidence;
    j["n_schedule"] = r.n_schedule;
    j["xi_at_zero"] = numbers(r.xi_at_zero);
    j["richardson_xi0"] = number(r.richardson_xi0);
    j["lambda_samples"] = numbers(r.lambda_samples);
    j["delta_r_values"] = numbers(r.delta_r_values);
    Json orders;
    orders["n_observed"] = number(r.observed_order_n);
    orders["lambda_slope_ratio"] = number(r.lambda_residual_ratio);
    j["observed_orders"] = orders;
    j["notes"] = r.notes;
    return j;
}

Json report_to_json(const KreinReport& r) {
    Json j;
    j["z"] = complex_number(r.z);
    j["n"] = r.n;
    j["lhs"] = complex_number(r.lhs);
    j["rhs"] = complex_number(r.rhs);
    j["residual"] = number(r.residual);
    j["modes"] = r.modes;
    j["nodes"] = r.nodes;
    j["box_half_length"] = number(r.box_half_length);
    return j;
}

Json report_to_json(const Eq1Report& r) {
    Json j;
    j["z"] = complex_number(r.z);
    j["lhs"] = complex_number(r.lhs);
    j["rhs"] = complex_number(r.rhs);
    j["residual"] = number(r.residual);
    j["relative_residual"] = number(r.relative_residual);
    j["lambda_cutoff"] = number(r.lambda_cutoff);
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out) throw InvalidArgument(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace wittenlab
