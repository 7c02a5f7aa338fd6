#include "wittenlab_cli/commands.hpp"

#include <wittenlab/det2lab.hpp>
#include <wittenlab/discretize.hpp>
#include <wittenlab/errors.hpp>
#include <wittenlab/io.hpp>
#include <wittenlab/kernels.hpp>
#include <wittenlab/parallel.hpp>
#include <wittenlab/ssf.hpp>
#include <wittenlab/witten.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wittenlab::cli {

namespace {

namespace fs = std::filesystem;

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
}

void validate_common(const RunConfig& c) {
    require(c.n >= 1, "--n must be >= 1");
    require(c.nu_max > 0.0, "--nu-max must be positive");
    require(c.nu_step > 0.0 && c.nu_step < c.nu_max, "--nu-step must lie in (0, nu-max)");
    require(c.nodes >= 8, "--nodes must be >= 8");
    require(c.tail_eps > 0.0, "--tail-eps must be positive");
}

PotentialProfile load_profile(const RunConfig& c) {
    require(!c.profile_path.empty(), "--profile is required");
    return profile_from_file(c.profile_path);
}

NystromParams nystrom(const RunConfig& c) {
    return NystromParams{c.nodes, c.tail_eps};
}

std::string curve_csv(const SSFCurve& curve) {
    std::ostringstream s;
    write_curve_csv(s, curve);
    return s.str();
}

// Curve to --out (or stdout); CSV output gets a JSON sidecar next to it.
void emit_curve(const RunConfig& c, const SSFCurve& curve, Json meta, std::ostream& out) {
    if (c.format == OutputFormat::json) {
        meta["curve"] = curve_to_json(curve);
        const std::string text = meta.dump(2) + "\n";
        if (c.out.empty()) {
            out << text;
        } else {
            write_text_file(c.out, text);
        }
        return;
    }
    const std::string csv = curve_csv(curve);
    if (c.out.empty()) {
        out << csv;
        return;
    }
    write_text_file(c.out, csv);
    fs::path sidecar = c.out;
    sidecar.replace_extension(".json");
    if (sidecar == fs::path(c.out)) sidecar += ".meta.json";
    write_text_file(sidecar, meta.dump(2) + "\n");
}

// Maps library errors onto the exit-code contract.
int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const RefinementNeeded& e) {
        fmt::print(err, "refinement needed: {}\n  offending interval: [{}, {}]\n", e.what(),
                   format_number(e.nu_lo()), format_number(e.nu_hi()));
        return kRefinement;
    } catch (const NearSingular& e) {
        fmt::print(err, "refinement needed: {}\n", e.what());
        return kRefinement;
    } catch (const WindingError& e) {
        fmt::print(err, "refinement needed: {}\n", e.what());
        return kRefinement;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kUsage;
    }
}

struct Check {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
    std::string detail;
};

// Runs one verification; library errors become a FAIL row.
Check run_check(const std::string& name, double tolerance,
                const std::function<Check()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return Check{name, std::nan(""), tolerance, false, e.what()};
    }
}

}  // namespace

int cmd_ssf1d(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        validate_common(c);
        const PotentialProfile profile = load_profile(c);
        const std::vector<double> grid = uniform_grid(-c.nu_max, c.nu_max, c.nu_step);
        const SSFCurve curve = ssf_mollified(profile, c.n, grid, nystrom(c));

        auto endpoint = [&](std::size_t i) {
            const double eta = eta_n_im(profile, c.n, curve.grid[i]) / std::numbers::pi;
            Json j;
            j["nu"] = round12(curve.grid[i]);
            j["xi"] = round12(curve.values[i]);
            j["phase_over_pi"] = round12(curve.values[i] - eta);
            j["eta_over_pi"] = round12(eta);
            return j;
        };
        Json meta;
        meta["command"] = "ssf-1d";
        meta["profile"] = profile_to_json(profile);
        meta["c0"] = round12(c0(profile));
        meta["n"] = c.n;
        meta["nu_max"] = round12(c.nu_max);
        meta["nu_step"] = round12(c.nu_step);
        meta["nodes"] = c.nodes;
        meta["tail_eps"] = round12(c.tail_eps);
        meta["endpoints"] = Json{{"left", endpoint(0)}, {"right", endpoint(curve.grid.size() - 1)}};
        emit_curve(c, curve, meta, out);
        return static_cast<int>(kOk);
    }, err);
}

int cmd_ssf2d(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        validate_common(c);
        require(c.lambda_min > 0.0, "--lambda-min must be positive (xi = 0 for lambda < 0)");
        require(c.lambda_max > c.lambda_min, "--lambda-max must exceed --lambda-min");
        require(c.lambda_count >= 4, "--lambda-count must be >= 4");
        const PotentialProfile profile = load_profile(c);
        const std::vector<double> lambdas = geometric_grid(c.lambda_min, c.lambda_max, c.lambda_count);

        SSFCurve curve;
        if (c.constant_input) {
            const double value = ssf_limit_1d(profile);
            curve.grid = lambdas;
            for (double lambda : lambdas) curve.values.push_back(pushnitski(value, lambda));
            curve.kind = CurveKind::two_dim;
            curve.provenance.note = "pushnitski transform of the constant c0";
            curve.tail = TailModel{value, 0.0, {}};
        } else {
            const std::vector<double> grid = uniform_grid(-c.nu_max, c.nu_max, c.nu_step);
            const SSFCurve xi = with_eta_tail(ssf_mollified(profile, c.n, grid, nystrom(c)), profile, c.n);
            curve = pushnitski_curve(xi, lambdas);
        }
        const auto [lo, hi] = std::minmax_element(curve.values.begin(), curve.values.end());
        Json meta;
        meta["command"] = "ssf-2d";
        meta["profile"] = profile_to_json(profile);
        meta["c0"] = round12(c0(profile));
        meta["input"] = c.constant_input ? "constant" : "mollified";
        meta["n"] = c.constant_input ? Json(nullptr) : Json(c.n);
        meta["lambda_min"] = round12(c.lambda_min);
        meta["lambda_max"] = round12(c.lambda_max);
        meta["variation"] = round12(*hi - *lo);
        emit_curve(c, curve, meta, out);
        return static_cast<int>(kOk);
    }, err);
}

int cmd_witten(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        validate_common(c);
        require(!c.n_schedule.empty(), "--n-schedule must not be empty");
        require(c.lambda_steps >= 1, "--lambda-count must be >= 1");
        const PotentialProfile profile = load_profile(c);
        WittenParams params;
        params.nystrom = nystrom(c);
        params.nu_max = c.nu_max;
        params.nu_step = c.nu_step;
        const WittenReport report =
            witten_index(profile, c.n_schedule, default_lambda_schedule(c.lambda_steps), params);

        Json j;
        j["command"] = "witten";
        j["profile"] = profile_to_json(profile);
        const Json body = report_to_json(report);
        for (const auto& [key, value] : body.items()) j[key] = value;

        if (c.format == OutputFormat::json && c.out.empty()) {
            out << j.dump(2) << "\n";
            return static_cast<int>(kOk);
        }
        if (!c.out.empty()) {
            if (c.format == OutputFormat::json) {
                write_text_file(c.out, j.dump(2) + "\n");
            } else {
                std::string csv = "lambda,delta_r\n";
                for (std::size_t i = 0; i < report.lambda_samples.size(); ++i) {
                    csv += format_number(report.lambda_samples[i]) + "," +
                           format_number(report.delta_r_values[i]) + "\n";
                }
                write_text_file(c.out, csv);
            }
        }
        fmt::print(out, "{:<22}{:>20}\n", "lambda", "Delta_r");
        for (std::size_t i = 0; i < report.lambda_samples.size(); ++i) {
            fmt::print(out, "{:<22}{:>20}\n", format_number(report.lambda_samples[i]),
                       format_number(report.delta_r_values[i]));
        }
        fmt::print(out, "\n{:<22}{:>20}\n", "n", "xi_n(0)");
        for (std::size_t i = 0; i < report.n_schedule.size(); ++i) {
            fmt::print(out, "{:<22}{:>20}\n", report.n_schedule[i], format_number(report.xi_at_zero[i]));
        }
        fmt::print(out, "\n{:<22}{:>20}\n", "extrapolated index", format_number(report.extrapolated_index));
        fmt::print(out, "{:<22}{:>20}\n", "reference c0", format_number(report.reference_c0));
        fmt::print(out, "{:<22}{:>20}\n", "abs error", format_number(report.abs_error));
        fmt::print(out, "{:<22}{:>20}\n", "observed order (n)", format_number(report.observed_order_n));
        fmt::print(out, "{:<22}{:>20}\n", "confidence", report.low_confidence ? "low" : "ok");
        for (const std::string& note : report.notes) fmt::print(out, "note: {}\n", note);
        return static_cast<int>(kOk);
    }, err);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        validate_common(c);
        require(c.modes >= 64 && c.modes % 2 == 0, "--modes must be even and >= 64");
        const PotentialProfile profile =
            c.profile_path.empty() ? builtin_profile(ProfileKind::gaussian, 1.0, 1.0)
                                   : profile_from_file(c.profile_path);
        const double l1 = profile.l1_norm();
        const double reference = c0(profile);
        std::vector<Check> checks;

        checks.push_back(run_check("hs_bound", 1.01, [&] {
            const QuadratureGrid grid = build_grid(profile, c.nodes, c.tail_eps);
            double worst = 0.0;
            for (double nu : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
                const auto t = assemble_bs(profile, grid, SpectralPoint::boundary(nu, Side::upper));
                worst = std::max(worst, l1 > 0.0 ? hs_norm(t.entries) / l1 : hs_norm(t.entries));
            }
            return Check{"hs_bound", worst, 1.01, worst <= 1.01, "max ||K||_HS / ||phi||_1"};
        }));

        checks.push_back(run_check("det2_trivial", 1e-3, [&] {
            const QuadratureGrid grid = build_grid(profile, c.nodes, c.tail_eps);
            double worst = 0.0;
            for (double nu : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
                const auto t = assemble_bs(profile, grid, SpectralPoint::boundary(nu, Side::upper));
                worst = std::max(worst, std::abs(det2(t.entries) - 1.0));
            }
            return Check{"det2_trivial", worst, 1e-3, worst < 1e-3, "max |det2 - 1|"};
        }));

        checks.push_back(run_check("mollified_decay", 1.01, [&] {
            const QuadratureGrid grid = build_grid(profile, c.nodes, c.tail_eps);
            double worst = 0.0;
            for (int n : {2, 8}) {
                for (double nu : {0.0, 2.0, 5.0}) {
                    const auto t = assemble_bs_mollified(profile, n, grid,
                                                         SpectralPoint::boundary(nu, Side::upper));
                    const double bound = 2.5 * n * n / (nu * nu + n * n) * l1 * l1;
                    const double hs2 = std::pow(hs_norm(t.entries), 2);
                    worst = std::max(worst, bound > 0.0 ? hs2 / bound : hs2);
                }
            }
            return Check{"mollified_decay", worst, 1.01, worst <= 1.01, "max ||K_n||^2 / bound"};
        }));

        checks.push_back(run_check("lemma_b6", 0.02, [&] {
            const std::vector<double> grid = uniform_grid(-c.nu_max, c.nu_max, c.nu_step);
            double previous = std::numeric_limits<double>::infinity();
            bool monotone = true;
            double last = 0.0;
            for (int n : {2, 4, 8, 16, 32}) {
                const SSFCurve curve = ssf_mollified(profile, n, grid, nystrom(c));
                const double e = std::abs(CurveFunction(curve)(0.0) - reference);
                monotone = monotone && e <= previous + 1e-14;
                previous = e;
                last = e;
            }
            return Check{"lemma_b6", last, 0.02, monotone && last < 0.02,
                         monotone ? "|xi_32(0) - c0|, monotone in n" : "errors not monotone in n"};
        }));

        checks.push_back(run_check("birman_krein", 1e-14, [&] {
            const double d = std::abs(scattering_matrix(profile) -
                                      std::polar(1.0, -2.0 * std::numbers::pi * reference));
            return Check{"birman_krein", d, 1e-14, d < 1e-14, "|S - exp(-2 pi i c0)|"};
        }));

        checks.push_back(run_check("krein_trn", 5e-3, [&] {
            KreinParams params;
            params.nystrom = nystrom(c);
            params.modes = c.modes;
            params.nu_max = c.nu_max;
            const KreinReport r = krein_check_trn(profile, 4, {-1.0, 0.0}, params);
            return Check{"krein_trn", r.residual, 5e-3, r.residual < 5e-3, "n = 4, z = -1"};
        }));

        checks.push_back(run_check("stieltjes_pair", 1e-2, [&] {
            Eq1Params params;
            params.nystrom = nystrom(c);
            params.nu_max = c.nu_max;
            params.nu_step = c.nu_step;
            const Eq1Report r = trace_identity_eq1(profile, 8, {-1.0, 0.0}, params);
            return Check{"stieltjes_pair", r.relative_residual, 1e-2, r.relative_residual < 1e-2,
                         "relative, n = 8, z = -1"};
        }));

        checks.push_back(run_check("pushnitski_constant", 1e-14, [&] {
            double worst = 0.0;
            for (double lambda : {0.1, 1.0, 100.0}) {
                worst = std::max(worst, std::abs(pushnitski(reference, lambda) - reference));
            }
            return Check{"pushnitski_constant", worst, 1e-14, worst < 1e-14, "c0 through the transform"};
        }));

        fmt::print(out, "{:<22}{:>20}{:>12}  {:<6}{}\n", "check", "measured", "tolerance", "result", "");
        bool all = true;
        for (const Check& k : checks) {
            all = all && k.pass;
            fmt::print(out, "{:<22}{:>20}{:>12}  {:<6}{}\n", k.name, format_number(k.measured),
                       fmt::format("{:.3g}", k.tolerance), k.pass ? "PASS" : "FAIL", k.detail);
        }
        return static_cast<int>(all ? kOk : kVerifyFailed);
    }, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral shift functions and the resolvent-regularized Witten index"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Worker cap (falls back to WITTENLAB_THREADS)")
        ->check(CLI::PositiveNumber);

    RunConfig config;
    std::string format;
    std::string n_schedule;
    auto add_common = [&](CLI::App* sub, bool profile_required) {
        auto* p = sub->add_option("--profile", config.profile_path, "JSON profile descriptor");
        if (profile_required) p->required();
        sub->add_option("--n", config.n, "Mollifier index")->capture_default_str();
        sub->add_option("--nu-max", config.nu_max, "Half-width of the nu-grid")->capture_default_str();
        sub->add_option("--nu-step", config.nu_step, "nu-grid spacing")->capture_default_str();
        sub->add_option("--nodes", config.nodes, "Nystrom node count N")->capture_default_str();
        sub->add_option("--tail-eps", config.tail_eps, "Truncation tolerance")->capture_default_str();
        sub->add_option("--out", config.out, "Output path (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* ssf1d = app.add_subcommand("ssf-1d", "Mollified one-dimensional spectral shift function");
    add_common(ssf1d, true);
    CLI::App* ssf2d = app.add_subcommand("ssf-2d", "Two-dimensional spectral shift function");
    add_common(ssf2d, true);
    ssf2d->add_flag("--constant", config.constant_input, "Feed c0 instead of the det2 curve");
    ssf2d->add_option("--lambda-min", config.lambda_min, "Smallest lambda (> 0)")->capture_default_str();
    ssf2d->add_option("--lambda-max", config.lambda_max, "Largest lambda")->capture_default_str();
    ssf2d->add_option("--lambda-count", config.lambda_count, "Geometric lambda-grid size")->capture_default_str();
    CLI::App* witten = app.add_subcommand("witten", "Resolvent-regularized Witten index");
    add_common(witten, true);
    witten->add_option("--n-schedule", n_schedule, "Comma-separated mollifier indices")
        ->default_str("2,4,8,16,32");
    witten->add_option("--lambda-count", config.lambda_steps, "lambda_k = -2^-k, k = 1..count")
        ->capture_default_str();
    CLI::App* verify = app.add_subcommand("verify", "Run the identity suite");
    add_common(verify, false);
    verify->add_option("--modes", config.modes, "Fourier mode count M")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        if (app.get_subcommands().empty()) fmt::print(err, "{}", app.help());
        return kUsage;
    }

    return guarded([&] {
        if (threads == 0) {
            if (const char* env = std::getenv("WITTENLAB_THREADS"); env && *env) {
                char* end = nullptr;
                const long v = std::strtol(env, &end, 10);
                require(*end == '\0' && v >= 1, fmt::format("WITTENLAB_THREADS='{}' is not a positive integer", env));
                threads = static_cast<int>(v);
            }
        }
        if (threads > 0) set_thread_count(threads);

        if (!n_schedule.empty()) {
            config.n_schedule.clear();
            std::stringstream s(n_schedule);
            std::string item;
            while (std::getline(s, item, ',')) {
                try {
                    std::size_t used = 0;
                    config.n_schedule.push_back(std::stoi(item, &used));
                    require(used == item.size(), "");
                } catch (const std::exception&) {
                    throw InvalidArgument(fmt::format("--n-schedule entry '{}' is not an integer", item));
                }
            }
        }
        if (witten->parsed()) {
            config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
            return cmd_witten(config, out, err);
        }
        config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (ssf1d->parsed()) return cmd_ssf1d(config, out, err);
        if (ssf2d->parsed()) return cmd_ssf2d(config, out, err);
        return cmd_verify(config, out, err);
    }, err);
}

}  // namespace wittenlab::cli
