// Acceptance run: one PASS/FAIL line per criterion; exit 0 iff every selected one passes.
#include <wittenlab/det2lab.hpp>
#include <wittenlab/discretize.hpp>
#include <wittenlab/errors.hpp>
#include <wittenlab/kernels.hpp>
#include <wittenlab/profiles.hpp>
#include <wittenlab/ssf.hpp>
#include <wittenlab/witten.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace wittenlab;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const PotentialProfile& gaussian11() {
    static const PotentialProfile p = builtin_profile(ProfileKind::gaussian, 1.0, 1.0);
    return p;
}

NystromParams nystrom(std::size_t nodes) {
    NystromParams p;
    p.nodes = nodes;
    return p;
}

Outcome closed_form_index() {
    const auto start = std::chrono::steady_clock::now();
    const WittenReport r = witten_index(gaussian11(), {2, 4, 8, 16, 32}, default_lambda_schedule());
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double reference = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    const double err = std::abs(r.extrapolated_index - reference);
    return {err < 0.01 && seconds < 300.0,
            fmt::format("W_r = {:.10f}, |W_r - 1/(2 sqrt(pi))| = {:.3e}, runtime {:.1f} s", r.extrapolated_index,
                        err, seconds)};
}

Outcome det2_triviality() {
    double worst400 = 0.0, worst800 = 0.0;
    for (std::size_t nodes : {400u, 800u}) {
        const QuadratureGrid grid = build_grid(gaussian11(), nodes, 1e-12);
        double worst = 0.0;
        for (double nu : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
            const auto t = assemble_bs(gaussian11(), grid, SpectralPoint::boundary(nu, Side::upper));
            worst = std::max(worst, std::abs(det2(t.entries) - 1.0));
        }
        (nodes == 400 ? worst400 : worst800) = worst;
    }
    // An exactly trivial determinant at both resolutions satisfies "improves 4x" as 0 <= 0.
    const bool improves = worst800 <= worst400 / 4.0;
    return {worst400 < 1e-3 && improves,
            fmt::format("max |det2 - 1| = {:.3e} (N=400), {:.3e} (N=800)", worst400, worst800)};
}

Outcome hs_bounds() {
    const PotentialProfile& p = gaussian11();
    const QuadratureGrid grid = build_grid(p, 400, 1e-12);
    const double l1 = p.l1_norm();
    double worst_bs = 0.0, worst_moll = 0.0;
    for (double nu : {-5.0, -1.0, 0.0, 1.0, 2.0, 5.0}) {
        const auto t = assemble_bs(p, grid, SpectralPoint::boundary(nu, Side::upper));
        worst_bs = std::max(worst_bs, hs_norm(t.entries) / l1);
    }
    for (int n : {2, 8}) {
        for (double nu : {0.0, 2.0, 5.0}) {
            const auto t = assemble_bs_mollified(p, n, grid, SpectralPoint::boundary(nu, Side::upper));
            const double bound = 2.5 * n * n / (nu * nu + n * n) * l1 * l1;
            worst_moll = std::max(worst_moll, std::pow(hs_norm(t.entries), 2) / bound);
        }
    }
    return {worst_bs <= 1.01 && worst_moll <= 1.01,
            fmt::format("max ||K||/||phi||_1 = {:.4f}, max ||K_n||^2/bound = {:.4f}", worst_bs, worst_moll)};
}

Outcome lemma_b6() {
    const PotentialProfile& p = gaussian11();
    const double reference = c0(p);
    const std::vector<double> grid = uniform_grid(-12.0, 12.0, 0.1);
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double last = 0.0, phase_err = 0.0;
    std::string errors;
    for (int n : {2, 4, 8, 16, 32}) {
        const SSFCurve curve = ssf_mollified(p, n, grid, nystrom(400));
        const double xi0 = CurveFunction(curve)(0.0);
        const double e = std::abs(xi0 - reference);
        monotone = monotone && e < previous;
        previous = e;
        last = e;
        const double eta_discrepancy = eta_n_im(p, n, 0.0) / std::numbers::pi - reference;
        phase_err = std::abs(xi0 - reference - eta_discrepancy);
        errors += fmt::format("{}{:.2e}", errors.empty() ? "" : ", ", e);
    }
    return {monotone && last < 0.02 && phase_err < 5e-3,
            fmt::format("errors [{}]{}, phase-term error at n=32 {:.2e}", errors,
                        monotone ? "" : " not monotone", phase_err)};
}

Outcome krein_trn() {
    KreinParams coarse;
    coarse.nystrom = nystrom(400);
    coarse.modes = 1024;
    KreinParams fine = coarse;
    fine.nystrom = nystrom(800);
    fine.modes = 2048;
    const KreinReport a = krein_check_trn(gaussian11(), 4, -1.0, coarse);
    const KreinReport b = krein_check_trn(gaussian11(), 4, -1.0, fine);
    return {a.residual < 5e-3 && b.residual <= 0.5 * a.residual,
            fmt::format("residual {:.3e} (M=1024, N=400), {:.3e} (M=2048, N=800), ratio {:.2f}", a.residual,
                        b.residual, b.residual > 0.0 ? a.residual / b.residual : 0.0)};
}

Outcome stieltjes_pair() {
    const Eq1Report r = trace_identity_eq1(gaussian11(), 8, -1.0);
    const double c = 0.37;
    const cplx z = -1.0;
    const Eq1Report s = trace_identity_eq1([c](double) { return c; }, c, z);
    const cplx exact = c / -z;
    const double exact_err = std::max(std::abs(s.lhs - exact), std::abs(s.rhs - exact));
    return {r.relative_residual < 1e-2 && exact_err < 1e-10,
            fmt::format("relative residual {:.3e} (n=8, z=-1); constant mode error {:.1e}", r.relative_residual,
                        exact_err)};
}

Outcome pushnitski_constants() {
    double worst = 0.0;
    for (double c : {-1.3, 0.0, 0.2820947917738781, 2.5}) {
        for (double lambda : {0.1, 1.0, 100.0}) {
            worst = std::max(worst, std::abs(pushnitski(c, lambda) - c));
            worst = std::max(worst, std::abs(pushnitski(std::function<double(double)>([c](double) { return c; }),
                                                         lambda) -
                                             c));
        }
    }
    return {worst < 1e-14, fmt::format("max |pushnitski(c, lambda) - c| = {:.2e}", worst)};
}

Outcome birman_krein() {
    double worst = 0.0;
    for (ProfileKind kind : {ProfileKind::gaussian, ProfileKind::sech2, ProfileKind::bump}) {
        for (double amplitude : {-2.0, 0.5, 1.0, 3.0}) {
            for (double width : {0.5, 1.0, 2.0}) {
                const PotentialProfile p = builtin_profile(kind, width, amplitude);
                const cplx expected = std::polar(1.0, -2.0 * std::numbers::pi * c0(p));
                worst = std::max(worst, std::abs(scattering_matrix(p) - expected));
            }
        }
    }
    return {worst < 1e-14, fmt::format("max |S - exp(-2 pi i c0)| = {:.2e}", worst)};
}

Outcome ssf2d_constancy() {
    const PotentialProfile& p = gaussian11();
    const int n = 16;
    const SSFCurve one_dim =
        with_eta_tail(ssf_mollified(p, n, uniform_grid(-12.0, 12.0, 0.1), nystrom(400)), p, n);
    const SSFCurve two_dim = pushnitski_curve(one_dim, geometric_grid(0.1, 100.0, 31));
    const auto [lo, hi] = std::minmax_element(two_dim.values.begin(), two_dim.values.end());
    const double variation = *hi - *lo;
    return {variation < 0.02,
            fmt::format("variation {:.4e} over lambda in [0.1, 100] (xi in [{:.6f}, {:.6f}], c0 = {:.6f})",
                        variation, *lo, *hi, c0(p))};
}

Outcome det2_algebra() {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal(0.0, 0.4);
    auto random_matrix = [&] {
        ComplexMatrix m(6, 6);
        for (Eigen::Index i = 0; i < 6; ++i)
            for (Eigen::Index j = 0; j < 6; ++j) m(i, j) = cplx(normal(rng), normal(rng));
        return m;
    };
    double worst_mult = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = random_matrix();
        const ComplexMatrix b = random_matrix();
        // (I + A)(I + B) = I + (A + B + AB); det2 picks up exp(-tr(AB)).
        const cplx lhs = det2(a + b + a * b);
        const cplx rhs = det2(a) * det2(b) * std::exp(-(a * b).trace());
        worst_mult = std::max(worst_mult, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        const cplx d = det2(a);
        worst_eig = std::max(worst_eig, std::abs(d - det2_eigenvalue_product(a)) / std::max(1.0, std::abs(d)));
    }
    return {worst_mult < 1e-9 && worst_eig < 1e-9,
            fmt::format("max rel. error: multiplicativity {:.2e}, eigenvalue product {:.2e}", worst_mult,
                        worst_eig)};
}

const std::vector<std::function<Outcome()>>& criteria() {
    static const std::vector<std::function<Outcome()>> all{
        closed_form_index, det2_triviality, hs_bounds,           lemma_b6,        krein_trn,
        stieltjes_pair,    pushnitski_constants, birman_krein, ssf2d_constancy, det2_algebra};
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int k = std::atoi(argv[++i]);
            if (k < 1 || k > static_cast<int>(criteria().size())) {
                fmt::print(stderr, "criterion must be in 1..{}\n", criteria().size());
                return 1;
            }
            selected.push_back(k);
        } else {
            fmt::print(stderr, "usage: acceptance [--criterion k]...\n");
            return 1;
        }
    }
    if (selected.empty()) {
        for (int k = 1; k <= static_cast<int>(criteria().size()); ++k) selected.push_back(k);
    }

    bool all_pass = true;
    for (int k : selected) {
        Outcome o;
        try {
            o = criteria()[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            o = {false, fmt::format("error: {}", e.what())};
        }
        all_pass = all_pass && o.pass;
        fmt::print("criterion {}: {} {}\n", k, o.pass ? "PASS" : "FAIL", o.detail);
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
