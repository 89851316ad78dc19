// Acceptance run: one line per criterion, exit status 0 only when all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "frobpencil/cli/config.hpp"
#include "frobpencil/cli/report.hpp"
#include "frobpencil/cli/run.hpp"
#include "frobpencil/elliptic/weierstrass.hpp"
#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/flat/flat_structure.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/random.hpp"
#include "frobpencil/verify/axioms.hpp"

using namespace frob;
using model::AbelianIntegral;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<cplx> random_lower(numeric::Rng& rng, int n) {
    std::vector<cplx> v(static_cast<std::size_t>(n - 1));
    for (auto& x : v) x = rng.complex_in_box(1.0);
    return v;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const json* find_check(const json& report, const std::string& name) {
    for (const auto& c : report["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

double residual_of(const json& report, const std::string& name) {
    const json* c = find_check(report, name);
    if (!c || !(*c)["residual"].is_number()) return NAN;
    return (*c)["residual"].get<double>();
}

Outcome fiber_dimension() {
    numeric::Rng rng(1);
    std::string detail;
    bool ok = true;
    for (auto [g, n] : {std::pair{0, 3}, {0, 4}, {0, 6}, {1, 2}, {1, 3}}) {
        AbelianIntegral m = g == 0 ? AbelianIntegral::genus0(n, random_lower(rng, n)) : [&] {
            std::vector<cplx> gamma(static_cast<std::size_t>(n - 1));
            for (auto& x : gamma) x = rng.complex_in_box(0.3);
            gamma.back() = cplx(1.0, 0.2);
            return AbelianIntegral::genus1({0.3, 1.1}, gamma, rng.complex_in_box(0.5), 0.0, 0.0);
        }();
        const auto fa = engine::fiber_algebra(m, 2);
        const auto expected = static_cast<long>(2 * g + n - 1);
        const long crit = static_cast<long>(fa.critical.size());
        const long dim = static_cast<long>(m.chart().size());
        ok = ok && crit == expected && dim == expected && fa.chart_to_fiber.cols() == expected &&
             fa.chart_to_fiber.rows() == expected;
        detail += "(" + std::to_string(g) + "," + std::to_string(n) + "):" + std::to_string(crit) + "/" +
                  std::to_string(dim) + " ";
    }
    return {ok, "critical points/chart dim " + detail};
}

Outcome genus0_pipeline() {
    numeric::Rng rng(2);
    double eta_var = 0.0, pot = 0.0, wdvv = 0.0;
    ComplexMatrix first;
    for (int i = 0; i < 20; ++i) {
        const auto m = AbelianIntegral::genus0(4, random_lower(rng, 4));
        const flat::FlatChart chart = flat::flat_chart(m, 2);
        if (i == 0) first = chart.eta;
        eta_var = std::max(eta_var, (chart.eta - first).cwiseAbs().maxCoeff());
        eta_var = std::max(eta_var, (chart.eta - chart.eta_predicted).cwiseAbs().maxCoeff());
        const auto c = flat::structure_constants(chart, engine::fiber_algebra(m, 2));
        wdvv = std::max(wdvv, flat::wdvv_residual(c, chart.eta_predicted));
        pot = std::max(pot, flat::potentiality_defect(m, 2, 1e-3));
    }
    return {eta_var < 1e-8 && pot < 1e-9 && wdvv < 1e-9,
            "eta variation " + fmt(eta_var) + ", potentiality " + fmt(pot) + ", wdvv " + fmt(wdvv)};
}

Outcome oracle_and_pencil(bool pencil, const json& report) {
    if (!pencil) {
        const double chart = residual_of(report, "cech_oracle_chart");
        const double fiber = residual_of(report, "cech_oracle_fiber");
        return {chart < 1e-8 && fiber < 1e-8,
                "50 instances n=3..6, relative delta chart " + fmt(chart) + ", fiber " + fmt(fiber)};
    }
    const double fit = residual_of(report, "pencil_fit");
    const double phi = residual_of(report, "pencil_residue");
    return {fit < 1e-6 && phi < 1e-6, "10 points (timed with criterion 3), 1/z fit residual " + fmt(fit) + ", residue vs Phi " + fmt(phi)};
}

Outcome k_independence() {
    numeric::Rng rng(5);
    double worst = 0.0, metric_gap = 1e300;
    for (int i = 0; i < 10; ++i) {
        const int n = 3 + i % 3;
        const auto m = AbelianIntegral::genus0(n, random_lower(rng, n));
        const auto c2 = verify::raised_structure_constants(m, 2);
        const auto c3 = verify::raised_structure_constants(m, 3);
        double diff = 0.0, scale = 1.0;
        for (std::size_t a = 0; a < c2.size(); ++a) {
            diff = std::max(diff, (c2[a] - c3[a]).cwiseAbs().maxCoeff());
            scale = std::max(scale, c2[a].cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, diff / scale);
        const ComplexMatrix e2 = engine::metric_matrix(engine::fiber_algebra(m, 2));
        const ComplexMatrix e3 = engine::metric_matrix(engine::fiber_algebra(m, 3));
        metric_gap = std::min(metric_gap, (e2 - e3).norm() / e2.norm());
    }
    return {worst < 1e-8 && metric_gap > 1e-6,
            "structure constants delta " + fmt(worst) + ", smallest relative metric gap " + fmt(metric_gap)};
}

Outcome elliptic_substrate() {
    numeric::Rng rng(6);
    double ode = 0.0, period = 0.0, legendre = 0.0, lattice = 0.0;
    for (int t = 0; t < 10; ++t) {
        const elliptic::Lattice L = elliptic::lattice_init({rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.6)});
        legendre = std::max(legendre, std::abs(L.legendre_defect()));
        const auto [g2, g3] = elliptic::invariants_lattice_sum(L.tau);
        lattice = std::max({lattice, rel(L.g2, g2), rel(L.g3, g3)});
        for (int i = 0; i < 100;) {
            const cplx u = rng.uniform(-0.5, 0.5) + rng.uniform(-0.5, 0.5) * L.tau;
            if (std::abs(elliptic::reduce(L, u).reduced) < 0.1) continue;
            ++i;
            const cplx p = elliptic::wp(L, u), dp = elliptic::wp(L, u, 1);
            ode = std::max(ode, rel(dp * dp, 4.0 * p * p * p - L.g2 * p - L.g3));
            const cplx z = elliptic::zeta_w(L, u);
            period = std::max({period, rel(elliptic::wp(L, u + 1.0), p), rel(elliptic::wp(L, u + L.tau), p),
                               rel(elliptic::zeta_w(L, u + 1.0) - z, L.eta1),
                               rel(elliptic::zeta_w(L, u + L.tau) - z, L.eta2)});
            lattice = std::max(lattice, rel(p, elliptic::wp_lattice_sum(L.tau, u)));
        }
    }
    const bool ok = ode < 1e-10 && period < 1e-10 && legendre < 1e-10 && lattice < 1e-10;
    return {ok, "ode " + fmt(ode) + ", periodicity " + fmt(period) + ", legendre " + fmt(legendre) +
                    ", q-series vs lattice " + fmt(lattice)};
}

Outcome genus1_leaf(const json& report) {
    const double pa = residual_of(report, "period_a"), pb = residual_of(report, "period_b");
    bool suite = true;
    for (const auto& c : report["checks"]) {
        const std::string name = c["name"];
        if (name.rfind("period_", 0) == 0 || name.rfind("jumps_", 0) == 0) continue;
        suite = suite && c["pass"].get<bool>();
        if (c["bound"] == "upper" && c["pass"].get<bool>()) suite = suite && c["threshold"].get<double>() <= 1e-5;
    }
    const double transport = residual_of(report, "jumps_transport");
    return {pa < 1e-8 && pb < 1e-8 && suite && transport < 1e-5,
            "periods " + fmt(std::max(pa, pb)) + ", axiom suite " + (suite ? "passes" : "fails") +
                ", jumps transport " + fmt(transport)};
}

Outcome hurwitz() {
    const auto m = AbelianIntegral::genus1({0.3, 1.1}, {{0.1, 0.05}, {1.0, 0.2}}, {0.2, -0.1}, 0.0, 0.0);
    const auto& d = m.genus1_data();
    const bool exact = d.alpha == cplx{} && d.beta == cplx{};
    verify::AxiomOptions opts;
    opts.region_radius = 0.02;
    const auto suite = verify::axiom_suite(m, 3, opts);
    return {exact && suite.all_pass(), std::string("alpha = beta = 0 ") + (exact ? "exactly" : "not exact") + ", suite " +
                                           std::to_string(suite.checks.size()) + " checks " +
                                           (suite.all_pass() ? "pass" : "fail")};
}

Outcome sweep(const json& report) {
    const double failing = residual_of(report, "cells_failing");
    const json& art = report["artifacts"];
    const bool has_bound = art.contains("lipschitz_bound") && art["lipschitz_bound"].is_number();
    const double lip = has_bound ? art["lipschitz_bound"].get<double>() : NAN;
    return {failing == 0.0 && has_bound && std::isfinite(lip) && art["cells"].size() == 25,
            std::to_string(art["cells"].size()) + " cells, failing " + fmt(failing) + ", Lipschitz bound " + fmt(lip)};
}

cli::RunConfig leaf_config() {
    cli::RunConfig cfg;
    cfg.mode = cli::Mode::verify;
    cfg.genus = 1;
    cfg.n = 3;
    cfg.tau = {0.3, 1.1};
    cfg.period_a = 1.0;
    cfg.period_b = {2.0, 1.0};
    cfg.seed = 20;
    return cfg;
}

}  // namespace

int main() {
    int failures = 0;
    auto run = [&](int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && s < limit_s;
        if (!pass) ++failures;
        std::printf("criterion %2d %-28s %s  %s; %.2f s (limit %.0f s)\n", id, title, pass ? "PASS" : "FAIL",
                    o.detail.c_str(), s, limit_s);
        std::fflush(stdout);
    };

    json oracle_report, leaf_report;
    std::string leaf_text;
    run(1, "fiber-dimension law", 1, fiber_dimension);
    run(2, "genus-0 A3 pipeline", 5, genus0_pipeline);
    run(3, "Cech oracle equivalence", 30, [&] {
        cli::RunConfig cfg;
        cfg.mode = cli::Mode::oracle;
        cfg.samples = 50;
        cfg.seed = 3;
        oracle_report = cli::run(cfg).report;
        return oracle_and_pencil(false, oracle_report);
    });
    run(4, "pencil shape", 60, [&] { return oracle_and_pencil(true, oracle_report); });
    run(5, "k-independence", 10, k_independence);
    run(6, "elliptic substrate", 10, elliptic_substrate);
    run(7, "genus-1 leaf", 300, [&] {
        leaf_report = cli::run(leaf_config()).report;
        leaf_text = cli::canonical_json(leaf_report);
        return genus1_leaf(leaf_report);
    });
    run(8, "Hurwitz reduction", 120, hurwitz);
    run(9, "period-family sweep", 1200, [&] {
        cli::RunConfig cfg = leaf_config();
        cfg.mode = cli::Mode::sweep;
        return sweep(cli::run(cfg).report);
    });
    run(10, "determinism", 300, [&] {
        const std::string again = cli::canonical_json(cli::run(leaf_config()).report);
        return Outcome{!leaf_text.empty() && again == leaf_text,
                       "repeat of criterion 7: " + std::to_string(again.size()) + " bytes, " +
                           (again == leaf_text ? "identical" : "different")};
    });
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
