#include "frobpencil/cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "frobpencil/cli/report.hpp"
#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"
#include "frobpencil/flat/flat_structure.hpp"
#include "frobpencil/verify/axioms.hpp"
#include "frobpencil/verify/cech.hpp"
#include "frobpencil/verify/jumps.hpp"
#include "frobpencil/verify/pencil.hpp"

namespace frob::cli {

using model::AbelianIntegral;
using nlohmann::json;
using verify::SuiteReport;

namespace {

constexpr double kOracleTol = 1e-8;
constexpr double kPencilTol = 1e-6;
constexpr double kPeriodTol = 1e-8;
constexpr double kTransportTol = 1e-5;

std::string error_name(const std::exception& e) {
    if (const auto* fe = dynamic_cast<const Error*>(&e)) return std::string(to_string(fe->kind()));
    return "Exception";
}

verify::AxiomOptions suite_options(const RunConfig& cfg, int genus) {
    verify::AxiomOptions o;
    if (cfg.tol) {
        o.use_default_thresholds = false;
        o.thresholds = verify::default_thresholds(genus);
        auto& t = o.thresholds;
        t.algebra = t.flatness = t.potentiality = t.wdvv = t.k_independence = *cfg.tol;
    }
    return o;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    j["genus"] = cfg.genus;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["coeffs"] = complex_json(cfg.coeffs);
    j["tau"] = complex_json(cfg.tau);
    j["Pa"] = complex_json(cfg.period_a);
    j["Pb"] = complex_json(cfg.period_b);
    j["grid"] = std::to_string(cfg.grid_rows) + "x" + std::to_string(cfg.grid_cols);
    j["sweep"] = cfg.sweep;
    j["sweep_radius"] = cfg.sweep_radius;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
    return j;
}

json conventions_json() {
    json j;
    j["branch"] = "x = f^(-1/n) with the principal n-th root of the leading coefficient";
    j["a_cycle"] = "segment from the base point to base + 1";
    j["b_cycle"] = "segment from the base point to base + tau";
    j["cycle_base"] = complex_json(elliptic::kCycleBase);
    j["z_samples"] = complex_json(verify::default_z_samples());
    j["flat_coordinates"] = "t_A = n [x^A] p for A = 1..n-1; genus 1 adds B = lambda0 tau - mu eta2 and S";
    j["metric"] = "eta(X, Y) = sum_s X_s Y_s rho(q_s)^2 / omega'(q_s)";
    j["genus1_chart"] = "(tau, gamma_1 .. gamma_{n-1}, c0)";
    return j;
}

json model_json(const AbelianIntegral& m) {
    json j;
    j["genus"] = m.genus();
    j["n"] = m.n();
    j["chart"] = complex_json(m.chart());
    if (m.genus() == 1) {
        const auto& d = m.genus1_data();
        j["Pa"] = complex_json(d.period_a);
        j["Pb"] = complex_json(d.period_b);
        j["alpha"] = complex_json(d.alpha);
        j["beta"] = complex_json(d.beta);
    }
    return j;
}

json critical_json(const model::CriticalData& cd) {
    json j;
    j["points"] = complex_json(cd.points);
    j["values"] = complex_json(cd.values);
    return j;
}

json tensor_json(const flat::Tensor3& c) {
    json a = json::array();
    for (int i = 0; i < c.d; ++i) {
        ComplexMatrix s(c.d, c.d);
        for (int j = 0; j < c.d; ++j)
            for (int k = 0; k < c.d; ++k) s(j, k) = c(i, j, k);
        a.push_back(complex_json(s));
    }
    return a;
}

json matrices_json(const std::vector<ComplexMatrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(complex_json(m));
    return a;
}

ComplexVector random_vector(numeric::Rng& rng, int d, double box) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.complex_in_box(box);
    return v;
}

numeric::Polynomial random_polynomial(numeric::Rng& rng, int degree) {
    std::vector<cplx> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = rng.complex_in_box(1.0);
    return numeric::Polynomial(c);
}

// ---- genus-1 pieces shared by verify and oracle

void period_checks(const AbelianIntegral& m, SuiteReport& rep) {
    const auto& L = m.lattice();
    const auto form = model::differential(m);
    const cplx a = elliptic::contour_period(L, form, elliptic::make_cycle(L, elliptic::CycleKind::a), 1e-12);
    const cplx b = elliptic::contour_period(L, form, elliptic::make_cycle(L, elliptic::CycleKind::b), 1e-12);
    rep.add(verify::check_below("period_a", std::abs(a - m.period_a()) / std::max(1.0, std::abs(m.period_a())), kPeriodTol));
    rep.add(verify::check_below("period_b", std::abs(b - m.period_b()) / std::max(1.0, std::abs(m.period_b())), kPeriodTol));
}

void jumps_checks(const AbelianIntegral& m, int k, SuiteReport& rep, json& artifacts) {
    const std::vector<cplx> c = m.chart();
    std::vector<std::vector<cplx>> path;
    for (int i = 0; i <= 3; ++i) {
        auto x = c;
        x[0] += cplx(0.01 * i, 0.005 * i);
        x[1] += 0.02 * i;
        path.push_back(x);
    }
    const verify::JumpsReport r = verify::jumps_flatness_check(m, path, k);
    rep.add(verify::check_below("jumps_transport", r.transport_delta, kTransportTol));
    rep.add(verify::check_below("jumps_relation", r.jump_defect, kTransportTol));
    rep.add(verify::check_below("jumps_fit", r.fit_residual, 1e-6));
    rep.add(verify::check_below("jumps_solve", r.solve_residual, 1e-6));
    std::vector<std::vector<cplx>> loop;
    for (auto d : {cplx(0.0), cplx(0.02), cplx(0.02, 0.02), cplx(0.0, 0.02), cplx(0.0)}) {
        auto x = c;
        x[0] += 0.5 * d;
        x[1] += d;
        loop.push_back(x);
    }
    rep.add(verify::check_below("jumps_loop", verify::jumps_flatness_check(m, loop, k).loop_closure, kTransportTol));
    json lam = json::array();
    for (const auto& form : r.transported.front()) lam.push_back(complex_json(form.front()));
    artifacts["jump_coefficients"] = lam;
}

// ---- genus-0 pieces

struct OracleSample {
    double chart_delta = 0.0;
    double fiber_delta = 0.0;
    double relation = 0.0;
    double third_slot = 0.0;
};

OracleSample cech_sample(const AbelianIntegral& m, const ComplexVector& xi, const numeric::Polynomial& a,
                         const numeric::Polynomial& g1, cplx g2) {
    const int n = m.n();
    const auto cd = model::critical_data(m);
    const auto fa = engine::fiber_algebra(m, 2);
    const auto c = verify::cocycle_from_form(m, a) +
                   verify::coboundary(m, g1, numeric::LaurentSeries::constant(g2, verify::cech_truncation(m) + 2,
                                                                              numeric::ExpansionPoint::infinity()));
    const verify::CechReduction r = verify::cech_multiplication_oracle(m, xi, c, cd);
    ComplexVector ac = ComplexVector::Zero(n - 1);
    for (int j = 0; j <= std::min(a.degree(), n - 2); ++j) ac(j) = a.coefficient(j);
    const auto prod = engine::multiply(fa, engine::tangent_to_fiber(fa, xi), engine::tangent_to_fiber(fa, ac));
    OracleSample s;
    s.chart_delta = (r.chart - prod.chart).cwiseAbs().maxCoeff() / std::max(1e-300, prod.chart.cwiseAbs().maxCoeff());
    s.fiber_delta = (r.fiber - prod.fiber).cwiseAbs().maxCoeff() / std::max(1e-300, prod.fiber.cwiseAbs().maxCoeff());
    s.relation = r.relation_defect;
    s.third_slot = r.third_slot_defect;
    return s;
}

void add_oracle_checks(const std::vector<OracleSample>& samples, SuiteReport& rep) {
    OracleSample worst;
    for (const auto& s : samples) {
        worst.chart_delta = std::max(worst.chart_delta, s.chart_delta);
        worst.fiber_delta = std::max(worst.fiber_delta, s.fiber_delta);
        worst.relation = std::max(worst.relation, s.relation);
        worst.third_slot = std::max(worst.third_slot, s.third_slot);
    }
    const std::string count = std::to_string(samples.size()) + " instances";
    rep.add(verify::check_below("cech_oracle_chart", worst.chart_delta, kOracleTol, count));
    rep.add(verify::check_below("cech_oracle_fiber", worst.fiber_delta, kOracleTol, count));
    rep.add(verify::check_below("cech_relation", worst.relation, 1e-10, count));
    rep.add(verify::check_below("cech_third_slot", worst.third_slot, 1e-10, count));
}

void pencil_checks(const std::vector<verify::PencilReport>& reps, SuiteReport& rep) {
    double fit = 0.0, phi = 0.0;
    for (const auto& r : reps) {
        fit = std::max(fit, r.fit_residual);
        phi = std::max(phi, r.phi_delta);
    }
    const std::string count = std::to_string(reps.size()) + " points";
    rep.add(verify::check_below("pencil_fit", fit, kPencilTol, count));
    rep.add(verify::check_below("pencil_residue", phi, kPencilTol, count));
}

// ---- modes

void compute_mode(const RunConfig& cfg, numeric::Rng& rng, SuiteReport& rep, json& artifacts) {
    const AbelianIntegral m = make_model(cfg, rng);
    artifacts["model"] = model_json(m);
    const auto cd = model::critical_data(m);
    artifacts["critical"] = critical_json(cd);
    engine::EngineOptions eo;
    const auto fa = engine::fiber_algebra(m, cfg.k, eo);
    flat::FlatOptions fo;
    fo.flatness_tol_genus0 = fo.flatness_tol_genus1 = 1e300;
    const flat::FlatChart chart = flat::flat_chart(m, cfg.k, fo);
    const flat::Tensor3 c = flat::structure_constants(chart, fa);
    artifacts["flat_coordinates"] = complex_json(chart.coordinates);
    artifacts["eta"] = complex_json(chart.eta);
    artifacts["eta_predicted"] = complex_json(chart.eta_predicted);
    artifacts["structure_constants"] = tensor_json(c);

    const auto th = cfg.tol ? *cfg.tol : (m.genus() == 0 ? 1e-9 : 1e-5);
    rep.add(verify::check_below("flatness", chart.flatness_defect, cfg.tol ? *cfg.tol : (m.genus() == 0 ? 1e-8 : 1e-5)));
    rep.add(verify::check_below("c_symmetry", flat::symmetry_defect(c), th));
    rep.add(verify::check_below("wdvv", flat::wdvv_residual(c, chart.eta_predicted), th));
    rep.add(verify::check_below("potentiality",
                                flat::potentiality_defect(m, cfg.k, m.genus() == 0 ? 1e-3 : 1e-2, fo), th));

    // potential: global sample at genus 0, a small neighbourhood at genus 1
    std::vector<std::vector<cplx>> pts{m.chart()};
    const double box = m.genus() == 0 ? 1.0 : 0.005;
    for (int i = 0; i < 19; ++i) {
        auto x = m.chart();
        for (auto& v : x) v += rng.complex_in_box(box);
        pts.push_back(x);
    }
    const int degree = m.genus() == 0 ? m.n() + 1 : 6;
    const flat::PotentialFit fit = flat::potential(m, cfg.k, pts, degree, fo);
    json pj;
    pj["center"] = complex_json(fit.center);
    pj["max_degree"] = degree;
    json monos = json::array();
    for (std::size_t i = 0; i < fit.monomials.size(); ++i) {
        json e;
        e["exponents"] = fit.monomials[i];
        e["coefficient"] = complex_json(fit.coefficients(static_cast<Eigen::Index>(i)));
        monos.push_back(e);
    }
    pj["terms"] = monos;
    artifacts["potential"] = pj;
    rep.add(verify::check_below("potential_fit", fit.fit_residual, m.genus() == 0 ? th : 1e-5));
}

void verify_mode(const RunConfig& cfg, numeric::Rng& rng, SuiteReport& rep, json& artifacts) {
    const AbelianIntegral m = make_model(cfg, rng);
    artifacts["model"] = model_json(m);
    verify::AxiomOptions opts = suite_options(cfg, m.genus());
    if (m.genus() == 1) opts.region_radius = 0.02;
    rep.append(verify::axiom_suite(m, cfg.k, opts));
    if (m.genus() == 0) {
        const int d = m.chart_dimension();
        const ComplexVector xi = random_vector(rng, d, 1.0);
        const numeric::Polynomial a = random_polynomial(rng, m.n() - 2);
        const numeric::Polynomial g1 = random_polynomial(rng, 2);
        const cplx g2 = rng.complex_in_box(1.0);
        add_oracle_checks({cech_sample(m, xi, a, g1, g2)}, rep);
        pencil_checks({verify::pencil_consistency(m, xi, verify::default_z_samples())}, rep);
    } else {
        period_checks(m, rep);
        jumps_checks(m, cfg.k, rep, artifacts);
    }
    try {
        artifacts["eta"] = complex_json(flat::flat_chart(m, cfg.k).eta);
    } catch (const std::exception&) {
    }
}

void oracle_mode(const RunConfig& cfg, numeric::Rng& rng, SuiteReport& rep, json& artifacts) {
    if (cfg.genus == 1) {
        const AbelianIntegral m = make_model(cfg, rng);
        artifacts["model"] = model_json(m);
        jumps_checks(m, cfg.k, rep, artifacts);
        return;
    }
    struct Draw {
        AbelianIntegral m;
        ComplexVector xi;
        numeric::Polynomial a, g1;
        cplx g2;
    };
    std::vector<Draw> draws;
    for (int i = 0; i < cfg.samples; ++i) {
        const int n = 3 + i % 4;
        std::vector<cplx> lower(static_cast<std::size_t>(n - 1));
        for (auto& x : lower) x = rng.complex_in_box(1.0);
        const auto m = AbelianIntegral::genus0(n, lower);
        auto xi = random_vector(rng, n - 1, 1.0);
        auto a = random_polynomial(rng, n - 2);
        auto g1 = random_polynomial(rng, 2);
        const cplx g2 = rng.complex_in_box(1.0);
        draws.push_back({m, xi, a, g1, g2});
    }
    std::vector<OracleSample> samples(draws.size());
    parallel_for(static_cast<int>(draws.size()), [&](int i) {
        const auto& d = draws[static_cast<std::size_t>(i)];
        samples[static_cast<std::size_t>(i)] = cech_sample(d.m, d.xi, d.a, d.g1, d.g2);
    });
    add_oracle_checks(samples, rep);

    const int npencil = std::min(cfg.samples, 10);
    std::vector<std::pair<AbelianIntegral, ComplexVector>> pdraws;
    for (int i = 0; i < npencil; ++i) {
        std::vector<cplx> lower(static_cast<std::size_t>(cfg.n - 1));
        for (auto& x : lower) x = rng.complex_in_box(1.0);
        const auto m = AbelianIntegral::genus0(cfg.n, lower);
        pdraws.emplace_back(m, random_vector(rng, cfg.n - 1, 1.0));
    }
    std::vector<verify::PencilReport> preps(pdraws.size());
    parallel_for(npencil, [&](int i) {
        const auto& [m, xi] = pdraws[static_cast<std::size_t>(i)];
        preps[static_cast<std::size_t>(i)] = verify::pencil_consistency(m, xi, verify::default_z_samples());
    });
    pencil_checks(preps, rep);
    verify::PencilOptions fault;
    fault.synthetic_second_order = 1e-3;
    const auto& [m0, xi0] = pdraws.front();
    rep.add(verify::check_above("pencil_detector",
                                verify::pencil_consistency(m0, xi0, verify::default_z_samples(), fault).fit_residual, 1e-4,
                                "synthetic 1e-3 / z^2 term"));
    artifacts["pencil_residue_example"] = complex_json(preps.front().residue);
}

void sweep_mode(const RunConfig& cfg, numeric::Rng& rng, SuiteReport& rep, json& artifacts) {
    const AbelianIntegral base = make_model(cfg, rng);
    artifacts["model"] = model_json(base);
    const auto& g1 = base.genus1_data();
    const int R = cfg.grid_rows, C = cfg.grid_cols;
    auto offset = [&](int i, int count) { return count == 1 ? 0.0 : cfg.sweep_radius * (-1.0 + 2.0 * i / (count - 1)); };
    struct Cell {
        cplx tau, pa, pb;
        SuiteReport suite;
        std::vector<ComplexMatrix> constants;
        std::string error;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(R * C));
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            Cell& c = cells[static_cast<std::size_t>(i * C + j)];
            c.tau = g1.lattice.tau;
            c.pa = g1.period_a;
            c.pb = g1.period_b;
            if (cfg.sweep == "periods") {
                c.pa += offset(i, R);
                c.pb += offset(j, C);
            } else {
                c.tau += 0.1 * cplx(offset(i, R), offset(j, C));
            }
        }
    const verify::AxiomOptions opts = suite_options(cfg, 1);
    parallel_for(R * C, [&](int idx) {
        Cell& c = cells[static_cast<std::size_t>(idx)];
        try {
            const auto m = AbelianIntegral::genus1(c.tau, g1.gamma, g1.c0, c.pa, c.pb);
            c.suite = verify::axiom_suite(m, cfg.k, opts);
            c.constants = verify::raised_structure_constants(m, cfg.k);
        } catch (const std::exception& e) {
            c.error = e.what();
        }
    });

    json jc = json::array();
    int failing = 0;
    for (const auto& c : cells) {
        json j;
        j["tau"] = complex_json(c.tau);
        j["Pa"] = complex_json(c.pa);
        j["Pb"] = complex_json(c.pb);
        const bool ok = c.error.empty() && c.suite.all_pass();
        j["pass"] = ok;
        j["checks"] = suite_json(c.suite);
        if (!c.error.empty()) j["error"] = c.error;
        if (!c.constants.empty()) j["structure_constants"] = matrices_json(c.constants);
        if (!ok) ++failing;
        jc.push_back(j);
    }
    artifacts["cells"] = jc;
    rep.add(verify::check_below("cells_failing", failing, 0.0, std::to_string(R * C) + " cells"));

    // finite-difference Lipschitz bound over adjacent cells
    double lip = 0.0;
    auto param = [&](const Cell& c) { return cfg.sweep == "periods" ? std::vector<cplx>{c.pa, c.pb} : std::vector<cplx>{c.tau}; };
    auto distance = [&](const Cell& a, const Cell& b) {
        const auto pa = param(a), pb = param(b);
        double s = 0.0;
        for (std::size_t i = 0; i < pa.size(); ++i) s += std::norm(pa[i] - pb[i]);
        return std::sqrt(s);
    };
    bool have_pair = false;
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            const Cell& a = cells[static_cast<std::size_t>(i * C + j)];
            for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
                if (i + di >= R || j + dj >= C) continue;
                const Cell& b = cells[static_cast<std::size_t>((i + di) * C + j + dj)];
                if (a.constants.empty() || b.constants.empty()) continue;
                double diff = 0.0;
                for (std::size_t l = 0; l < a.constants.size(); ++l)
                    diff = std::max(diff, (a.constants[l] - b.constants[l]).cwiseAbs().maxCoeff());
                lip = std::max(lip, diff / distance(a, b));
                have_pair = true;
            }
        }
    artifacts["lipschitz_bound"] = lip;
    if (have_pair) rep.add(verify::check_below("lipschitz_bound", lip, 1e8, "max |dC| / |dP| over adjacent cells"));
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("FROBPENCIL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
    if (count <= 0) return;
    const int workers = std::min(worker_count(), count);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

AbelianIntegral make_model(const RunConfig& cfg, numeric::Rng& rng) {
    const int n = cfg.n;
    if (cfg.genus == 0) {
        std::vector<cplx> lower = cfg.coeffs;
        if (lower.empty()) {
            lower.resize(static_cast<std::size_t>(n - 1));
            for (auto& x : lower) x = rng.complex_in_box(1.0);
        }
        return AbelianIntegral::genus0(n, lower);
    }
    std::vector<cplx> gamma(cfg.coeffs.begin(), cfg.coeffs.begin() + std::min<std::ptrdiff_t>(cfg.coeffs.size(), n - 1));
    cplx c0 = cfg.coeffs.size() == static_cast<std::size_t>(n) ? cfg.coeffs.back() : cplx{};
    if (gamma.empty()) {
        gamma.resize(static_cast<std::size_t>(n - 1));
        for (int j = 0; j < n - 2; ++j) gamma[static_cast<std::size_t>(j)] = rng.complex_in_box(0.3);
        gamma.back() = cplx(1.0, 0.2) + rng.complex_in_box(0.2);
        c0 = rng.complex_in_box(0.5);
    }
    return AbelianIntegral::genus1(cfg.tau, gamma, c0, cfg.period_a, cfg.period_b);
}

RunResult run(const RunConfig& cfg) {
    validate(cfg);
    numeric::Rng rng(cfg.seed);
    SuiteReport rep;
    json artifacts = json::object();
    try {
        switch (cfg.mode) {
            case Mode::compute: compute_mode(cfg, rng, rep, artifacts); break;
            case Mode::verify: verify_mode(cfg, rng, rep, artifacts); break;
            case Mode::sweep: sweep_mode(cfg, rng, rep, artifacts); break;
            case Mode::oracle: oracle_mode(cfg, rng, rep, artifacts); break;
        }
    } catch (const std::exception& e) {
        rep.add(verify::check_error(error_name(e), 0.0, e.what()));
    }
    if (rep.checks.empty()) rep.add(verify::check_error("no_checks", 0.0, "the run produced no checks"));

    RunResult out;
    json& r = out.report;
    r["schema_version"] = kSchemaVersion;
    r["mode"] = to_string(cfg.mode);
    r["config"] = config_json(cfg);
    r["conventions"] = conventions_json();
    r["checks"] = suite_json(rep);
    r["artifacts"] = artifacts;
    r["pass"] = rep.all_pass();
    out.exit_code = rep.all_pass() ? 0 : 1;
    int failed = 0;
    std::string names;
    for (const auto& c : rep.checks)
        if (!c.pass) {
            ++failed;
            names += (names.empty() ? "" : ", ") + c.name;
        }
    out.summary = to_string(cfg.mode) + ": " + std::to_string(rep.checks.size()) + " checks, " + std::to_string(failed) +
                  " failed" + (failed ? " (" + names + ")" : "");
    return out;
}

}  // namespace frob::cli
