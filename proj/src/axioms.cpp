#include "frobpencil/verify/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"

namespace frob::verify {

using model::AbelianIntegral;

namespace {

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

void guarded(SuiteReport& rep, const std::string& name, double threshold, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        rep.add(check_error(name, threshold, e.what()));
    }
}

double max_distance(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b, double* scale) {
    double worst = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
        s = std::max(s, b[i].cwiseAbs().maxCoeff());
    }
    if (scale) *scale = s;
    return worst;
}

}  // namespace

SuiteThresholds default_thresholds(int genus) {
    SuiteThresholds t;
    if (genus == 1) {
        t.algebra = t.flatness = t.potentiality = t.wdvv = t.k_independence = 1e-5;
    }
    return t;
}

std::vector<ComplexMatrix> raised_structure_constants(const AbelianIntegral& m, int k, const engine::EngineOptions& opts) {
    const engine::FiberAlgebra fa = engine::fiber_algebra(m, k, opts);
    const ComplexMatrix& M = fa.chart_to_fiber;
    const ComplexVector g = engine::idempotent_metric(fa);
    const int d = fa.dimension();
    const ComplexMatrix eta = M.transpose() * g.asDiagonal() * M;
    const ComplexMatrix inv = eta.inverse();
    std::vector<ComplexMatrix> C(static_cast<std::size_t>(d), ComplexMatrix::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            ComplexVector lowered(d);
            for (int l = 0; l < d; ++l) lowered(l) = (M.col(i).cwiseProduct(M.col(j)).cwiseProduct(M.col(l)).cwiseProduct(g)).sum();
            const ComplexVector up = inv * lowered;
            for (int l = 0; l < d; ++l) C[static_cast<std::size_t>(l)](i, j) = up(l);
        }
    return C;
}

SuiteReport axiom_suite(const AbelianIntegral& m, int k, const AxiomOptions& opts) {
    const SuiteThresholds th = opts.use_default_thresholds ? default_thresholds(m.genus()) : opts.thresholds;
    SuiteReport rep;
    engine::FiberAlgebra fa;
    try {
        fa = engine::fiber_algebra(m, k, opts.flat.engine);
    } catch (const std::exception& e) {
        rep.add(check_error("fiber_algebra", 0.0, e.what()));
        return rep;
    }
    const int d = fa.dimension();
    std::vector<engine::TangentVector> basis;
    for (int i = 0; i < d; ++i) basis.push_back(engine::tangent_to_fiber(fa, ComplexVector::Unit(d, i)));

    guarded(rep, "commutativity", th.algebra, [&] {
        const auto C = engine::chart_structure_constants(fa);
        double worst = 0.0, scale = 0.0;
        for (const auto& c : C) {
            worst = std::max(worst, (c - c.transpose()).cwiseAbs().maxCoeff());
            scale = std::max(scale, c.cwiseAbs().maxCoeff());
        }
        rep.add(check_below("commutativity", rel(worst, scale), th.algebra));
    });
    guarded(rep, "associativity", th.algebra, [&] {
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) {
                    const auto left = engine::multiply(fa, engine::multiply(fa, basis[i], basis[j]), basis[l]).chart;
                    const auto right = engine::multiply(fa, basis[i], engine::multiply(fa, basis[j], basis[l])).chart;
                    worst = std::max(worst, (left - right).cwiseAbs().maxCoeff());
                    scale = std::max(scale, left.cwiseAbs().maxCoeff());
                }
        rep.add(check_below("associativity", rel(worst, scale), th.algebra));
    });
    guarded(rep, "unit", th.algebra, [&] {
        const engine::TangentVector e = engine::unit_field(fa);
        double worst = 0.0;
        for (int i = 0; i < d; ++i)
            worst = std::max(worst, (engine::multiply(fa, e, basis[i]).chart - basis[i].chart).cwiseAbs().maxCoeff());
        rep.add(check_below("unit", worst, th.algebra));
    });
    ComplexMatrix eta;
    guarded(rep, "eta_symmetry", th.algebra, [&] {
        eta = engine::metric_matrix(fa);
        rep.add(check_below("eta_symmetry", rel((eta - eta.transpose()).cwiseAbs().maxCoeff(), eta.cwiseAbs().maxCoeff()),
                            th.algebra));
    });
    guarded(rep, "eta_nondegeneracy", th.nondegeneracy, [&] {
        const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(engine::metric_matrix(fa)).singularValues();
        rep.add(check_above("eta_nondegeneracy", sv(sv.size() - 1) / sv(0), th.nondegeneracy));
    });
    guarded(rep, "compatibility", th.algebra, [&] {
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) {
                    const cplx a = engine::metric(fa, engine::multiply(fa, basis[i], basis[j]), basis[l]);
                    const cplx b = engine::metric(fa, basis[i], engine::multiply(fa, basis[j], basis[l]));
                    worst = std::max(worst, std::abs(a - b));
                    scale = std::max(scale, std::abs(a));
                }
        rep.add(check_below("compatibility", rel(worst, scale), th.algebra));
    });

    const int n = m.n();
    if (n >= 3) {
        const int k2 = opts.k_alt != 0 ? opts.k_alt : (k == 2 ? 3 : 2);
        guarded(rep, "k_independence", th.k_independence, [&] {
            double scale = 0.0;
            const double diff = max_distance(raised_structure_constants(m, k, opts.flat.engine),
                                             raised_structure_constants(m, k2, opts.flat.engine), &scale);
            rep.add(check_below("k_independence", rel(diff, scale), th.k_independence,
                                "k = " + std::to_string(k) + " vs " + std::to_string(k2)));
        });
        guarded(rep, "metric_k_dependence", th.metric_k_dependence, [&] {
            const ComplexMatrix e1 = engine::metric_matrix(fa);
            const ComplexMatrix e2 = engine::metric_matrix(engine::fiber_algebra(m, k2, opts.flat.engine));
            rep.add(check_above("metric_k_dependence", (e1 - e2).norm() / e1.norm(), th.metric_k_dependence));
        });
    }

    flat::FlatOptions fo = opts.flat;
    fo.flatness_tol_genus0 = fo.flatness_tol_genus1 = 1e300;
    guarded(rep, "flatness", th.flatness, [&] {
        const flat::FlatChart chart = flat::flat_chart(m, k, fo);
        rep.add(check_below("flatness", chart.flatness_defect, th.flatness));
        const flat::Tensor3 c = flat::structure_constants(chart, fa);
        double scale = 0.0;
        for (cplx x : c.v) scale = std::max(scale, std::abs(x));
        rep.add(check_below("c_symmetry", rel(flat::symmetry_defect(c), scale), th.algebra));
        rep.add(check_below("wdvv", flat::wdvv_residual(c, chart.eta_predicted), th.wdvv));
        if (m.genus() == 1) rep.add(check_below("isotropy", std::abs(chart.eta(n, n)), th.isotropy));
    });
    guarded(rep, "potentiality", th.potentiality, [&] {
        const double step = m.genus() == 0 ? 1e-3 : 1e-2;
        rep.add(check_below("potentiality", flat::potentiality_defect(m, k, step, fo), th.potentiality));
    });
    if (m.genus() == 1 && opts.region_radius > 0.0) {
        guarded(rep, "frame_closure", th.flatness, [&] {
            flat::FlatOptions open = fo;
            open.closure_tol = 1e300;
            const flat::FlatChart chart = flat::flat_frame_numeric(m, k, open, opts.region_radius, 5);
            rep.add(check_below("frame_closure", chart.closure_defect, th.flatness));
        });
    }
    if (m.genus() == 1 && m.period_a() == cplx{} && m.period_b() == cplx{}) {
        const auto& g1 = m.genus1_data();
        rep.add(check_below("hurwitz_alpha_beta", std::abs(g1.alpha) + std::abs(g1.beta), 0.0));
    }
    return rep;
}

}  // namespace frob::verify
