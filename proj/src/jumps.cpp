#include "frobpencil/verify/jumps.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"

namespace frob::verify {

using model::AbelianIntegral;
using numeric::ExpansionPoint;
using numeric::LaurentSeries;

namespace {

void require_genus1(const AbelianIntegral& m) {
    if (m.genus() != 1) throw Error(ErrorKind::InvalidModel, "the jumps model lives on genus-1 curves");
}

// basis densities in u: g omega, 1, wp, wp', .., wp^(n)
ComplexVector basis_values(const AbelianIntegral& m, cplx u) {
    const auto& L = m.lattice();
    const int size = jumps_basis_size(m);
    ComplexVector v(size + 1);
    v(0) = jump_function(L, u) * m.omega(u);
    v(1) = 1.0;
    for (int j = 2; j <= size; ++j) v(j) = elliptic::wp(L, u, j - 2);
    return v;
}

// polar coefficients x^{-n-2} .. x^{-1} of each basis form, one column each
ComplexMatrix basis_polar(const AbelianIntegral& m) {
    const auto& L = m.lattice();
    const int n = m.n();
    const int size = jumps_basis_size(m);
    const int T = 2;
    const ExpansionPoint o = ExpansionPoint::origin();
    const LaurentSeries ux = engine::chart_variable_in_x(m, n + 6);
    const LaurentSeries dux = numeric::differentiate(ux);
    const LaurentSeries omega = numeric::differentiate(m.f_series_at_pole(T + n + 4)).with_point(o);
    const LaurentSeries g = (-1.0 / kTwoPiI) * (elliptic::zeta_laurent(L, T + n + 4).with_point(o) -
                                                L.eta1 * LaurentSeries::variable(T + n + 4, o));
    std::vector<LaurentSeries> forms{(g * omega).truncated(T), LaurentSeries::constant(1.0, T, o)};
    for (int j = 0; j <= n; ++j) forms.push_back(elliptic::wp_laurent(L, j, T).with_point(o));
    ComplexMatrix P(n + 2, size + 1);
    for (int b = 0; b <= size; ++b) {
        const LaurentSeries r = numeric::compose(forms[static_cast<std::size_t>(b)], ux) * dux;
        for (int i = 0; i < n + 2; ++i) P(i, b) = r.coefficient(-(n + 2) + i);
    }
    return P;
}

ComplexVector basis_a_periods(const AbelianIntegral& m) {
    const auto& L = m.lattice();
    const int size = jumps_basis_size(m);
    ComplexVector a = ComplexVector::Zero(size + 1);
    const elliptic::Cycle cyc = elliptic::make_cycle(L, elliptic::CycleKind::a);
    a(0) = elliptic::contour_period(
        L, [&](cplx u) { return jump_function(L, u) * m.omega(u); }, cyc, 1e-12);
    a(1) = 1.0;
    a(2) = -L.eta1;
    return a;
}

ComplexVector as_vector(const JumpsForm& chi) {
    ComplexVector v(static_cast<Eigen::Index>(chi.coeffs.size() + 1));
    v(0) = chi.lambda.empty() ? cplx{} : chi.lambda[0];
    for (std::size_t j = 0; j < chi.coeffs.size(); ++j) v(static_cast<Eigen::Index>(j + 1)) = chi.coeffs[j];
    return v;
}

JumpsForm from_vector(const ComplexVector& v) {
    JumpsForm chi;
    chi.lambda = {v(0)};
    chi.coeffs.assign(v.data() + 1, v.data() + v.size());
    return chi;
}

// least squares with unit-norm columns
ComplexVector scaled_solve(const ComplexMatrix& A, const ComplexVector& b, double* residual) {
    Eigen::VectorXd norms = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < norms.size(); ++j)
        if (norms(j) == 0.0) norms(j) = 1.0;
    const ComplexMatrix As = A * norms.cwiseInverse().asDiagonal();
    const ComplexVector y = As.colPivHouseholderQr().solve(b);
    if (residual) *residual = (As * y - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
    return y.cwiseQuotient(norms.cast<cplx>());
}

double coefficient_distance(const JumpsForm& a, const JumpsForm& b) {
    const ComplexVector va = as_vector(a), vb = as_vector(b);
    return (va - vb).cwiseAbs().maxCoeff() / std::max(1.0, vb.cwiseAbs().maxCoeff());
}

std::vector<cplx> cut_points(const AbelianIntegral& m) {
    const elliptic::Cycle a = elliptic::make_cycle(m.lattice(), elliptic::CycleKind::a);
    return {a.base + 0.2, a.base + 0.45, a.base + 0.7};
}

}  // namespace

cplx jump_function(const elliptic::Lattice& L, cplx u) { return -(elliptic::zeta_w(L, u) - L.eta1 * u) / kTwoPiI; }

int jumps_basis_size(const AbelianIntegral& m) { return m.n() + 2; }

cplx JumpsForm::operator()(const AbelianIntegral& m, cplx u) const {
    const ComplexVector b = basis_values(m, u);
    return as_vector(*this).cwiseProduct(b).sum();
}

JumpsInvariants jumps_invariants(const AbelianIntegral& m, const JumpsForm& chi) {
    require_genus1(m);
    const ComplexVector v = as_vector(chi);
    const ComplexVector polar = basis_polar(m) * v;
    return {v(0), basis_a_periods(m).cwiseProduct(v).sum(), std::vector<cplx>(polar.data(), polar.data() + polar.size())};
}

double jump_defect(const AbelianIntegral& m, const JumpsForm& chi) {
    require_genus1(m);
    const cplx tau = m.lattice().tau;
    const cplx lambda = chi.lambda.empty() ? cplx{} : chi.lambda[0];
    double worst = 0.0;
    for (cplx u : cut_points(m)) worst = std::max(worst, std::abs((chi(m, u + tau) - chi(m, u)) / m.omega(u) - lambda));
    return worst;
}

std::vector<cplx> jumps_sample_points(const AbelianIntegral& m) {
    const cplx tau = m.lattice().tau;
    std::vector<cplx> pts;
    for (double a : {0.2, 0.4, 0.6, 0.8})
        for (double b : {0.2, 0.4, 0.6, 0.8}) pts.push_back(a + b * tau);
    return pts;
}

JumpsForm fit_jumps_form(const AbelianIntegral& m, const std::vector<cplx>& points, const std::vector<cplx>& values,
                         double* residual) {
    require_genus1(m);
    const int cols = jumps_basis_size(m) + 1;
    if (points.size() != values.size() || static_cast<int>(points.size()) < cols)
        throw Error(ErrorKind::FitFailure, "not enough samples for the jumps basis");
    ComplexMatrix A(static_cast<Eigen::Index>(points.size()), cols);
    ComplexVector b(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        A.row(static_cast<Eigen::Index>(i)) = basis_values(m, points[i]).transpose();
        b(static_cast<Eigen::Index>(i)) = values[i];
    }
    return from_vector(scaled_solve(A, b, residual));
}

JumpsForm solve_jumps_form(const AbelianIntegral& m, const JumpsInvariants& inv, double* residual,
                           double max_residual) {
    require_genus1(m);
    const int n = m.n();
    const int size = jumps_basis_size(m);
    const ComplexMatrix P = basis_polar(m);
    const ComplexVector a = basis_a_periods(m);
    ComplexMatrix A(n + 3, size);
    ComplexVector rhs(n + 3);
    for (int i = 0; i < n + 2; ++i) {
        A.row(i) = P.row(i).tail(size);
        rhs(i) = inv.polar[static_cast<std::size_t>(i)] - inv.lambda * P(i, 0);
    }
    A.row(n + 2) = a.tail(size).transpose();
    rhs(n + 2) = inv.a_period - inv.lambda * a(0);
    double res = 0.0;
    ComplexVector full(size + 1);
    full(0) = inv.lambda;
    full.tail(size) = scaled_solve(A, rhs, &res);
    if (residual) *residual = res;
    if (!(res <= max_residual)) throw Error(ErrorKind::SolveFailure, "jumps invariants are inconsistent at this point");
    return from_vector(full);
}

ComplexMatrix flat_section_values(const AbelianIntegral& m, int k, const std::vector<cplx>& points,
                                  const flat::FlatOptions& opts) {
    require_genus1(m);
    const int dim = m.chart_dimension();
    const flat::FlatChart chart = flat::flat_chart(m, k, opts);
    const model::CriticalData none;
    const engine::PrimitiveSection rho = engine::primitive_section(m, k, &none);
    const ComplexMatrix df = engine::chart_derivatives_of_f(m, points, opts.engine.tau_step);
    const auto np = static_cast<Eigen::Index>(points.size());

    // derivative of the normalised primitive at fixed u
    const std::vector<cplx> base = m.chart();
    const double h = opts.step;
    ComplexMatrix dp(np, dim);
    for (int j = 0; j < dim; ++j) {
        auto at = [&](double s) {
            std::vector<cplx> c = base;
            c[static_cast<std::size_t>(j)] += s;
            const AbelianIntegral mj = m.with_chart(c);
            const engine::PrimitiveSection r = engine::primitive_section(mj, k, &none);
            const cplx constant = engine::primitive_in_x(mj, r, 1).coefficient(0);
            ComplexVector v(np);
            for (Eigen::Index i = 0; i < np; ++i) v(i) = r.primitive_at(mj, points[static_cast<std::size_t>(i)]) - constant;
            return v;
        };
        dp.col(j) = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
    }
    ComplexMatrix per_chart(np, dim);
    for (Eigen::Index i = 0; i < np; ++i) {
        const cplx u = points[static_cast<std::size_t>(i)];
        const cplx r = rho(m, u);
        const cplx w = m.omega(u);
        for (int j = 0; j < dim; ++j) per_chart(i, j) = df(i, j) * r - dp(i, j) * w;
    }
    return per_chart * chart.frame;
}

JumpsReport jumps_flatness_check(const AbelianIntegral& m, const std::vector<std::vector<cplx>>& path, int k,
                                 const flat::FlatOptions& opts) {
    require_genus1(m);
    if (path.empty()) throw Error(ErrorKind::InvalidModel, "empty moduli path");
    const int dim = m.chart_dimension();
    JumpsReport rep;

    auto fitted = [&](const AbelianIntegral& mi) {
        const std::vector<cplx> pts = jumps_sample_points(mi);
        const ComplexMatrix vals = flat_section_values(mi, k, pts, opts);
        std::vector<JumpsForm> forms;
        for (int A = 0; A < dim; ++A) {
            double res = 0.0;
            forms.push_back(fit_jumps_form(mi, pts, std::vector<cplx>(vals.col(A).data(), vals.col(A).data() + vals.rows()), &res));
            rep.fit_residual = std::max(rep.fit_residual, res);
        }
        return forms;
    };

    const AbelianIntegral m0 = m.with_chart(path.front());
    const std::vector<JumpsForm> start = fitted(m0);
    std::vector<JumpsInvariants> inv;
    for (const auto& chi : start) inv.push_back(jumps_invariants(m0, chi));

    // the raw densities must jump by lambda omega across the a-cycle
    {
        const cplx tau = m0.lattice().tau;
        std::vector<cplx> cut = cut_points(m0);
        std::vector<cplx> shifted;
        for (cplx u : cut) shifted.push_back(u + tau);
        const ComplexMatrix below = flat_section_values(m0, k, cut, opts);
        const ComplexMatrix above = flat_section_values(m0, k, shifted, opts);
        for (int A = 0; A < dim; ++A)
            for (std::size_t i = 0; i < cut.size(); ++i) {
                const auto r = static_cast<Eigen::Index>(i);
                const cplx ratio = (above(r, A) - below(r, A)) / m0.omega(cut[i]);
                rep.jump_defect = std::max(rep.jump_defect, std::abs(ratio - start[static_cast<std::size_t>(A)].lambda[0]));
            }
    }

    for (std::size_t p = 0; p < path.size(); ++p) {
        const AbelianIntegral mi = m.with_chart(path[p]);
        const std::vector<JumpsForm> here = p == 0 ? start : fitted(mi);
        std::vector<std::vector<cplx>> row;
        for (int A = 0; A < dim; ++A) {
            double res = 0.0;
            const JumpsForm moved = solve_jumps_form(mi, inv[static_cast<std::size_t>(A)], &res, 1.0);
            rep.solve_residual = std::max(rep.solve_residual, res);
            rep.transport_delta = std::max(rep.transport_delta, coefficient_distance(moved, here[static_cast<std::size_t>(A)]));
            const ComplexVector v = as_vector(moved);
            row.emplace_back(v.data(), v.data() + v.size());
        }
        rep.transported.push_back(std::move(row));
    }
    if (path.size() > 1 && path.front() == path.back()) {
        for (int A = 0; A < dim; ++A)
            for (std::size_t j = 0; j < rep.transported.front()[A].size(); ++j)
                rep.loop_closure = std::max(rep.loop_closure, std::abs(rep.transported.back()[A][j] - rep.transported.front()[A][j]) /
                                                                  std::max(1.0, std::abs(rep.transported.front()[A][j])));
    }
    return rep;
}

}  // namespace frob::verify
