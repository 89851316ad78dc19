#include "frobpencil/engine/frobenius.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/error.hpp"
#include "frobpencil/numeric/linalg.hpp"

namespace frob::engine {

using model::AbelianIntegral;
using numeric::ExpansionPoint;
using numeric::LaurentSeries;
using numeric::Polynomial;

cplx PrimitiveSection::operator()(const AbelianIntegral& m, cplx point) const {
    if (genus == 0) return density(point);
    return combination(m.lattice(), point);
}

cplx PrimitiveSection::primitive_at(const AbelianIntegral& m, cplx point) const {
    if (genus == 0) return antiderivative(point);
    const auto& L = m.lattice();
    cplx v = lambda0 * point - mu * elliptic::zeta_w(L, point);
    for (std::size_t j = 0; j < nu.size(); ++j) v += nu[j] * elliptic::wp(L, point, static_cast<int>(j));
    return v;
}

LaurentSeries chart_variable_in_x(const AbelianIntegral& m, int order) {
    const LaurentSeries fs = m.f_series_at_pole(order - m.n());
    const LaurentSeries x = numeric::power(fs, -1, m.n()).with_point(ExpansionPoint::origin());
    return numeric::revert(x);
}

namespace {

// rho as r(s) ds in the chart variable s at the pole
LaurentSeries section_in_chart(const AbelianIntegral& m, const PrimitiveSection& rho, int order) {
    if (rho.genus == 0) {
        // h(1/w) d(1/w) = -sum_j h_j w^{-j-2} dw
        const int deg = rho.density.degree();
        const int low = -(deg + 2);
        std::vector<cplx> c(static_cast<std::size_t>(std::max(order - low, 0)));
        for (int j = 0; j <= deg; ++j)
            if (-j - 2 - low < static_cast<int>(c.size()))
                c[static_cast<std::size_t>(-j - 2 - low)] = -rho.density.coefficient(j);
        return LaurentSeries(ExpansionPoint::origin(), low, c, std::max(order, low));
    }
    const auto& L = m.lattice();
    LaurentSeries s = LaurentSeries::constant(rho.lambda0, order) + rho.mu * elliptic::wp_laurent(L, 0, order);
    for (std::size_t j = 0; j < rho.nu.size(); ++j)
        s = s + rho.nu[j] * elliptic::wp_laurent(L, static_cast<int>(j) + 1, order);
    return s;
}

void flag_primitivity(PrimitiveSection& rho, double degeneracy) {
    double scale = 1.0;
    for (const cplx v : rho.values_at_critical) scale = std::max(scale, std::abs(v));
    rho.primitive = std::all_of(rho.values_at_critical.begin(), rho.values_at_critical.end(),
                                [&](cplx v) { return std::abs(v) >= degeneracy * scale; });
}

}  // namespace

LaurentSeries primitive_in_x(const AbelianIntegral& m, const PrimitiveSection& rho, int order) {
    const int pole = rho.k;
    const LaurentSeries sx = chart_variable_in_x(m, order + 2 * pole + 4);
    LaurentSeries ps;
    if (rho.genus == 0) {
        const int deg = rho.antiderivative.degree();
        std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
        for (int j = 0; j <= deg; ++j) c[static_cast<std::size_t>(deg - j)] = rho.antiderivative.coefficient(j);
        ps = LaurentSeries(ExpansionPoint::origin(), -deg, c, order + pole + 4);
    } else {
        const auto& L = m.lattice();
        const int t = order + pole + 4;
        ps = rho.lambda0 * LaurentSeries::variable(t) - rho.mu * elliptic::zeta_laurent(L, t);
        for (std::size_t j = 0; j < rho.nu.size(); ++j)
            ps = ps + rho.nu[j] * elliptic::wp_laurent(L, static_cast<int>(j), t);
    }
    return numeric::compose(ps, sx).truncated(order);
}

LaurentSeries section_in_x(const AbelianIntegral& m, const PrimitiveSection& rho, int order) {
    const int pole = rho.genus == 0 ? rho.density.degree() + 2 : rho.k;
    const LaurentSeries sx = chart_variable_in_x(m, order + 2 * pole + 4);
    const LaurentSeries r = section_in_chart(m, rho, order + pole + 4);
    return (numeric::compose(r, sx) * numeric::differentiate(sx)).truncated(order);
}

PrimitiveSection primitive_section(const AbelianIntegral& m, int k, const model::CriticalData* critical,
                                   double degeneracy) {
    if (k < 2 || k > m.n()) throw Error(ErrorKind::KOutOfRange, "k must satisfy 2 <= k <= n");
    PrimitiveSection rho;
    rho.k = k;
    rho.genus = m.genus();
    const int n = m.n();
    if (m.genus() == 0) {
        // rho = -1/(k-1) d[(f^{(k-1)/n})_+]
        const LaurentSeries root = numeric::power(m.f_series_at_pole(k - n + 1), k - 1, n);
        std::vector<cplx> p(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) p[static_cast<std::size_t>(j)] = root.coefficient(-j);
        p[0] = 0.0;
        rho.antiderivative = (-1.0 / static_cast<double>(k - 1)) * Polynomial(p);
        rho.density = rho.antiderivative.derivative();
    } else {
        const auto& L = m.lattice();
        const LaurentSeries x = numeric::power(m.f_series_at_pole(k + 2), -1, n);
        LaurentSeries target = numeric::power(x, -k) * numeric::differentiate(x);
        std::vector<cplx> coeff(static_cast<std::size_t>(k - 1));
        for (int order = k; order >= 2; --order) {
            const int j = order - 2;
            const LaurentSeries basis = elliptic::wp_laurent(L, j, 1);
            const cplx c = target.coefficient(-order) / basis.coefficient(-order);
            coeff[static_cast<std::size_t>(j)] = c;
            target = target - c * basis;
        }
        if (std::abs(target.coefficient(-1)) > 1e-9 * std::max(1.0, std::abs(coeff.front())))
            throw Error(ErrorKind::InvalidModel, "polar part of x^{-k} dx has a residue");
        rho.mu = coeff.front();
        rho.nu.assign(coeff.begin() + 1, coeff.end());
        // d(wp^(j-1)) has zero periods; the a-period of mu wp du is -mu eta1
        rho.lambda0 = rho.mu * L.eta1;
        rho.combination = elliptic::WpCombination::of_derivatives(L, rho.lambda0, coeff);
        rho.a_period = elliptic::contour_period(
            L, [&](cplx u) { return rho.combination(L, u); }, elliptic::make_cycle(L, elliptic::CycleKind::a));
    }
    const model::CriticalData cd = critical ? *critical : model::critical_data(m);
    for (const cplx q : cd.points) rho.values_at_critical.push_back(rho(m, q));
    flag_primitivity(rho, degeneracy);
    return rho;
}

ComplexMatrix chart_derivatives_of_f(const AbelianIntegral& m, const std::vector<cplx>& points, double tau_step) {
    const int dim = m.chart_dimension();
    const auto rows = static_cast<Eigen::Index>(points.size());
    ComplexMatrix M(rows, dim);
    if (m.genus() == 0) {
        for (Eigen::Index s = 0; s < rows; ++s) {
            cplx pw = 1.0;
            for (int j = 0; j < dim; ++j, pw *= points[static_cast<std::size_t>(s)]) M(s, j) = pw;
        }
        return M;
    }
    const auto& d = m.genus1_data();
    const cplx u0 = 0.5 * (1.0 + d.lattice.tau);
    const std::vector<cplx> chart = m.chart();
    auto shifted = [&](double h) {
        std::vector<cplx> c = chart;
        c[0] += h;
        return m.with_chart(c);
    };
    const double h = tau_step;
    const AbelianIntegral p1 = shifted(h), m1 = shifted(-h), p2 = shifted(2 * h), m2 = shifted(-2 * h);
    for (Eigen::Index s = 0; s < rows; ++s) {
        const cplx q = points[static_cast<std::size_t>(s)];
        M(s, 0) = (8.0 * (p1.f(q) - m1.f(q)) - (p2.f(q) - m2.f(q))) / (12.0 * h);
        for (int j = 1; j < dim - 1; ++j) {
            const int order = j - 1;
            M(s, j) = elliptic::wp(d.lattice, q, order) - elliptic::wp(d.lattice, u0, order);
        }
        M(s, dim - 1) = 1.0;
    }
    return M;
}

FiberAlgebra fiber_algebra(const AbelianIntegral& m, int k, const EngineOptions& opts) {
    FiberAlgebra fa{m, model::critical_data(m, opts.critical), {}, {}, 0.0, opts.max_condition};
    fa.rho = primitive_section(m, k, &fa.critical, opts.degeneracy);
    fa.chart_to_fiber = chart_derivatives_of_f(m, fa.critical.points, opts.tau_step);
    fa.condition = numeric::condition_number(fa.chart_to_fiber);
    return fa;
}

TangentVector tangent_to_fiber(const FiberAlgebra& fa, const ComplexVector& chart_dir) {
    if (chart_dir.size() != fa.dimension()) throw Error(ErrorKind::InvalidModel, "chart vector has the wrong size");
    return {chart_dir, fa.chart_to_fiber * chart_dir};
}

TangentVector from_fiber(const FiberAlgebra& fa, const ComplexVector& fiber) {
    const auto solved = numeric::solve_checked(fa.chart_to_fiber, fiber, fa.max_condition);
    return {solved.x.col(0), fiber};
}

TangentVector multiply(const FiberAlgebra& fa, const TangentVector& x, const TangentVector& y) {
    return from_fiber(fa, x.fiber.cwiseProduct(y.fiber));
}

TangentVector unit_field(const FiberAlgebra& fa) {
    return from_fiber(fa, ComplexVector::Ones(fa.dimension()));
}

ComplexVector idempotent_metric(const FiberAlgebra& fa) {
    ComplexVector g(fa.dimension());
    for (int s = 0; s < fa.dimension(); ++s) {
        const cplx r = fa.rho.values_at_critical[static_cast<std::size_t>(s)];
        g(s) = r * r / fa.critical.omega_deriv[static_cast<std::size_t>(s)];
    }
    return g;
}

cplx metric(const FiberAlgebra& fa, const TangentVector& x, const TangentVector& y) {
    if (!fa.rho.primitive) throw Error(ErrorKind::NotPrimitive, "rho vanishes at a critical point");
    return x.fiber.cwiseProduct(y.fiber).cwiseProduct(idempotent_metric(fa)).sum();
}

ComplexMatrix metric_matrix(const FiberAlgebra& fa) {
    if (!fa.rho.primitive) throw Error(ErrorKind::NotPrimitive, "rho vanishes at a critical point");
    const ComplexMatrix& M = fa.chart_to_fiber;
    return M.transpose() * idempotent_metric(fa).asDiagonal() * M;
}

std::vector<ComplexMatrix> chart_structure_constants(const FiberAlgebra& fa) {
    const int dim = fa.dimension();
    const ComplexMatrix& M = fa.chart_to_fiber;
    ComplexMatrix products(dim, dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) products.col(i * dim + j) = M.col(i).cwiseProduct(M.col(j));
    const ComplexMatrix coords = numeric::solve_checked(M, products, fa.max_condition).x;
    std::vector<ComplexMatrix> c(static_cast<std::size_t>(dim), ComplexMatrix(dim, dim));
    for (int k = 0; k < dim; ++k)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) c[static_cast<std::size_t>(k)](i, j) = coords(k, i * dim + j);
    return c;
}

}  // namespace frob::engine
