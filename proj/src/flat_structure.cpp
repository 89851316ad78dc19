#include "frobpencil/flat/flat_structure.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "frobpencil/error.hpp"
#include "frobpencil/numeric/linalg.hpp"
#include "frobpencil/numeric/quadrature.hpp"

namespace frob::flat {

using engine::FiberAlgebra;
using engine::PrimitiveSection;
using model::AbelianIntegral;
using numeric::ExpansionPoint;
using numeric::LaurentSeries;
using numeric::Polynomial;

namespace {

PrimitiveSection section_without_critical(const AbelianIntegral& m, int k) {
    const model::CriticalData none;
    return engine::primitive_section(m, k, &none);
}

// polynomial in t as a series in w = 1/t
LaurentSeries polynomial_in_w(const Polynomial& p, int truncation_order) {
    const int deg = p.degree();
    std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
    for (int j = 0; j <= deg; ++j) c[static_cast<std::size_t>(deg - j)] = p.coefficient(j);
    return LaurentSeries(ExpansionPoint::origin(), -deg, c, truncation_order);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return numeric::max_abs(a - b); }

ComplexMatrix finite_difference_jacobian(const AbelianIntegral& m, int k, double h) {
    const std::vector<cplx> base = m.chart();
    const int dim = m.chart_dimension();
    ComplexMatrix J(dim, dim);
    for (int j = 0; j < dim; ++j) {
        auto at = [&](double s) {
            std::vector<cplx> c = base;
            c[static_cast<std::size_t>(j)] += s;
            return flat_coordinates(m.with_chart(c), k);
        };
        J.col(j) = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
    }
    return J;
}

ComplexMatrix genus0_jacobian(const AbelianIntegral& m, const PrimitiveSection& rho) {
    const int n = m.n();
    const int k = rho.k;
    const int dim = n - 1;
    const int T = 2 * n + k + 6;
    const LaurentSeries fs = m.f_series_at_pole(T).with_point(ExpansionPoint::origin());
    const LaurentSeries root = numeric::power(fs, k - 1 - n, n);  // f^{(k-1-n)/n}, valuation n+1-k
    const Polynomial fp = m.polynomial().derivative();
    const LaurentSeries ratio = polynomial_in_w(rho.density, T) / polynomial_in_w(fp, T);
    const LaurentSeries wx = engine::chart_variable_in_x(m, T);
    ComplexMatrix J(dim, dim);
    for (int j = 0; j < dim; ++j) {
        // -(1/n) (t^j f^{(k-1-n)/n})_+  at fixed t
        const LaurentSeries shifted = root.shifted(-j);
        std::vector<cplx> poly;
        for (int e = 0; e <= j; ++e) poly.push_back(shifted.coefficient(-e));
        const LaurentSeries fixed_t = (-1.0 / n) * polynomial_in_w(Polynomial(poly), T);
        // - p'(t) t^j / f'(t)  from moving t at fixed x
        const LaurentSeries moving = -1.0 * ratio.shifted(-j);
        const LaurentSeries d = numeric::compose(fixed_t + moving, wx);
        for (int A = 1; A <= dim; ++A) J(A - 1, j) = static_cast<double>(n) * d.coefficient(A);
    }
    return J;
}

void finish_chart(FlatChart& chart, const FiberAlgebra& fa, double tol) {
    chart.frame = numeric::solve_checked(chart.jacobian, ComplexMatrix::Identity(chart.jacobian.rows(),
                                                                                 chart.jacobian.cols()))
                      .x;
    chart.eta = chart.frame.transpose() * engine::metric_matrix(fa) * chart.frame;
    chart.eta_predicted = predicted_flat_metric(fa.model);
    chart.flatness_defect = max_abs_diff(chart.eta, chart.eta_predicted);
    const double scale = std::max(1.0, numeric::max_abs(chart.eta_predicted));
    if (chart.flatness_defect > tol * scale)
        throw Error(ErrorKind::FlatnessFailure, "metric is not constant in the flat coordinates");
}

FlatChart chart_at(const AbelianIntegral& m, int k, const FiberAlgebra& fa, const FlatOptions& opts) {
    if (!fa.rho.primitive) throw Error(ErrorKind::NotPrimitive, "rho vanishes at a critical point");
    FlatChart chart;
    chart.genus = m.genus();
    chart.n = m.n();
    chart.k = k;
    chart.chart_point = m.chart();
    chart.coordinates = flat_coordinates(m, k);
    if (m.genus() == 0) {
        chart.jacobian = genus0_jacobian(m, fa.rho);
        finish_chart(chart, fa, opts.flatness_tol_genus0);
    } else {
        chart.jacobian = finite_difference_jacobian(m, k, opts.step);
        finish_chart(chart, fa, opts.flatness_tol_genus1);
    }
    return chart;
}

}  // namespace

ComplexVector flat_coordinates(const AbelianIntegral& m, int k) {
    const int n = m.n();
    const PrimitiveSection rho = section_without_critical(m, k);
    const LaurentSeries p = engine::primitive_in_x(m, rho, n + 1);
    ComplexVector t(m.chart_dimension());
    for (int A = 1; A <= n - 1; ++A) t(A - 1) = static_cast<double>(n) * p.coefficient(A);
    if (m.genus() == 1) {
        const auto& L = m.lattice();
        t(n - 1) = rho.lambda0 * L.tau - rho.mu * L.eta2;
        const elliptic::Cycle a = elliptic::make_cycle(L, elliptic::CycleKind::a);
        const cplx integral =
            numeric::integrate_segment([&](cplx u) { return m.f(u) * rho(m, u); }, a.base, a.end(), 1e-13).value;
        t(n) = integral - m.period_a() * (rho.primitive_at(m, a.base) - p.coefficient(0));
    }
    return t;
}

ComplexMatrix predicted_flat_metric(const AbelianIntegral& m) {
    const int dim = m.chart_dimension();
    const int n = m.n();
    ComplexMatrix eta = ComplexMatrix::Zero(dim, dim);
    for (int A = 1; A <= n - 1; ++A) eta(A - 1, n - A - 1) = 1.0 / n;
    if (m.genus() == 1) {
        eta(n - 1, n) = eta(n, n - 1) = 1.0 / kTwoPiI;
        eta(n - 1, n - 1) = m.period_a() / kTwoPiI;
    }
    return eta;
}

FlatChart flat_coordinates_genus0(const AbelianIntegral& m, int k, const FlatOptions& opts) {
    if (m.genus() != 0) throw Error(ErrorKind::InvalidModel, "genus-0 flat coordinates need a genus-0 model");
    return chart_at(m, k, engine::fiber_algebra(m, k, opts.engine), opts);
}

FlatChart flat_frame_numeric(const AbelianIntegral& m, int k, const FlatOptions& opts, double region_radius,
                             int region_points) {
    if (m.genus() != 1) throw Error(ErrorKind::InvalidModel, "numeric flat frame needs a genus-1 model");
    FlatChart chart = chart_at(m, k, engine::fiber_algebra(m, k, opts.engine), opts);
    if (region_radius <= 0.0) return chart;
    // integrate dt = J dm over a grid in the (tau, gamma_1) plane along two
    // paths and against the direct coordinate values
    const int np = std::max(3, region_points | 1);
    const std::vector<cplx> base = m.chart();
    auto point = [&](int i, int j) {
        std::vector<cplx> c = base;
        c[0] += region_radius * (-1.0 + 2.0 * i / (np - 1));
        c[1] += region_radius * (-1.0 + 2.0 * j / (np - 1));
        return m.with_chart(c);
    };
    std::vector<std::vector<ComplexMatrix>> J(static_cast<std::size_t>(np), std::vector<ComplexMatrix>(np));
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) J[i][j] = finite_difference_jacobian(point(i, j), k, opts.step);
    const double h = 2.0 * region_radius / (np - 1);
    // Simpson along a grid line; direction 0 varies i, direction 1 varies j
    auto line = [&](int fixed, int dir) {
        ComplexVector acc = ComplexVector::Zero(chart.jacobian.rows());
        for (int s = 0; s < np; ++s) {
            const double w = (s == 0 || s == np - 1) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
            const ComplexMatrix& Js = dir == 0 ? J[s][fixed] : J[fixed][s];
            acc += w * Js.col(dir);
        }
        return ComplexVector(acc * (h / 3.0));
    };
    const ComplexVector rows_first = line(0, 0) + line(np - 1, 1);
    const ComplexVector cols_first = line(0, 1) + line(np - 1, 0);
    const ComplexVector direct = flat_coordinates(point(np - 1, np - 1), k) - flat_coordinates(point(0, 0), k);
    chart.closure_defect = std::max((rows_first - cols_first).cwiseAbs().maxCoeff(),
                                    (rows_first - direct).cwiseAbs().maxCoeff());
    if (chart.closure_defect > opts.closure_tol)
        throw Error(ErrorKind::NonIntegrableFrame, "flat frame fails to close around the grid");
    return chart;
}

FlatChart flat_chart(const AbelianIntegral& m, int k, const FlatOptions& opts) {
    return chart_at(m, k, engine::fiber_algebra(m, k, opts.engine), opts);
}

ComplexMatrix flat_fiber_frame(const FiberAlgebra& fa, const FlatChart& chart) {
    return fa.chart_to_fiber * chart.frame;
}

Tensor3 structure_constants(const FlatChart& chart, const FiberAlgebra& fa) {
    const ComplexMatrix phi = flat_fiber_frame(fa, chart);
    const ComplexVector g = engine::idempotent_metric(fa);
    const int d = fa.dimension();
    Tensor3 c(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e) {
                cplx s{};
                for (int q = 0; q < d; ++q) s += phi(q, a) * phi(q, b) * phi(q, e) * g(q);
                c(a, b, e) = s;
            }
    return c;
}

Tensor3 structure_constants_at(const AbelianIntegral& m, int k, const FlatOptions& opts) {
    const FiberAlgebra fa = engine::fiber_algebra(m, k, opts.engine);
    return structure_constants(chart_at(m, k, fa, opts), fa);
}

double symmetry_defect(const Tensor3& c) {
    double worst = 0.0;
    for (int a = 0; a < c.d; ++a)
        for (int b = 0; b < c.d; ++b)
            for (int e = 0; e < c.d; ++e)
                worst = std::max({worst, std::abs(c(a, b, e) - c(b, a, e)), std::abs(c(a, b, e) - c(a, e, b))});
    return worst;
}

double wdvv_residual(const Tensor3& c, const ComplexMatrix& eta) {
    const int d = c.d;
    const ComplexMatrix inv = eta.inverse();
    // raised(a, b, e) = c_ab^e
    Tensor3 raised(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e) {
                cplx s{};
                for (int f = 0; f < d; ++f) s += c(a, b, f) * inv(f, e);
                raised(a, b, e) = s;
            }
    double worst = 0.0;
    double scale = 1.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y) {
                    cplx lhs{}, rhs{};
                    for (int e = 0; e < d; ++e) {
                        lhs += raised(a, b, e) * c(e, x, y);
                        rhs += raised(a, x, e) * c(e, b, y);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
                }
    return worst / scale;
}

double potentiality_defect(const AbelianIntegral& m, int k, double step, const FlatOptions& opts) {
    const int d = m.chart_dimension();
    const FlatChart chart = flat_chart(m, k, opts);
    const std::vector<cplx> base = m.chart();
    std::vector<Tensor3> dc;
    for (int j = 0; j < d; ++j) {
        auto at = [&](double s) {
            std::vector<cplx> c = base;
            c[static_cast<std::size_t>(j)] += s;
            return structure_constants_at(m.with_chart(c), k, opts);
        };
        const Tensor3 p1 = at(step), m1 = at(-step), p2 = at(2 * step), m2 = at(-2 * step);
        Tensor3 g(d);
        for (std::size_t i = 0; i < g.v.size(); ++i)
            g.v[i] = (8.0 * (p1.v[i] - m1.v[i]) - (p2.v[i] - m2.v[i])) / (12.0 * step);
        dc.push_back(g);
    }
    // d_D c_ABC = sum_j frame(j, D) d_j c_ABC
    auto deriv = [&](int D, int a, int b, int c) {
        cplx s{};
        for (int j = 0; j < d; ++j) s += chart.frame(j, D) * dc[static_cast<std::size_t>(j)](a, b, c);
        return s;
    };
    double worst = 0.0;
    double scale = 1.0;
    for (int D = 0; D < d; ++D)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c) {
                    const cplx x = deriv(D, a, b, c);
                    worst = std::max(worst, std::abs(x - deriv(a, D, b, c)));
                    scale = std::max(scale, std::abs(x));
                }
    return worst / scale;
}

namespace {

std::vector<std::vector<int>> monomials_of(int d, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    auto rec = [&](auto&& self, int var, int left, int deg) -> void {
        if (var == d - 1) {
            e[static_cast<std::size_t>(var)] = left;
            out.push_back(e);
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[static_cast<std::size_t>(var)] = x;
            self(self, var + 1, left - x, deg);
        }
    };
    for (int deg = lo; deg <= hi; ++deg) rec(rec, 0, deg, deg);
    return out;
}

// derivative d_a d_b d_c of prod_i t_i^{e_i} at t
cplx monomial_third(const std::vector<int>& e, const ComplexVector& t, int a, int b, int c) {
    std::vector<int> x = e;
    double factor = 1.0;
    for (int v : {a, b, c}) {
        if (x[static_cast<std::size_t>(v)] == 0) return 0.0;
        factor *= x[static_cast<std::size_t>(v)];
        --x[static_cast<std::size_t>(v)];
    }
    cplx r = factor;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int p = 0; p < x[i]; ++p) r *= t(static_cast<Eigen::Index>(i));
    return r;
}

}  // namespace

cplx PotentialFit::third_derivative(const ComplexVector& t, int a, int b, int c) const {
    const ComplexVector s = t - center;
    cplx v{};
    for (std::size_t i = 0; i < monomials.size(); ++i)
        v += coefficients(static_cast<Eigen::Index>(i)) * monomial_third(monomials[i], s, a, b, c);
    return v;
}

cplx PotentialFit::value(const ComplexVector& t) const {
    const ComplexVector s = t - center;
    cplx v{};
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        cplx term = coefficients(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < monomials[i].size(); ++j)
            for (int p = 0; p < monomials[i][j]; ++p) term *= s(static_cast<Eigen::Index>(j));
        v += term;
    }
    return v;
}

PotentialFit potential(const AbelianIntegral& m, int k, const std::vector<std::vector<cplx>>& chart_points,
                       int max_degree, const FlatOptions& opts) {
    if (chart_points.empty()) throw Error(ErrorKind::FitFailure, "no sample points");
    const int d = m.chart_dimension();
    PotentialFit fit;
    fit.dimension = d;
    for (const auto& cp : chart_points) {
        const AbelianIntegral mi = m.with_chart(cp);
        const FiberAlgebra fa = engine::fiber_algebra(mi, k, opts.engine);
        const FlatChart chart = chart_at(mi, k, fa, opts);
        fit.sample_points.push_back(chart.coordinates);
        fit.samples.push_back(structure_constants(chart, fa));
        if (fit.eta.size() == 0) fit.eta = chart.eta_predicted;
        fit.symmetry = std::max(fit.symmetry, symmetry_defect(fit.samples.back()));
        fit.wdvv = std::max(fit.wdvv, wdvv_residual(fit.samples.back(), fit.eta));
    }
    const bool g0 = m.genus() == 0;
    fit.potentiality = potentiality_defect(m.with_chart(chart_points.front()), k, g0 ? 1e-3 : 1e-2, opts);
    if (fit.potentiality > (g0 ? 1e-7 : 1e-5)) throw Error(ErrorKind::PotentialityFailure, "d_D c_ABC is not symmetric");

    fit.center = m.genus() == 0 ? ComplexVector::Zero(d) : fit.sample_points.front();
    fit.monomials = monomials_of(d, 3, max_degree);
    std::vector<std::array<int, 3>> triples;
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b)
            for (int c = b; c < d; ++c) triples.push_back({a, b, c});
    const auto rows = static_cast<Eigen::Index>(triples.size() * fit.samples.size());
    const auto cols = static_cast<Eigen::Index>(fit.monomials.size());
    ComplexMatrix A(rows, cols);
    ComplexVector rhs(rows);
    Eigen::Index r = 0;
    for (std::size_t s = 0; s < fit.samples.size(); ++s) {
        const ComplexVector ts = fit.sample_points[s] - fit.center;
        for (const auto& [a, b, c] : triples) {
            for (Eigen::Index i = 0; i < cols; ++i) A(r, i) = monomial_third(fit.monomials[i], ts, a, b, c);
            rhs(r) = fit.samples[s](a, b, c);
            ++r;
        }
    }
    fit.coefficients = A.completeOrthogonalDecomposition().solve(rhs);
    fit.fit_residual = (A * fit.coefficients - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
    return fit;
}

}  // namespace frob::flat
