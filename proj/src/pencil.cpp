#include "frobpencil/verify/pencil.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"
#include "frobpencil/numeric/quadrature.hpp"

namespace frob::verify {

using model::AbelianIntegral;

namespace {

// radius past which |exp(f / z)| < exp(-45) along every descent ray
double cutoff_radius(const numeric::Polynomial& f, cplx z) {
    const int n = f.degree();
    double R = 1.0;
    for (;;) {
        double lower = 0.0;
        for (int j = 0; j < n; ++j) lower += std::abs(f.coefficient(j)) * std::pow(R, j);
        if ((std::pow(R, n) - lower) / std::abs(z) >= 45.0) return R;
        R *= 1.05;
    }
}

ComplexVector ray_integrals(const numeric::Polynomial& f, cplx z, double theta, double R) {
    const int n = f.degree();
    const cplx end = std::polar(R, theta);
    ComplexVector out(n - 1);
    for (int j = 0; j <= n - 2; ++j) {
        out(j) = numeric::integrate_segment([&](cplx t) { return std::exp(f(t) / z) * std::pow(t, j); }, 0.0, end,
                                            1e-14)
                     .value;
    }
    return out;
}

}  // namespace

std::vector<cplx> default_z_samples() { return {1.0, 2.0, 4.0, 8.0, -3.0, cplx(0.0, 1.0)}; }

ComplexMatrix twisted_periods(const AbelianIntegral& m, cplx z) {
    if (m.genus() != 0) throw Error(ErrorKind::InvalidModel, "twisted periods are computed at genus 0");
    if (z == cplx{}) throw Error(ErrorKind::InvalidModel, "pencil parameter must be nonzero");
    const numeric::Polynomial& f = m.polynomial();
    const int n = f.degree();
    const double R = cutoff_radius(f, z);
    std::vector<ComplexVector> rays;
    for (int l = 0; l < n; ++l) rays.push_back(ray_integrals(f, z, (std::arg(z) + kPi * (2 * l + 1)) / n, R));
    ComplexMatrix pi(n - 1, n - 1);
    for (int l = 0; l < n - 1; ++l) pi.row(l) = (rays[l + 1] - rays[l]).transpose();
    return pi;
}

PencilReport pencil_consistency(const AbelianIntegral& m, const ComplexVector& xi, const std::vector<cplx>& z_samples,
                                const PencilOptions& opts) {
    if (m.genus() != 0) throw Error(ErrorKind::InvalidModel, "pencil consistency is checked at genus 0");
    std::vector<cplx> zs;
    for (cplx z : z_samples)
        if (z != cplx{} && std::find(zs.begin(), zs.end(), z) == zs.end()) zs.push_back(z);
    if (zs.size() < 2) throw Error(ErrorKind::FitFailure, "need at least two distinct nonzero pencil samples");

    const int d = m.chart_dimension();
    const std::vector<cplx> base = m.chart();
    double scale = 1.0;
    for (cplx c : base) scale = std::max(scale, std::abs(c));
    const double h = opts.step * scale / std::max(xi.cwiseAbs().maxCoeff(), 1e-300);
    auto moved = [&](double s) {
        std::vector<cplx> c = base;
        for (int j = 0; j < d; ++j) c[static_cast<std::size_t>(j)] += s * xi(j);
        return m.with_chart(c);
    };
    const AbelianIntegral p1 = moved(h), m1 = moved(-h), p2 = moved(2 * h), m2 = moved(-2 * h);

    PencilReport rep;
    rep.z = zs;
    double amax = 1.0;
    for (cplx z : zs) {
        const ComplexMatrix pi = twisted_periods(m, z);
        const ComplexMatrix dpi = (8.0 * (twisted_periods(p1, z) - twisted_periods(m1, z)) -
                                   (twisted_periods(p2, z) - twisted_periods(m2, z))) /
                                  (12.0 * h);
        ComplexMatrix a = pi.partialPivLu().solve(dpi);
        if (opts.synthetic_second_order != 0.0)
            a += ComplexMatrix::Constant(d, d, opts.synthetic_second_order / (z * z));
        amax = std::max(amax, a.cwiseAbs().maxCoeff());
        rep.connection.push_back(std::move(a));
    }

    const auto ns = static_cast<Eigen::Index>(zs.size());
    ComplexMatrix design(ns, 2);
    for (Eigen::Index i = 0; i < ns; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = 1.0 / zs[static_cast<std::size_t>(i)];
    }
    const auto qr = design.colPivHouseholderQr();
    rep.a_infinity = ComplexMatrix(d, d);
    rep.residue = ComplexMatrix(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            ComplexVector y(ns);
            for (Eigen::Index i = 0; i < ns; ++i) y(i) = rep.connection[static_cast<std::size_t>(i)](r, c);
            const ComplexVector coef = qr.solve(y);
            rep.a_infinity(r, c) = coef(0);
            rep.residue(r, c) = coef(1);
            rep.fit_residual = std::max(rep.fit_residual, (y - design * coef).cwiseAbs().maxCoeff());
        }
    rep.fit_residual /= amax;

    const engine::FiberAlgebra fa = engine::fiber_algebra(m, 2);
    const engine::TangentVector x = engine::tangent_to_fiber(fa, xi);
    rep.phi = ComplexMatrix(d, d);
    for (int j = 0; j < d; ++j)
        rep.phi.col(j) = engine::multiply(fa, x, engine::tangent_to_fiber(fa, ComplexVector::Unit(d, j))).chart;
    rep.phi_delta = (rep.residue - rep.phi).cwiseAbs().maxCoeff() / std::max(1.0, rep.phi.cwiseAbs().maxCoeff());
    return rep;
}

}  // namespace frob::verify
