#include <doctest.h>

#include <cmath>

#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"
#include "frobpencil/numeric/random.hpp"
#include "frobpencil/numeric/roots.hpp"

using namespace frob;
using namespace frob::engine;
using model::AbelianIntegral;

namespace {

const cplx kTau{0.3, 1.1};

AbelianIntegral random_genus0(numeric::Rng& rng, int n) {
    std::vector<cplx> lower(static_cast<std::size_t>(n - 1));
    for (auto& c : lower) c = rng.complex_in_box(1.0);
    return AbelianIntegral::genus0(n, lower);
}

AbelianIntegral random_genus1(numeric::Rng& rng, int n) {
    std::vector<cplx> gamma(static_cast<std::size_t>(n - 1));
    for (auto& g : gamma) g = rng.complex_in_box(0.5);
    gamma.back() = cplx(1.0, 0.2) + rng.complex_in_box(0.3);
    return AbelianIntegral::genus1(kTau, gamma, rng.complex_in_box(1.0), 1.0, cplx(2.0, 1.0));
}

ComplexVector random_vector(numeric::Rng& rng, int dim) {
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.complex_in_box(1.0);
    return v;
}

void check_polar_part(const AbelianIntegral& m, const PrimitiveSection& rho) {
    const auto r = section_in_x(m, rho, 2);
    CHECK(std::abs(r.coefficient(-rho.k) - 1.0) < 1e-9);
    for (int j = -rho.k + 1; j < 0; ++j) CHECK(std::abs(r.coefficient(j)) < 1e-9);
}

}  // namespace

TEST_CASE("primitive sections at genus 0") {
    const auto m = AbelianIntegral::genus0(3, {0.0, -3.0});
    const auto rho = primitive_section(m, 2);
    CHECK(rho.density.degree() == 0);
    CHECK(rho.density.coefficient(0) == cplx{-1.0});
    REQUIRE(rho.values_at_critical.size() == 2);
    CHECK(rho.values_at_critical[0] == cplx{-1.0});
    CHECK(rho.values_at_critical[1] == cplx{-1.0});
    CHECK(rho.primitive);

    numeric::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 6);
        const auto g = random_genus0(rng, n);
        const auto r2 = primitive_section(g, 2);
        CHECK(std::abs(r2.density.coefficient(0) + 1.0) < 1e-14);
        CHECK(r2.density.degree() == 0);
        for (int k = 2; k <= n; ++k) {
            const auto rk = primitive_section(g, k);
            CHECK(rk.density.degree() == k - 2);
            check_polar_part(g, rk);
        }
    }
    CHECK_THROWS_AS(primitive_section(m, 4), Error);
    CHECK_THROWS_AS(primitive_section(m, 1), Error);
}

TEST_CASE("primitive sections at genus 1") {
    numeric::Rng rng(23);
    for (int n : {2, 3, 4}) {
        const auto m = random_genus1(rng, n);
        for (int k = 2; k <= n; ++k) {
            const auto rho = primitive_section(m, k);
            CHECK(std::abs(rho.a_period) < 1e-8);
            check_polar_part(m, rho);
            // without the du term the a-period would be -mu eta1
            const auto& L = m.lattice();
            const cplx raw = elliptic::contour_period(
                L, [&](cplx u) { return rho.combination(L, u) - rho.lambda0; },
                elliptic::make_cycle(L, elliptic::CycleKind::a));
            CHECK(std::abs(rho.lambda0 + raw) < 1e-8);
        }
    }
}

TEST_CASE("tangent_to_fiber examples") {
    const auto m = AbelianIntegral::genus0(3, {0.0, -3.0});
    const auto fa = fiber_algebra(m, 2);
    ComplexVector d0(2), d1(2);
    d0 << 1.0, 0.0;
    d1 << 0.0, 1.0;
    const auto x0 = tangent_to_fiber(fa, d0);
    CHECK(x0.fiber(0) == cplx{1.0});
    CHECK(x0.fiber(1) == cplx{1.0});
    const auto x1 = tangent_to_fiber(fa, d1);
    CHECK(std::abs(x1.fiber(0) + 1.0) < 1e-12);
    CHECK(std::abs(x1.fiber(1) - 1.0) < 1e-12);
    const auto e = unit_field(fa);
    CHECK(std::abs(e.chart(0) - 1.0) < 1e-12);
    CHECK(std::abs(e.chart(1)) < 1e-12);
}

TEST_CASE("fiber matches finite differences of critical values") {
    numeric::Rng rng(29);
    for (int genus : {0, 1}) {
        const auto m = genus == 0 ? random_genus0(rng, 4) : random_genus1(rng, 3);
        const auto fa = fiber_algebra(m, 2);
        const int dim = fa.dimension();
        const ComplexVector dir = random_vector(rng, dim);
        const auto x = tangent_to_fiber(fa, dir);
        const std::vector<cplx> d(dir.data(), dir.data() + dim);
        const double eps = 1e-4;
        const auto cp = model::critical_data(model::deform(m, d, eps));
        const auto cm = model::critical_data(model::deform(m, d, -eps));
        for (int s = 0; s < dim; ++s) {
            const auto idx = static_cast<std::size_t>(s);
            CHECK(std::abs(cp.points[idx] - fa.critical.points[idx]) < 1e-2);
            const cplx fd = (cp.values[idx] - cm.values[idx]) / (2.0 * eps);
            CHECK(std::abs(fd - x.fiber(s)) < 1e-6 * std::max(1.0, std::abs(x.fiber(s))));
        }
    }
}

TEST_CASE("multiply, unit and metric") {
    const auto m = AbelianIntegral::genus0(3, {0.0, -3.0});
    const auto fa = fiber_algebra(m, 2);
    ComplexVector a(2), b(2);
    a << 2.0, 3.0;
    b << 5.0, 7.0;
    const auto p = multiply(fa, from_fiber(fa, a), from_fiber(fa, b));
    CHECK(p.fiber(0) == cplx{10.0});
    CHECK(p.fiber(1) == cplx{21.0});
    const auto e = unit_field(fa);
    CHECK((multiply(fa, e, e).fiber - e.fiber).norm() == 0.0);
    ComplexVector ep(2), em(2);
    ep << 0.0, 1.0;
    em << 1.0, 0.0;
    const auto Ep = from_fiber(fa, ep), Em = from_fiber(fa, em);
    CHECK(std::abs(metric(fa, Ep, Ep) - 1.0 / 6.0) < 1e-14);
    CHECK(std::abs(metric(fa, Em, Em) + 1.0 / 6.0) < 1e-14);
    CHECK(metric(fa, Ep, Em) == cplx{0.0});
}

TEST_CASE("algebra axioms at random points") {
    numeric::Rng rng(31);
    auto check_point = [&](const AbelianIntegral& m, int k) {
        const auto fa = fiber_algebra(m, k);
        const int dim = fa.dimension();
        CHECK(std::isfinite(fa.condition));
        const auto x = tangent_to_fiber(fa, random_vector(rng, dim));
        const auto y = tangent_to_fiber(fa, random_vector(rng, dim));
        const auto z = tangent_to_fiber(fa, random_vector(rng, dim));
        const auto xy = multiply(fa, x, y), yx = multiply(fa, y, x);
        CHECK((xy.chart - yx.chart).norm() <= 1e-9 * std::max(1.0, xy.chart.norm()));
        const auto l = multiply(fa, xy, z), r = multiply(fa, x, multiply(fa, y, z));
        CHECK((l.chart - r.chart).norm() <= 1e-9 * std::max(1.0, l.chart.norm()));
        const auto e = unit_field(fa);
        CHECK((multiply(fa, e, x).chart - x.chart).norm() <= 1e-9 * std::max(1.0, x.chart.norm()));
        const cplx lhs = metric(fa, xy, z), rhs = metric(fa, x, multiply(fa, y, z));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
        CHECK(std::abs(metric(fa, x, y) - metric(fa, y, x)) <= 1e-12 * std::max(1.0, std::abs(metric(fa, x, y))));
        const ComplexMatrix eta = metric_matrix(fa);
        CHECK(std::abs(eta.determinant()) > 0.0);
    };
    for (int t = 0; t < 50; ++t) {
        const int n = rng.integer(3, 6);
        check_point(random_genus0(rng, n), rng.integer(2, n));
    }
    for (int t = 0; t < 10; ++t) {
        const int n = rng.integer(2, 3);
        check_point(random_genus1(rng, n), rng.integer(2, n));
    }
}

TEST_CASE("idempotent metric is coordinate independent") {
    numeric::Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        const auto m = random_genus0(rng, 5);
        const auto fa = fiber_algebra(m, 3);
        const auto g = idempotent_metric(fa);
        // t = a s + b: the same quantities in the coordinate s
        const cplx a = rng.complex_in_box(1.0) + cplx(1.5, 0.0), b = rng.complex_in_box(1.0);
        const numeric::Polynomial fs = m.polynomial().taylor_shift(b);
        std::vector<cplx> c = fs.coefficients();
        cplx pw = 1.0;
        for (auto& ci : c) ci *= pw, pw *= a;
        const numeric::Polynomial F(c);
        const auto roots = numeric::poly_roots(F.derivative());
        for (const auto& r : roots) {
            const cplx tq = a * r.value + b;
            int s = 0;
            for (int i = 1; i < fa.dimension(); ++i)
                if (std::abs(fa.critical.points[static_cast<std::size_t>(i)] - tq) <
                    std::abs(fa.critical.points[static_cast<std::size_t>(s)] - tq))
                    s = i;
            const cplx rho_s = fa.rho.density(tq) * a;
            const cplx value = rho_s * rho_s / F.derivative().derivative()(r.value);
            CHECK(std::abs(value - g(s)) < 1e-10 * std::max(1.0, std::abs(g(s))));
        }
    }
}

TEST_CASE("non-primitive sections are flagged") {
    // f = t^4 - 2t^2 + a0 has a critical point at 0, where rho_3 = -t dt vanishes
    const auto m = AbelianIntegral::genus0(4, {0.5, 0.0, -2.0});
    const auto rho = primitive_section(m, 3);
    CHECK(std::abs(rho.density.coefficient(1) + 1.0) < 1e-14);
    CHECK_FALSE(rho.primitive);
    const auto fa = fiber_algebra(m, 3);
    CHECK_THROWS_AS(metric_matrix(fa), Error);
}
