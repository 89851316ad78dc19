#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "frobpencil/error.hpp"
#include "frobpencil/numeric/linalg.hpp"
#include "frobpencil/numeric/polynomial.hpp"
#include "frobpencil/numeric/quadrature.hpp"
#include "frobpencil/numeric/random.hpp"
#include "frobpencil/numeric/roots.hpp"
#include "frobpencil/numeric/series.hpp"

using namespace frob;
using namespace frob::numeric;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("polynomial invariants") {
    const Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(p.leading() == cplx{2.0});
    CHECK(Polynomial().is_zero());
    CHECK((p - p).is_zero());
    const Polynomial q({-3.0, 0.0, 1.0});
    const auto dm = divmod(Polynomial({1.0, 0.0, 0.0, 1.0}), q);
    const Polynomial back = dm.quotient * q + dm.remainder;
    CHECK(close(back.coefficient(3), 1.0, 1e-14));
    CHECK(close(back.coefficient(0), 1.0, 1e-14));
    CHECK(dm.remainder.degree() < 2);
    const Polynomial s = q.taylor_shift(2.0);
    CHECK(close(s(0.5), q(2.5), 1e-13));
}

TEST_CASE("poly_roots examples") {
    auto r = poly_roots(Polynomial({1.0, 0.0, 1.0}));
    REQUIRE(r.size() == 2);
    CHECK(close(r[0].value, cplx(0, -1), 1e-12));
    CHECK(close(r[1].value, cplx(0, 1), 1e-12));
    CHECK(r[0].multiplicity == 1);

    r = poly_roots(Polynomial({-3.0, 0.0, 3.0}));
    REQUIRE(r.size() == 2);
    CHECK(close(r[0].value, -1.0, 1e-12));
    CHECK(close(r[1].value, 1.0, 1e-12));

    r = poly_roots(Polynomial({4.0, -4.0, 1.0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 2);
    CHECK(close(r[0].value, 2.0, 1e-7));

    r = poly_roots(Polynomial::monomial(4));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 4);

    CHECK(kind_of([] { poly_roots(Polynomial()); }) == ErrorKind::ZeroPolynomial);
}

TEST_CASE("poly_roots re-expansion on random polynomials") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = rng.integer(1, 12);
        std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = rng.complex_in_box(1.0);
        if (std::abs(c.back()) < 0.1) c.back() = 1.0;
        const Polynomial p(c);
        const auto roots = poly_roots(p);
        std::vector<cplx> flat;
        int total = 0;
        for (const auto& r : roots) {
            total += r.multiplicity;
            for (int m = 0; m < r.multiplicity; ++m) flat.push_back(r.value);
            CHECK(std::abs(p(r.value)) <= 1e-10 * p.coefficient_scale() * std::pow(1.0 + std::abs(r.value), deg));
        }
        CHECK(total == deg);
        const Polynomial back = Polynomial::from_roots(flat, p.leading());
        double err = 0.0;
        for (int k = 0; k <= deg; ++k) err = std::max(err, std::abs(back.coefficient(k) - p.coefficient(k)));
        CHECK(err <= 1e-8 * p.coefficient_scale());
    }
}

TEST_CASE("companion fallback agrees") {
    const Polynomial p = Polynomial::from_roots(std::vector<cplx>{1.0, cplx(0, 2), -0.5});
    auto c = companion_roots(p);
    std::sort(c.begin(), c.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(close(c[0], -0.5, 1e-12));
    CHECK(close(c[2], 1.0, 1e-12));
}

TEST_CASE("residue_at examples") {
    const LaurentSeries inv_t(ExpansionPoint::origin(), -1, {1.0}, 3);
    CHECK(residue_at(inv_t) == cplx{1.0});
    const LaurentSeries inv_t2(ExpansionPoint::origin(), -2, {1.0}, 3);
    CHECK(residue_at(inv_t2) == cplx{0.0});
    const auto s = LaurentSeries::rational(Polynomial({1.0}), Polynomial({-3.0, 0.0, 3.0}), 1.0, 4);
    CHECK(close(residue_at(s), 1.0 / 6.0, 1e-14));
    CHECK(kind_of([&] { residue_at(LaurentSeries(ExpansionPoint::origin(), -3, {}, -1)); }) ==
          ErrorKind::InsufficientTruncation);
}

TEST_CASE("residue linearity") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> a(6), b(6);
        for (auto& x : a) x = rng.complex_in_box(1.0);
        for (auto& x : b) x = rng.complex_in_box(1.0);
        const LaurentSeries A(ExpansionPoint::origin(), -3, a, 3), B(ExpansionPoint::origin(), -3, b, 3);
        const cplx al = rng.complex_in_box(2.0), be = rng.complex_in_box(2.0);
        CHECK(residue_at(al * A + be * B) == al * residue_at(A) + be * residue_at(B));
    }
}

TEST_CASE("series_arith examples") {
    const auto o = ExpansionPoint::origin();
    const LaurentSeries a(o, 0, {1.0, 1.0}, 5), b(o, 0, {1.0, -1.0}, 5);
    const auto sum = series_arith(a, b, SeriesOp::add);
    CHECK(sum.coefficient(0) == cplx{2.0});
    CHECK(sum.coefficient(1) == cplx{0.0});
    const LaurentSeries tinv(o, -1, {1.0}, 5), t(o, 1, {1.0}, 5);
    const auto prod = series_arith(tinv, t, SeriesOp::mul);
    CHECK(prod.coefficient(0) == cplx{1.0});
    CHECK(prod.coefficient(1) == cplx{0.0});
    const LaurentSeries t2(o, 2, {1.0}, 6);
    const auto d = series_arith(t2, t2, SeriesOp::differentiate);
    CHECK(d.coefficient(1) == cplx{2.0});
    CHECK(d.coefficient(2) == cplx{0.0});
    CHECK(d.truncation_order() == 5);
    CHECK(kind_of([&] { series_arith(a, a.with_point(ExpansionPoint::infinity()), SeriesOp::add); }) ==
          ErrorKind::IncompatibleExpansionPoints);
    CHECK(kind_of([&] { series_arith(a, a, SeriesOp::compose); }) == ErrorKind::ValuationError);
    CHECK(kind_of([&] { (void)a.coefficient(5); }) == ErrorKind::InsufficientTruncation);
}

TEST_CASE("puiseux_inverse_root") {
    const auto x = puiseux_inverse_root(Polynomial::monomial(3), 8);
    CHECK(x.coefficient(1) == cplx{1.0});
    for (int k = 2; k < x.truncation_order(); ++k) CHECK(std::abs(x.coefficient(k)) < 1e-15);

    const Polynomial f({0.0, -3.0, 0.0, 1.0});
    const auto y = puiseux_inverse_root(f, 10);
    CHECK(y.coefficient(1) == cplx{1.0});
    CHECK(close(y.coefficient(3), 1.0, 1e-14));
    // (1 - 3w^2)^(-1/3) = 1 + w^2 + 2 w^4 + ...
    CHECK(close(y.coefficient(5), 2.0, 1e-13));

    // t(x) by reversion of x(w) with w = 1/t; f(t(x)) x^n = 1 + O(x^order)
    const auto w_of_x = revert(y);
    const auto t_of_x = inverse(w_of_x);
    LaurentSeries ft = LaurentSeries::constant(0.0, t_of_x.truncation_order());
    for (int k = f.degree(); k >= 0; --k) ft = ft * t_of_x + LaurentSeries::constant(f.coefficient(k), 40);
    const auto check = ft * LaurentSeries(ExpansionPoint::origin(), 3, {1.0}, 40);
    CHECK(close(check.coefficient(0), 1.0, 1e-13));
    for (int k = 1; k < check.truncation_order(); ++k) CHECK(std::abs(check.coefficient(k)) < 1e-11);
    CHECK(check.truncation_order() >= 7);

    CHECK(kind_of([] { puiseux_inverse_root(Polynomial({0.0, 0.0, 2.0}), 4); }) == ErrorKind::NotMonic);
    CHECK(kind_of([&] { puiseux_inverse_root(f, 2); }) == ErrorKind::OrderTooSmall);
}

TEST_CASE("reversion identity on random series") {
    Rng rng(7);
    const auto o = ExpansionPoint::origin();
    for (int trial = 0; trial < 100; ++trial) {
        const int trunc = rng.integer(4, 14);
        std::vector<cplx> c(static_cast<std::size_t>(trunc - 1));
        c[0] = 1.0;
        for (std::size_t i = 1; i < c.size(); ++i) c[i] = rng.complex_in_box(1.0);
        const LaurentSeries a(o, 1, c, trunc);
        const auto r = series_arith(a, a, SeriesOp::revert);
        const auto id = compose(a, r);
        CHECK(id.truncation_order() == trunc);
        CHECK(close(id.coefficient(1), 1.0, 1e-12));
        for (int k = 2; k < id.truncation_order(); ++k) CHECK(std::abs(id.coefficient(k)) < 1e-9);
    }
}

TEST_CASE("quadrature and linear algebra") {
    const auto r = integrate_segment([](cplx u) { return u * u; }, 0.0, cplx(1.0, 1.0));
    CHECK(close(r.value, std::pow(cplx(1.0, 1.0), 3) / 3.0, 1e-13));
    CHECK(kind_of([] { integrate_segment([](cplx u) { return 1.0 / u; }, -1.0, 1.0); }) == ErrorKind::PoleOnPath);

    ComplexMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    ComplexMatrix b(2, 1);
    b << 5.0, 6.0;
    const auto s = solve_checked(a, b);
    CHECK(max_abs(a * s.x - b) < 1e-13);
    ComplexMatrix sing(2, 2);
    sing << 1.0, 2.0, 2.0, 4.0;
    CHECK(kind_of([&] { solve_checked(sing, b); }) == ErrorKind::SingularFrame);
}
