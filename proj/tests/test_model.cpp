#include <doctest.h>

#include <cmath>

#include "frobpencil/error.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/random.hpp"

using namespace frob;
using namespace frob::model;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ConfigError;
}

const cplx kTau{0.3, 1.1};

}  // namespace

TEST_CASE("solve_leaf_coefficients examples") {
    const auto L = elliptic::lattice_init(kTau);
    auto [a, b] = solve_leaf_coefficients(L, 0.0, 0.0);
    CHECK(a == cplx{});
    CHECK(b == cplx{});
    std::tie(a, b) = solve_leaf_coefficients(L, 1.0, L.tau);
    CHECK(std::abs(a - 1.0) < 1e-14);
    CHECK(std::abs(b) < 1e-14);
    std::tie(a, b) = solve_leaf_coefficients(L, -L.eta1, -L.eta2);
    CHECK(std::abs(a) < 1e-14);
    CHECK(std::abs(b - 1.0) < 1e-14);
}

TEST_CASE("genus 0 model and critical data") {
    const auto m = AbelianIntegral::genus0(3, {0.0, -3.0});
    CHECK(m.chart_dimension() == 2);
    CHECK(std::abs(m.omega(2.0) - 9.0) < 1e-14);
    const auto cd = critical_data(m);
    REQUIRE(cd.size() == 2);
    CHECK(std::abs(cd.points[0] + 1.0) < 1e-12);
    CHECK(std::abs(cd.points[1] - 1.0) < 1e-12);
    CHECK(std::abs(cd.values[0] - 2.0) < 1e-12);
    CHECK(std::abs(cd.values[1] + 2.0) < 1e-12);
    CHECK(std::abs(m.omega_residue_at_pole()) < 1e-10);

    CHECK(kind_of([] { critical_data(AbelianIntegral::genus0(4, {0.0, 0.0, 0.0})); }) ==
          ErrorKind::NonSemisimplePoint);
    CHECK(kind_of([] { AbelianIntegral::genus0(numeric::Polynomial({0.0, 0.0, 2.0})); }) == ErrorKind::NotMonic);
    CHECK(kind_of([] { AbelianIntegral::genus0(numeric::Polynomial({0.0, 1.0, 1.0})); }) ==
          ErrorKind::InvalidModel);
}

TEST_CASE("genus 0 critical values from an independent path") {
    numeric::Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.integer(2, 7);
        std::vector<cplx> lower(static_cast<std::size_t>(n - 1));
        for (auto& c : lower) c = rng.complex_in_box(1.0);
        const auto m = AbelianIntegral::genus0(n, lower);
        const auto cd = critical_data(m);
        CHECK(static_cast<int>(cd.size()) == n - 1);
        const auto eig = numeric::companion_roots(m.polynomial().derivative());
        for (std::size_t s = 0; s < cd.size(); ++s) {
            double best = 1e300;
            for (const cplx r : eig) best = std::min(best, std::abs(m.polynomial()(r) - cd.values[s]));
            CHECK(best < 1e-8);
        }
        CHECK(std::abs(m.omega_residue_at_pole()) < 1e-10);
    }
}

TEST_CASE("genus 1 leaf membership and critical count") {
    for (int n : {2, 3, 4}) {
        std::vector<cplx> gamma(static_cast<std::size_t>(n - 1), 0.0);
        gamma.back() = 1.0;
        if (n > 2) gamma[0] = cplx(0.4, -0.2);
        const auto m = AbelianIntegral::genus1(kTau, gamma, 0.5, 1.0, cplx(2.0, 1.0));
        const auto& L = m.lattice();
        const auto w = differential(m);
        CHECK(std::abs(elliptic::contour_period(L, w, elliptic::make_cycle(L, elliptic::CycleKind::a)) - 1.0) < 1e-8);
        CHECK(std::abs(elliptic::contour_period(L, w, elliptic::make_cycle(L, elliptic::CycleKind::b)) -
                       cplx(2.0, 1.0)) < 1e-8);
        CHECK(std::abs(m.f(0.3 + 1.0) - m.f(0.3) - 1.0) < 1e-10);
        CHECK(std::abs(m.f(cplx(0.3, 0.1) + L.tau) - m.f(cplx(0.3, 0.1)) - cplx(2.0, 1.0)) < 1e-10);
        CHECK(std::abs(m.f(0.5 * (1.0 + L.tau)) - 0.5) < 1e-12);
        CHECK(std::abs(m.omega_residue_at_pole()) < 1e-10);
        const auto cd = critical_data(m);
        CHECK(static_cast<int>(cd.size()) == n + 1);
        for (std::size_t s = 0; s < cd.size(); ++s) {
            CHECK(std::abs(m.omega(cd.points[s])) < 1e-9);
            CHECK(std::abs(cd.omega_deriv[s]) > 1e-6);
        }
    }
}

TEST_CASE("genus 1 zero periods give an exact form") {
    const auto m = AbelianIntegral::genus1(kTau, {2.0}, 0.0, 0.0, 0.0);
    CHECK(m.genus1_data().alpha == cplx{});
    CHECK(m.genus1_data().beta == cplx{});
    const cplx u{0.21, 0.33};
    CHECK(std::abs(m.omega(u) - 2.0 * elliptic::wp(m.lattice(), u, 1)) < 1e-10);
    CHECK(critical_data(m).size() == 3);
}

TEST_CASE("deform") {
    const auto m = AbelianIntegral::genus1(kTau, {0.3, 1.0}, 0.0, 1.0, cplx(2.0, 1.0));
    const std::vector<cplx> dir{1.0, 0.0, 0.0, 0.0};
    const auto same = deform(m, dir, 0.0);
    CHECK(same.chart() == m.chart());
    const auto moved = deform(m, dir, cplx(0.01, 0.02));
    const auto& L = moved.lattice();
    CHECK(std::abs(moved.genus1_data().alpha - moved.genus1_data().beta * L.eta1 - 1.0) < 1e-12);
    CHECK(std::abs(moved.genus1_data().alpha * L.tau - moved.genus1_data().beta * L.eta2 - cplx(2.0, 1.0)) < 1e-12);
    const auto w = differential(moved);
    CHECK(std::abs(elliptic::contour_period(L, w, elliptic::make_cycle(L, elliptic::CycleKind::b)) - cplx(2.0, 1.0)) <
          1e-8);

    const auto g0 = AbelianIntegral::genus0(3, {0.0, -3.0});
    CHECK(kind_of([&] { deform(g0, {0.0, 1.0}, 3.0); }) == ErrorKind::LeftSemisimpleLocus);
}
