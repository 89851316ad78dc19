#include <doctest.h>

#include <cmath>

#include "frobpencil/engine/frobenius.hpp"
#include "frobpencil/error.hpp"
#include "frobpencil/numeric/random.hpp"
#include "frobpencil/verify/axioms.hpp"
#include "frobpencil/verify/cech.hpp"
#include "frobpencil/verify/jumps.hpp"
#include "frobpencil/verify/pencil.hpp"

using namespace frob;
using namespace frob::verify;
using model::AbelianIntegral;
using numeric::Polynomial;

namespace {

AbelianIntegral random_genus0(numeric::Rng& rng, int n) {
    std::vector<cplx> a(static_cast<std::size_t>(n - 1));
    for (auto& x : a) x = rng.complex_in_box(1.0);
    return AbelianIntegral::genus0(n, a);
}

ComplexVector random_vector(numeric::Rng& rng, int d) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.complex_in_box(1.0);
    return v;
}

Polynomial random_polynomial(numeric::Rng& rng, int degree) {
    std::vector<cplx> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = rng.complex_in_box(1.0);
    return Polynomial(c);
}

double relative(const ComplexVector& a, const ComplexVector& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

const AbelianIntegral kLeaf =
    AbelianIntegral::genus1(cplx(0.3, 1.1), {cplx(0.1, 0.05), cplx(1.0, 0.2)}, cplx(0.2, -0.1), 1.0, cplx(2.0, 1.0));

}  // namespace

TEST_CASE("cech cocycles satisfy their relation") {
    numeric::Rng rng(101);
    const auto m = random_genus0(rng, 4);
    const auto c = cocycle_from_form(m, random_polynomial(rng, 5));
    CHECK(cocycle_defect(m, c) < 1e-13);
    const auto b = coboundary(m, random_polynomial(rng, 3), function_at_infinity(Polynomial({1.0}), 12));
    CHECK(cocycle_defect(m, b) < 1e-13);
    CHECK(cocycle_defect(m, c + b) < 1e-13);
    CechCocycle broken = c;
    broken.alpha_outer = broken.alpha_outer + Polynomial({0.0, 1e-3});
    CHECK(cocycle_defect(m, broken) > 1e-4);
}

TEST_CASE("cech unit direction leaves the class unchanged") {
    numeric::Rng rng(103);
    const auto m = random_genus0(rng, 5);
    const auto cd = model::critical_data(m);
    const auto c = cocycle_from_form(m, random_polynomial(rng, 7));
    const CechReduction before = reduce_class(m, c, cd);
    const CechReduction after = cech_multiplication_oracle(m, ComplexVector::Unit(4, 0), c, cd);
    CHECK(relative(after.chart, before.chart) < 1e-12);
}

TEST_CASE("cech coboundaries reduce to zero") {
    numeric::Rng rng(107);
    const auto m = random_genus0(rng, 4);
    const auto cd = model::critical_data(m);
    const auto b = coboundary(m, random_polynomial(rng, 4), numeric::LaurentSeries::constant(0.5, 14, numeric::ExpansionPoint::infinity()));
    const CechReduction r = reduce_class(m, b, cd);
    CHECK(r.chart.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.fiber.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("cech product agrees with componentwise multiplication") {
    numeric::Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 4;
        const auto m = random_genus0(rng, n);
        const auto cd = model::critical_data(m);
        const auto fa = engine::fiber_algebra(m, 2);
        const ComplexVector xi = random_vector(rng, n - 1);
        // class with a random coboundary and disk part mixed in
        const Polynomial a = random_polynomial(rng, n - 2);
        const auto c = cocycle_from_form(m, a) + coboundary(m, random_polynomial(rng, 2),
                                                            numeric::LaurentSeries::constant(rng.complex_in_box(1.0), 3 * n + 10, numeric::ExpansionPoint::infinity()));
        const CechReduction r = cech_multiplication_oracle(m, xi, c, cd);
        CHECK(r.relation_defect < 1e-12);
        CHECK(r.third_slot_defect < 1e-12);
        ComplexVector ac = ComplexVector::Zero(n - 1);
        for (int j = 0; j <= a.degree(); ++j) ac(j) = a.coefficient(j);
        const auto prod = engine::multiply(fa, engine::tangent_to_fiber(fa, xi), engine::tangent_to_fiber(fa, ac));
        CHECK(relative(r.chart, prod.chart) < 1e-8);
        CHECK(relative(r.fiber, prod.fiber) < 1e-8);
    }
}

TEST_CASE("pencil has a simple pole") {
    numeric::Rng rng(113);
    for (int trial = 0; trial < 3; ++trial) {
        const auto m = random_genus0(rng, 3 + trial);
        const ComplexVector xi = random_vector(rng, m.chart_dimension());
        const PencilReport r = pencil_consistency(m, xi, default_z_samples());
        CHECK(r.fit_residual < 1e-6);
        CHECK(r.phi_delta < 1e-6);
        PencilOptions fault;
        fault.synthetic_second_order = 1e-3;
        CHECK(pencil_consistency(m, xi, default_z_samples(), fault).fit_residual > 1e-4);
    }
    numeric::Rng r2(1);
    CHECK_THROWS_AS(pencil_consistency(random_genus0(r2, 3), ComplexVector::Unit(2, 0), {1.0, 1.0}), Error);
}

TEST_CASE("jumps basis") {
    const auto& L = kLeaf.lattice();
    const cplx u(0.3, 0.4);
    CHECK(std::abs(jump_function(L, u + 1.0) - jump_function(L, u)) < 1e-12);
    CHECK(std::abs(jump_function(L, u + L.tau) - jump_function(L, u) - 1.0) < 1e-12);
    JumpsForm chi;
    chi.lambda = {cplx(0.7, -0.2)};
    chi.coeffs = {1.0, 0.5, cplx(0.0, 1.0), 0.2, 0.1};
    CHECK(jump_defect(kLeaf, chi) < 1e-10);
    // invariants round-trip through the solve
    double res = 1.0;
    const JumpsForm back = solve_jumps_form(kLeaf, jumps_invariants(kLeaf, chi), &res);
    CHECK(res < 1e-10);
    for (std::size_t j = 0; j < chi.coeffs.size(); ++j) CHECK(std::abs(back.coeffs[j] - chi.coeffs[j]) < 1e-9);
}

TEST_CASE("jumps transport: the trivial family") {
    JumpsInvariants inv{0.0, 1.0, std::vector<cplx>(5, 0.0)};
    std::vector<cplx> c = kLeaf.chart();
    for (int i = 0; i < 3; ++i) {
        c[0] += cplx(0.01, 0.01);
        const JumpsForm chi = solve_jumps_form(kLeaf.with_chart(c), inv);
        CHECK(std::abs(chi.coeffs[0] - 1.0) < 1e-12);
        for (std::size_t j = 1; j < chi.coeffs.size(); ++j) CHECK(std::abs(chi.coeffs[j]) < 1e-12);
    }
}

TEST_CASE("jumps transport matches the flat frame") {
    const std::vector<cplx> c = kLeaf.chart();
    std::vector<std::vector<cplx>> path;
    for (int i = 0; i <= 3; ++i) {
        auto x = c;
        x[0] += cplx(0.01 * i, 0.005 * i);
        x[1] += 0.02 * i;
        path.push_back(x);
    }
    for (int k : {2, 3}) {
        const JumpsReport r = jumps_flatness_check(kLeaf, path, k);
        CHECK(r.transport_delta < 1e-5);
        CHECK(r.fit_residual < 1e-6);
        CHECK(r.solve_residual < 1e-10);
        CHECK(r.jump_defect < 1e-5);
    }
    // closed square
    std::vector<std::vector<cplx>> loop;
    for (auto d : {cplx(0.0), cplx(0.02), cplx(0.02, 0.02), cplx(0.0, 0.02), cplx(0.0)}) {
        auto x = c;
        x[0] += 0.5 * d;
        x[1] += d;
        loop.push_back(x);
    }
    const JumpsReport r = jumps_flatness_check(kLeaf, loop, 2);
    CHECK(r.loop_closure < 1e-5);
    CHECK(r.transport_delta < 1e-5);
}

TEST_CASE("axiom suite") {
    numeric::Rng rng(127);
    const SuiteReport g0 = axiom_suite(random_genus0(rng, 4), 2);
    CHECK(g0.all_pass());
    CHECK(g0.find("wdvv") != nullptr);
    CHECK(g0.find("wdvv")->threshold == 1e-9);

    const SuiteReport g1 = axiom_suite(kLeaf, 2);
    for (const auto& c : g1.checks) {
        INFO(c.name << " " << c.residual << " " << c.detail);
        CHECK(c.pass);
    }

    const auto hurwitz = AbelianIntegral::genus1(cplx(0.3, 1.1), {cplx(0.1, 0.05), cplx(1.0, 0.2)}, 0.0, 0.0, 0.0);
    CHECK(hurwitz.genus1_data().alpha == cplx{});
    CHECK(hurwitz.genus1_data().beta == cplx{});
    const SuiteReport h = axiom_suite(hurwitz, 3);
    CHECK(h.all_pass());
    REQUIRE(h.find("hurwitz_alpha_beta") != nullptr);

    // a degenerate point becomes a failed record instead of an exception
    const SuiteReport bad = axiom_suite(AbelianIntegral::genus0(4, {0.0, 0.0, 0.0}), 2);
    CHECK_FALSE(bad.all_pass());
}
