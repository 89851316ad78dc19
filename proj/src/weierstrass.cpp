#include "frobpencil/elliptic/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frobpencil/error.hpp"
#include "frobpencil/numeric/quadrature.hpp"

namespace frob::elliptic {

using numeric::LaurentSeries;
using numeric::Polynomial;

namespace {

constexpr int kMaxTerms = 4000;
constexpr int kStoredLaurent = 24;

// sum_{n>=1} n^p q^n / (1 - q^n)
cplx lambert_sum(cplx q, int p, double precision) {
    cplx sum{};
    cplx qn = q;
    for (int n = 1; n <= kMaxTerms; ++n) {
        const cplx term = std::pow(static_cast<double>(n), p) * qn / (1.0 - qn);
        sum += term;
        if (std::abs(term) < precision * std::max(1.0, std::abs(sum)) && std::abs(qn) < precision) break;
        qn *= q;
    }
    return sum;
}

std::vector<cplx> laurent_coefficients(cplx g2, cplx g3, int count) {
    // a[0] unused; a_k multiplies u^{2k}
    std::vector<cplx> a(static_cast<std::size_t>(count) + 1);
    if (count >= 1) a[1] = g2 / 20.0;
    if (count >= 2) a[2] = g3 / 28.0;
    for (int k = 3; k <= count; ++k) {
        cplx s{};
        for (int m = 1; m <= k - 2; ++m) s += a[m] * a[k - 1 - m];
        a[k] = 3.0 / static_cast<double>((2 * k + 3) * (k - 2)) * s;
    }
    return a;
}

// z/(1-z)^2 and z(1+z)/(1-z)^3 summed over z q^n, n in Z, for |q|^{1/2} <= |z| <= |q|^{-1/2}
cplx wp_sum(cplx q, cplx z) {
    cplx s = z / ((1.0 - z) * (1.0 - z));
    cplx qn = q;
    const cplx zi = 1.0 / z;
    for (int n = 1; n <= kMaxTerms; ++n) {
        const cplx y1 = qn * z;
        const cplx y2 = qn * zi;
        const cplx term = y1 / ((1.0 - y1) * (1.0 - y1)) + y2 / ((1.0 - y2) * (1.0 - y2));
        s += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
        qn *= q;
    }
    return s;
}

cplx wp_prime_sum(cplx q, cplx z) {
    auto g = [](cplx y) { return y * (1.0 + y) / ((1.0 - y) * (1.0 - y) * (1.0 - y)); };
    cplx s = g(z);
    cplx qn = q;
    const cplx zi = 1.0 / z;
    for (int n = 1; n <= kMaxTerms; ++n) {
        const cplx term = g(qn * z) - g(qn * zi);
        s += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
        qn *= q;
    }
    return s;
}

void check_not_lattice(const Reduction& r) {
    if (std::abs(r.reduced) < 1e-13) throw Error(ErrorKind::PoleAtLatticePoint, "argument is a lattice point");
}

}  // namespace

Lattice lattice_init(cplx tau, double precision) {
    if (!(tau.imag() > 0.0)) throw Error(ErrorKind::LowerHalfPlane, "Im(tau) must be positive");
    Lattice L;
    L.tau = tau;
    L.nome = std::exp(kTwoPiI * tau);
    const cplx q = L.nome;
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    L.g2 = (4.0 * pi4 / 3.0) * (1.0 + 240.0 * lambert_sum(q, 3, precision));
    L.g3 = (8.0 * pi6 / 27.0) * (1.0 - 504.0 * lambert_sum(q, 5, precision));
    L.eta1 = (pi2 / 3.0) * (1.0 - 24.0 * lambert_sum(q, 1, precision));
    L.eta2 = L.eta1 * tau - kTwoPiI;
    if (std::abs(L.discriminant()) == 0.0) throw Error(ErrorKind::InvalidModel, "degenerate lattice");
    L.laurent = laurent_coefficients(L.g2, L.g3, kStoredLaurent);
    return L;
}

Reduction reduce(const Lattice& L, cplx u) {
    const double b = u.imag() / L.tau.imag();
    const long m = std::lround(b);
    cplx v = u - static_cast<double>(m) * L.tau;
    const long l = std::lround(v.real());
    v -= static_cast<double>(l);
    return {v, l, m};
}

cplx wp(const Lattice& L, cplx u, int j) {
    if (j < 0) throw Error(ErrorKind::InvalidModel, "negative derivative order");
    const Reduction r = reduce(L, u);
    check_not_lattice(r);
    const cplx z = std::exp(kTwoPiI * r.reduced);
    const cplx tpi2 = kTwoPiI * kTwoPiI;
    // the constant (2 pi i)^2 (1/12 - 2 sum sigma_1(n) q^n) equals -eta1
    const cplx p = tpi2 * wp_sum(L.nome, z) - L.eta1;
    if (j == 0) return p;
    const cplx pp = tpi2 * kTwoPiI * wp_prime_sum(L.nome, z);
    if (j == 1) return pp;
    const auto [P, Q] = wp_derivative_polynomials(L, j);
    return P(p) + pp * Q(p);
}

cplx zeta_w(const Lattice& L, cplx u) {
    const Reduction r = reduce(L, u);
    check_not_lattice(r);
    const cplx v = r.reduced;
    const cplx z = std::exp(kTwoPiI * v);
    // pi cot(pi v) = -pi i (1+z)/(1-z)
    cplx s = -kPi * cplx{0.0, 1.0} * (1.0 + z) / (1.0 - z);
    cplx qn = L.nome;
    const cplx zi = 1.0 / z;
    cplx tail{};
    for (int n = 1; n <= kMaxTerms; ++n) {
        const cplx term = -qn * z / (1.0 - qn * z) + qn * zi / (1.0 - qn * zi);
        tail += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(tail))) break;
        qn *= L.nome;
    }
    s += kTwoPiI * tail + L.eta1 * v;
    return s + static_cast<double>(r.shift_one) * L.eta1 + static_cast<double>(r.shift_tau) * L.eta2;
}

std::pair<Polynomial, Polynomial> wp_derivative_polynomials(const Lattice& L, int j) {
    Polynomial P({0.0, 1.0});
    Polynomial Q;
    const Polynomial second({-L.g2 / 2.0, 0.0, 6.0});                // wp'' in X
    const Polynomial square({-L.g3, -L.g2, 0.0, 4.0});                // wp'^2 in X
    for (int k = 0; k < j; ++k) {
        const Polynomial nextQ = P.derivative();
        const Polynomial nextP = second * Q + square * Q.derivative();
        P = nextP;
        Q = nextQ;
    }
    return {P, Q};
}

WpCombination WpCombination::of_derivatives(const Lattice& L, cplx constant, const std::vector<cplx>& coeffs) {
    WpCombination w{Polynomial({constant}), Polynomial()};
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == cplx{}) continue;
        const auto [P, Q] = wp_derivative_polynomials(L, static_cast<int>(j));
        w.even = w.even + coeffs[j] * P;
        w.odd = w.odd + coeffs[j] * Q;
    }
    return w;
}

cplx WpCombination::operator()(const Lattice& L, cplx u) const {
    return at(wp(L, u), odd.is_zero() ? cplx{} : wp(L, u, 1));
}

WpCombination WpCombination::derivative(const Lattice& L) const {
    const Polynomial second({-L.g2 / 2.0, 0.0, 6.0});
    const Polynomial square({-L.g3, -L.g2, 0.0, 4.0});
    return {second * odd + square * odd.derivative(), even.derivative()};
}

LaurentSeries wp_laurent(const Lattice& L, int j, int truncation_order) {
    const int top = truncation_order + j;  // exclusive bound for the wp expansion
    const int count = std::max(0, (top - 1) / 2);
    const std::vector<cplx> a =
        count <= kStoredLaurent ? L.laurent : laurent_coefficients(L.g2, L.g3, count);
    std::vector<cplx> c(static_cast<std::size_t>(std::max(0, top + 2)));
    if (top > -2) c[0] = 1.0;
    for (int k = 1; 2 * k < top; ++k) c[static_cast<std::size_t>(2 * k + 2)] = a[static_cast<std::size_t>(k)];
    LaurentSeries s(numeric::ExpansionPoint::origin(), -2, c, std::max(top, -2));
    for (int k = 0; k < j; ++k) s = numeric::differentiate(s);
    return s;
}

LaurentSeries zeta_laurent(const Lattice& L, int truncation_order) {
    // zeta = 1/u - sum a_k u^{2k+1}/(2k+1)
    const int top = std::max(truncation_order, -1);
    const int count = std::max(0, (top - 2) / 2 + 1);
    const std::vector<cplx> a =
        count <= kStoredLaurent ? L.laurent : laurent_coefficients(L.g2, L.g3, count);
    std::vector<cplx> c(static_cast<std::size_t>(top + 1));
    if (top > -1) c[0] = 1.0;
    for (int k = 1; 2 * k + 1 < top; ++k)
        c[static_cast<std::size_t>(2 * k + 2)] = -a[static_cast<std::size_t>(k)] / static_cast<double>(2 * k + 1);
    return LaurentSeries(numeric::ExpansionPoint::origin(), -1, c, top);
}

namespace {

// pi^2 csc^2(pi w) and cot(pi w) through exponentials, stable for large |Im w|
cplx csc2(cplx w) {
    const cplx z = w.imag() >= 0.0 ? std::exp(kTwoPiI * w) : std::exp(-kTwoPiI * w);
    return kPi * kPi * (-4.0 * z / ((1.0 - z) * (1.0 - z)));
}

cplx cot(cplx w) {
    if (w.imag() >= 0.0) {
        const cplx z = std::exp(kTwoPiI * w);
        return cplx{0.0, 1.0} * (z + 1.0) / (z - 1.0);
    }
    const cplx z = std::exp(-kTwoPiI * w);
    return cplx{0.0, -1.0} * (z + 1.0) / (z - 1.0);
}

// d^m/dw^m of pi^2 (1 + c^2) with c = cot(pi w), as a polynomial in c
Polynomial csc2_derivative(int m) {
    Polynomial p({kPi * kPi, 0.0, kPi * kPi});
    const Polynomial dc({-kPi, 0.0, -kPi});
    for (int k = 0; k < m; ++k) p = p.derivative() * dc;
    return p;
}

}  // namespace

cplx wp_lattice_sum(cplx tau, cplx u, int rows) {
    cplx s = csc2(u) - kPi * kPi / 3.0;
    for (int n = 1; n <= rows; ++n) {
        const cplx nt = static_cast<double>(n) * tau;
        s += csc2(u - nt) + csc2(u + nt) - 2.0 * csc2(nt);
    }
    return s;
}

std::pair<cplx, cplx> invariants_lattice_sum(cplx tau, int rows) {
    const double pi4 = std::pow(kPi, 4);
    const double pi6 = std::pow(kPi, 6);
    const Polynomial d2 = csc2_derivative(2);
    const Polynomial d4 = csc2_derivative(4);
    cplx G4 = pi4 / 45.0;
    cplx G6 = 2.0 * pi6 / 945.0;
    for (int n = 1; n <= rows; ++n) {
        const cplx c = cot(static_cast<double>(n) * tau);
        G4 += 2.0 * d2(c) / 6.0;
        G6 += 2.0 * d4(c) / 120.0;
    }
    return {60.0 * G4, 140.0 * G6};
}

std::vector<cplx> Cycle::discretization(int points) const {
    std::vector<cplx> out;
    const int m = std::max(points, 2);
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.push_back(base + step * (static_cast<double>(i) / (m - 1)));
    return out;
}

Cycle make_cycle(const Lattice& L, CycleKind kind, cplx base) {
    return {kind, base, kind == CycleKind::a ? cplx{1.0} : L.tau};
}

double lattice_clearance(const Lattice& L, const Cycle& c) {
    const cplx d = c.step;
    double best = std::numeric_limits<double>::infinity();
    const cplx mid = c.base + 0.5 * c.step;
    const Reduction r = reduce(L, mid);
    for (long m = r.shift_tau - 2; m <= r.shift_tau + 2; ++m) {
        for (long l = r.shift_one - 2; l <= r.shift_one + 2; ++l) {
            const cplx w = static_cast<double>(l) + static_cast<double>(m) * L.tau;
            double s = std::real((w - c.base) * std::conj(d)) / std::norm(d);
            s = std::clamp(s, 0.0, 1.0);
            best = std::min(best, std::abs(c.base + s * d - w));
        }
    }
    return best;
}

cplx contour_period(const Lattice& L, const FormDensity& form, const Cycle& c, double abs_tol, double clearance) {
    if (lattice_clearance(L, c) < clearance) throw Error(ErrorKind::PoleOnPath, "cycle passes too close to a lattice point");
    return numeric::integrate_segment(form, c.base, c.end(), abs_tol).value;
}

}  // namespace frob::elliptic
