#pragma once

#include <functional>
#include <vector>

#include "frobpencil/numeric/polynomial.hpp"
#include "frobpencil/numeric/series.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::elliptic {

/// The lattice Z + tau Z with its invariants and quasi-periods.
/// eta1, eta2 are the increments of zeta under u -> u+1 and u -> u+tau.
struct Lattice {
    cplx tau;
    cplx nome;  // q = exp(2 pi i tau)
    cplx g2;
    cplx g3;
    cplx eta1;
    cplx eta2;
    /// Coefficients a_k of wp(u) = u^-2 + sum_{k>=1} a_k u^{2k}.
    std::vector<cplx> laurent;

    cplx discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
    /// eta1 tau - eta2 - 2 pi i; zero up to rounding.
    cplx legendre_defect() const { return eta1 * tau - eta2 - kTwoPiI; }
};

/// Builds the lattice from tau by q-series; throws LowerHalfPlane unless Im tau > 0.
Lattice lattice_init(cplx tau, double precision = 1e-16);

/// u = reduced + shift_one * 1 + shift_tau * tau with reduced in the cell
/// centred at the origin.
struct Reduction {
    cplx reduced;
    long shift_one;
    long shift_tau;
};
Reduction reduce(const Lattice& L, cplx u);

/// j-th derivative of wp. j = 0, 1 by q-series; higher j through the
/// differential equation (wp^(j) = P_j(wp) + wp' Q_j(wp)).
cplx wp(const Lattice& L, cplx u, int j = 0);
cplx zeta_w(const Lattice& L, cplx u);

/// Polynomials P_j, Q_j in X = wp with wp^(j) = P_j(wp) + wp' Q_j(wp).
std::pair<numeric::Polynomial, numeric::Polynomial> wp_derivative_polynomials(const Lattice& L, int j);

/// An elliptic function even(wp) + wp' odd(wp), evaluated with one wp, wp' call.
struct WpCombination {
    numeric::Polynomial even;
    numeric::Polynomial odd;

    /// constant + sum_j coeffs[j] wp^(j).
    static WpCombination of_derivatives(const Lattice& L, cplx constant, const std::vector<cplx>& coeffs);
    cplx operator()(const Lattice& L, cplx u) const;
    /// Value from precomputed wp(u), wp'(u).
    cplx at(cplx p, cplx pp) const { return even(p) + pp * odd(p); }
    WpCombination derivative(const Lattice& L) const;
};

/// Laurent expansions at u = 0, certified below the truncation order.
numeric::LaurentSeries wp_laurent(const Lattice& L, int j, int truncation_order);
numeric::LaurentSeries zeta_laurent(const Lattice& L, int truncation_order);

// Independent lattice-sum evaluations (row sums of the Eisenstein order in
// closed form, rows |n| <= rows). Used as oracles only.
cplx wp_lattice_sum(cplx tau, cplx u, int rows = 60);
std::pair<cplx, cplx> invariants_lattice_sum(cplx tau, int rows = 60);

enum class CycleKind { a, b };

/// Straight path from base to base + 1 (a) or base + tau (b).
struct Cycle {
    CycleKind kind;
    cplx base;
    cplx step;  // exactly 1 or tau

    cplx end() const { return base + step; }

    /// Evenly spaced sample points along the path, endpoints included.
    std::vector<cplx> discretization(int points) const;
};

inline constexpr cplx kCycleBase{0.17, 0.13};

Cycle make_cycle(const Lattice& L, CycleKind kind, cplx base = kCycleBase);

/// Distance from the path to the nearest lattice point.
double lattice_clearance(const Lattice& L, const Cycle& c);

using FormDensity = std::function<cplx(cplx)>;

/// Integral of g(u) du along the cycle path by adaptive quadrature. Throws
/// PoleOnPath when the path comes within `clearance` of a lattice point.
cplx contour_period(const Lattice& L, const FormDensity& form, const Cycle& c, double abs_tol = 1e-10,
                    double clearance = 0.05);

}  // namespace frob::elliptic
