#pragma once

#include <optional>
#include <vector>

#include "frobpencil/elliptic/weierstrass.hpp"
#include "frobpencil/numeric/polynomial.hpp"
#include "frobpencil/numeric/roots.hpp"
#include "frobpencil/numeric/series.hpp"

namespace frob::model {

/// Genus-1 curve data: f = c0 + F(u) - F(u0) with
/// F = alpha u - beta zeta(u) + sum_j gamma_j wp^(j-1)(u), u0 = (1 + tau)/2.
struct Genus1Data {
    elliptic::Lattice lattice;
    cplx alpha;
    cplx beta;
    std::vector<cplx> gamma;  // gamma_1 .. gamma_{n-1}
    cplx c0;
    cplx period_a;
    cplx period_b;
};

/// A point of the leaf: a curve with marked pole, an abelian integral f with a
/// single pole of order n there, and the a-cycle choice (the class of [0,1] at
/// genus 1). Immutable.
class AbelianIntegral {
public:
    /// f = t^n + a_{n-2} t^{n-2} + ... + a_0; `lower` lists a_0 .. a_{n-2}.
    static AbelianIntegral genus0(int n, const std::vector<cplx>& lower);
    /// From a monic polynomial with vanishing t^{n-1} coefficient.
    static AbelianIntegral genus0(const numeric::Polynomial& f);
    static AbelianIntegral genus1(cplx tau, const std::vector<cplx>& gamma, cplx c0, cplx period_a, cplx period_b);

    int genus() const noexcept { return genus_; }
    int n() const noexcept { return n_; }
    int chart_dimension() const noexcept { return 2 * genus_ + n_ - 1; }
    /// Genus 0: (a_0, .., a_{n-2}); genus 1: (tau, gamma_1, .., gamma_{n-1}, c0).
    std::vector<cplx> chart() const;
    /// Same genus, n and periods with a new chart vector.
    AbelianIntegral with_chart(const std::vector<cplx>& chart) const;

    const numeric::Polynomial& polynomial() const;
    const Genus1Data& genus1_data() const;
    const elliptic::Lattice& lattice() const { return genus1_data().lattice; }
    cplx period_a() const noexcept { return genus_ == 1 ? g1_->period_a : cplx{}; }
    cplx period_b() const noexcept { return genus_ == 1 ? g1_->period_b : cplx{}; }

    /// f at a point of the affine chart (t at genus 0, u at genus 1). At
    /// genus 1 the value depends on the representative of u modulo the lattice
    /// through the periods.
    cplx f(cplx point) const;
    /// Density of omega = df in the chart coordinate and its derivative.
    cplx omega(cplx point) const;
    cplx omega_derivative(cplx point) const;
    /// Laurent expansion of f at the marked pole in the local chart variable
    /// (w = 1/t at genus 0, u at genus 1); lowest order -n.
    numeric::LaurentSeries f_series_at_pole(int truncation_order) const;
    /// Residue of omega at the marked pole from its local expansion.
    cplx omega_residue_at_pole() const;

    /// Genus 1: omega = even(wp) + wp' odd(wp).
    const elliptic::WpCombination& omega_combination() const;

private:
    int genus_ = 0;
    int n_ = 0;
    numeric::Polynomial f0_;
    std::optional<Genus1Data> g1_;
    elliptic::WpCombination omega1_;
    elliptic::WpCombination omega1_prime_;
    elliptic::WpCombination fpart_;  // sum_j gamma_j wp^(j-1), without the zeta and linear terms
    cplx f_base_{};                   // F(u0)

    cplx F(cplx u) const;
    void build_genus1();
};

/// (alpha, beta) with alpha - beta eta1 = P_a and alpha tau - beta eta2 = P_b.
std::pair<cplx, cplx> solve_leaf_coefficients(const elliptic::Lattice& L, cplx period_a, cplx period_b);

using OneForm = elliptic::FormDensity;
OneForm differential(const AbelianIntegral& m);

struct CriticalOptions {
    /// Relative separation below which two zeros count as one multiple zero.
    double cluster_tol = 1e-6;
    /// Genus-1 cell grid per period direction (odd, so the pole sits in a cell centre).
    int cells = 5;
};

/// Zeros q_s of omega, critical values u_s = f(q_s) and omega'(q_s). Genus-1
/// zeros are reported in the period cell centred at the origin, sorted by
/// (real, imag).
struct CriticalData {
    std::vector<cplx> points;
    std::vector<cplx> values;
    std::vector<cplx> omega_deriv;

    std::size_t size() const noexcept { return points.size(); }
};

CriticalData critical_data(const AbelianIntegral& m, const CriticalOptions& opts = {});

/// Moves along the chart by eps * direction; genus 1 re-solves (alpha, beta)
/// so the periods stay fixed. Throws LeftSemisimpleLocus if omega acquires a
/// multiple zero.
AbelianIntegral deform(const AbelianIntegral& m, const std::vector<cplx>& direction, cplx eps,
                       const CriticalOptions& opts = {});

}  // namespace frob::model
