#pragma once

#include <vector>

#include "frobpencil/engine/frobenius.hpp"

namespace frob::flat {

/// Dense d x d x d array.
struct Tensor3 {
    int d = 0;
    std::vector<cplx> v;

    Tensor3() = default;
    explicit Tensor3(int dim) : d(dim), v(static_cast<std::size_t>(dim * dim * dim)) {}
    cplx& operator()(int a, int b, int c) { return v[static_cast<std::size_t>((a * d + b) * d + c)]; }
    cplx operator()(int a, int b, int c) const { return v[static_cast<std::size_t>((a * d + b) * d + c)]; }
};

/// Flat coordinates at a point: t_A = n [x^A] p(x) for A = 1..n-1 (p the
/// primitive of rho_k expanded at the pole); at genus 1 followed by the
/// b-period B of rho and S = int_a f rho - P_a (p(base) - [x^0] p).
ComplexVector flat_coordinates(const model::AbelianIntegral& m, int k);

/// The constant metric the flat coordinates must carry: (1/n) antidiagonal,
/// plus at genus 1 eta(B, S) = 1/(2 pi i), eta(B, B) = P_a/(2 pi i), eta(S, S) = 0.
ComplexMatrix predicted_flat_metric(const model::AbelianIntegral& m);

struct FlatChart {
    int genus = 0;
    int n = 0;
    int k = 2;
    std::vector<cplx> chart_point;
    ComplexVector coordinates;
    /// d t_A / d chart_j.
    ComplexMatrix jacobian;
    /// Columns: d/dt_A in the chart basis.
    ComplexMatrix frame;
    /// eta(d/dt_A, d/dt_B) recomputed through the engine at this point.
    ComplexMatrix eta;
    ComplexMatrix eta_predicted;
    double flatness_defect = 0.0;
    /// Genus 1: largest loop-closure defect of the integrated frame.
    double closure_defect = 0.0;
};

struct FlatOptions {
    engine::EngineOptions engine;
    /// Finite-difference step for the genus-1 Jacobian (five-point stencil).
    double step = 1e-3;
    double flatness_tol_genus0 = 1e-8;
    double flatness_tol_genus1 = 1e-5;
    double closure_tol = 1e-5;
};

/// Exact Jacobian of the flat coordinates by series differentiation (genus 0).
/// Throws NotPrimitive and FlatnessFailure.
FlatChart flat_coordinates_genus0(const model::AbelianIntegral& m, int k = 2, const FlatOptions& opts = {});

/// Genus 1: Jacobian by finite differences of the flat functions; `region`
/// lists chart points around m whose frames are integrated along grid paths
/// (rows first vs columns first) to measure closure. Throws NotPrimitive,
/// FlatnessFailure and NonIntegrableFrame.
FlatChart flat_frame_numeric(const model::AbelianIntegral& m, int k, const FlatOptions& opts = {},
                             double region_radius = 0.0, int region_points = 3);

/// Dispatches on genus (no closure region at genus 1).
FlatChart flat_chart(const model::AbelianIntegral& m, int k, const FlatOptions& opts = {});

/// Fiber components of d/dt_A (rows s, columns A).
ComplexMatrix flat_fiber_frame(const engine::FiberAlgebra& fa, const FlatChart& chart);

/// c_ABC = eta(d_A o d_B, d_C) in the flat frame.
Tensor3 structure_constants(const FlatChart& chart, const engine::FiberAlgebra& fa);
/// Convenience: chart and fiber algebra built at m.
Tensor3 structure_constants_at(const model::AbelianIntegral& m, int k, const FlatOptions& opts = {});

double symmetry_defect(const Tensor3& c);

/// max |c_AB^E c_ECD - c_AC^E c_EBD| with indices raised by eta^{-1},
/// divided by the largest term (at least 1).
double wdvv_residual(const Tensor3& c, const ComplexMatrix& eta);

/// d_D c_ABC (flat frame) at m by five-point differences along the chart,
/// converted with the frame; returns the largest deviation from symmetry in D
/// and A over the largest derivative (at least 1).
double potentiality_defect(const model::AbelianIntegral& m, int k, double step, const FlatOptions& opts = {});

struct PotentialFit {
    int dimension = 0;
    /// Monomial exponents in the flat coordinates (relative to `center`).
    std::vector<std::vector<int>> monomials;
    ComplexVector coefficients;
    ComplexVector center;
    std::vector<ComplexVector> sample_points;
    std::vector<Tensor3> samples;
    ComplexMatrix eta;
    /// relative to max |c_ABC| (at least 1)
    double fit_residual = 0.0;
    double symmetry = 0.0;
    double wdvv = 0.0;
    double potentiality = 0.0;

    /// Third derivative d_A d_B d_C F at flat point t.
    cplx third_derivative(const ComplexVector& t, int a, int b, int c) const;
    cplx value(const ComplexVector& t) const;
};

/// Least-squares polynomial F of total degree 3..max_degree whose third
/// derivatives match c_ABC at the sampled chart points. Genus 0 fits globally
/// in t; genus 1 fits a local Taylor polynomial around the first sample.
/// Throws PotentialityFailure when the potentiality defect at the first
/// sample exceeds 1e-5.
PotentialFit potential(const model::AbelianIntegral& m, int k, const std::vector<std::vector<cplx>>& chart_points,
                       int max_degree, const FlatOptions& opts = {});

}  // namespace frob::flat
