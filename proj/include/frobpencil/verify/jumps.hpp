#pragma once

#include <vector>

#include "frobpencil/flat/flat_structure.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::verify {

/// g = -(zeta(u) - eta1 u) / (2 pi i): periodic under u -> u + 1 and
/// g(u + tau) = g(u) + 1.
cplx jump_function(const elliptic::Lattice& L, cplx u);

/// chi = lambda g omega + (c_0 + sum_{j=1}^{n+1} c_j wp^(j-1)) du on the
/// genus-1 curve: pole of order at most n + 2 at the marked point and jump
/// lambda omega across the a-cycle.
struct JumpsForm {
    std::vector<cplx> lambda;
    std::vector<cplx> coeffs;

    cplx operator()(const model::AbelianIntegral& m, cplx u) const;
};

int jumps_basis_size(const model::AbelianIntegral& m);

/// The data held fixed by the transport: jump, a-period and the polar part
/// x^{-n-2} .. x^{-1} of the x-expansion at the marked pole.
struct JumpsInvariants {
    cplx lambda;
    cplx a_period;
    std::vector<cplx> polar;
};

JumpsInvariants jumps_invariants(const model::AbelianIntegral& m, const JumpsForm& chi);

/// max |(chi(u + tau) - chi(u)) / omega(u) - lambda| over sample points on
/// the a-cycle.
double jump_defect(const model::AbelianIntegral& m, const JumpsForm& chi);

/// Least-squares representation of a density in the jumps basis from samples
/// in the period cell; `residual` receives the relative fit residual.
JumpsForm fit_jumps_form(const model::AbelianIntegral& m, const std::vector<cplx>& points,
                         const std::vector<cplx>& values, double* residual = nullptr);
/// Sample points used by the fits.
std::vector<cplx> jumps_sample_points(const model::AbelianIntegral& m);

/// Re-solves the coefficients at m for the given invariants; `residual`
/// receives the relative least-squares residual of the overdetermined system.
/// Throws SolveFailure when the residual exceeds max_residual.
JumpsForm solve_jumps_form(const model::AbelianIntegral& m, const JumpsInvariants& inv, double* residual = nullptr,
                           double max_residual = 1e-6);

/// Densities of chi_A = (d_A f)|_u rho - (d_A p)|_u omega at the given points
/// for the flat directions A (columns), with p normalised to have no constant
/// term in its x-expansion.
ComplexMatrix flat_section_values(const model::AbelianIntegral& m, int k, const std::vector<cplx>& points,
                                  const flat::FlatOptions& opts = {});

struct JumpsReport {
    /// Transported coefficients (lambda first) per path point and direction.
    std::vector<std::vector<std::vector<cplx>>> transported;
    /// max over path points and directions of the coefficient difference
    /// between the transported form and the flat section there.
    double transport_delta = 0.0;
    double fit_residual = 0.0;
    double solve_residual = 0.0;
    /// Jump relation of the raw flat-section densities against the fitted
    /// lambda, measured as in jump_defect.
    double jump_defect = 0.0;
    /// Transported end point against the start when the path is closed.
    double loop_closure = 0.0;
};

/// Transports chi_A from the first path point by holding its invariants and
/// compares with chi_A computed from the flat frame at each later point.
/// Genus 1; path entries are chart vectors for m's periods.
JumpsReport jumps_flatness_check(const model::AbelianIntegral& m, const std::vector<std::vector<cplx>>& path, int k,
                                 const flat::FlatOptions& opts = {});

}  // namespace frob::verify
