#pragma once

#include <vector>

#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::verify {

/// Default pencil samples.
std::vector<cplx> default_z_samples();

/// Pi(l, j) = int_{Gamma_l} exp(f / z) t^j dt for j = 0 .. n-2, where Gamma_l
/// runs in from infinity along the l-th ray of steepest descent of f / z and
/// out along the (l+1)-th. Genus 0 only.
ComplexMatrix twisted_periods(const model::AbelianIntegral& m, cplx z);

struct PencilOptions {
    /// Step of the five-point difference along the chart direction.
    double step = 1e-3;
    /// Size of a synthetic E / z^2 term added to every sample (E all ones);
    /// zero outside detector tests.
    double synthetic_second_order = 0.0;
};

struct PencilReport {
    std::vector<cplx> z;
    /// Connection matrices A(z) = Pi^{-1} d_xi Pi in the basis t^j dt.
    std::vector<ComplexMatrix> connection;
    ComplexMatrix a_infinity;
    ComplexMatrix residue;
    /// Multiplication by xi in the same basis from the Frobenius engine.
    ComplexMatrix phi;
    /// max |A(z) - A_inf - B / z| over the largest entry of A (at least 1).
    double fit_residual = 0.0;
    /// max |B - Phi| over the largest entry of Phi (at least 1).
    double phi_delta = 0.0;
};

/// Fits A(z) = A_inf + B / z over the samples along the chart direction xi and
/// compares B with multiplication by xi. Throws FitFailure when fewer than two
/// distinct nonzero samples are given.
PencilReport pencil_consistency(const model::AbelianIntegral& m, const ComplexVector& xi,
                                const std::vector<cplx>& z_samples, const PencilOptions& opts = {});

}  // namespace frob::verify
