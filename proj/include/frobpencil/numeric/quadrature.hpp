#pragma once

#include <functional>

#include "frobpencil/numeric/types.hpp"

namespace frob::numeric {

struct QuadratureResult {
    cplx value;
    double error_estimate;
};

/// Globally adaptive Gauss-Kronrod (7/15) integral of g(u) du along the straight
/// segment from a to b. Throws QuadratureFailure if the error estimate stays
/// above abs_tol (or above the rounding floor 100 eps times the L1 norm of the
/// integrand, whichever is larger).
QuadratureResult integrate_segment(const std::function<cplx(cplx)>& g, cplx a, cplx b, double abs_tol = 1e-10);

}  // namespace frob::numeric
