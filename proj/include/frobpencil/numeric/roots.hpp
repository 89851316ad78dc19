#pragma once

#include <vector>

#include "frobpencil/numeric/polynomial.hpp"

namespace frob::numeric {

struct Root {
    cplx value;
    int multiplicity = 1;
};

struct RootOptions {
    /// Residual tolerance relative to the coefficient scale.
    double tol = 1e-12;
    /// Roots closer than cluster_tol * root_scale are merged.
    double cluster_tol = 1e-6;
    int max_iterations = 500;
    int max_degree = 64;
};

/// All roots of p with multiplicities, sorted by (real, imag). Simultaneous
/// Aberth iteration, companion-matrix eigenvalues as fallback.
std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts = {});

/// Companion-matrix eigenvalues only (no clustering); exposed for tests.
std::vector<cplx> companion_roots(const Polynomial& p);

}  // namespace frob::numeric
