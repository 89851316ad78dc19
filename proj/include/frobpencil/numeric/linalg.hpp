#pragma once

#include "frobpencil/numeric/types.hpp"

namespace frob::numeric {

/// 2-norm condition number via singular values (infinite when singular).
double condition_number(const ComplexMatrix& a);

struct SolveResult {
    ComplexMatrix x;
    double condition;
};

/// Dense solve a x = b with a condition-number report; throws SingularFrame
/// when the condition number exceeds max_condition.
SolveResult solve_checked(const ComplexMatrix& a, const ComplexMatrix& b, double max_condition = 1e12);

double max_abs(const ComplexMatrix& a);

}  // namespace frob::numeric
