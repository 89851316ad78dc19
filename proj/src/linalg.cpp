#include "frobpencil/numeric/linalg.hpp"

#include <limits>

#include <Eigen/SVD>

#include "frobpencil/error.hpp"

namespace frob::numeric {

double condition_number(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 1.0;
    const double smallest = s(s.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smallest;
}

SolveResult solve_checked(const ComplexMatrix& a, const ComplexMatrix& b, double max_condition) {
    const double cond = condition_number(a);
    if (!(cond <= max_condition))
        throw Error(ErrorKind::SingularFrame, "condition number " + std::to_string(cond));
    return {a.fullPivLu().solve(b), cond};
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace frob::numeric
