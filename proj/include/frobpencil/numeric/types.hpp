#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace frob {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

}  // namespace frob
