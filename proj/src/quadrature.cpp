#include "frobpencil/numeric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frobpencil/error.hpp"

namespace frob::numeric {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIntervals = 4000;

struct Piece {
    double lo, hi;
    cplx value;
    double error;
    double l1;
    bool operator<(const Piece& o) const { return error < o.error; }
};

// QUADPACK-style 7/15 rule: the error estimate is scaled against the
// integrand's variation and floored at the rounding level.
Piece kronrod15(const std::function<cplx(double)>& f, double lo, double hi) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    cplx fv[15];
    fv[0] = f(c);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        fv[2 * i - 1] = f(c - h * xk[i]);
        fv[2 * i] = f(c + h * xk[i]);
    }
    cplx kron = wk[0] * fv[0];
    cplx gauss = wg[0] * fv[0];
    double resabs = wk[0] * std::abs(fv[0]);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const cplx pair = fv[2 * i - 1] + fv[2 * i];
        kron += wk[i] * pair;
        resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 0) gauss += wg[i / 2] * pair;
    }
    const cplx mean = 0.5 * kron;
    double resasc = wk[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < xk.size(); ++i)
        resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(kron - gauss);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {lo, hi, kron, err, resabs};
}

}  // namespace

QuadratureResult integrate_segment(const std::function<cplx(cplx)>& g, cplx a, cplx b, double abs_tol) {
    const cplx span = b - a;
    const std::function<cplx(double)> integrand = [&](double s) { return g(a + s * span) * span; };
    std::priority_queue<Piece> pieces;
    Piece first = kronrod15(integrand, 0.0, 1.0);
    cplx total = first.value;
    double error = first.error;
    double l1 = first.l1;
    pieces.push(first);
    int count = 1;
    // stop once the estimate meets the tolerance or sits at the rounding floor
    while (error > abs_tol && error > 100.0 * kEps * l1 && count < kMaxIntervals) {
        const Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Piece left = kronrod15(integrand, worst.lo, mid);
        const Piece right = kronrod15(integrand, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        pieces.push(left);
        pieces.push(right);
        ++count;
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw Error(ErrorKind::PoleOnPath, "non-finite integrand along the path");
    if (error > std::max(abs_tol, 100.0 * kEps * l1))
        throw Error(ErrorKind::QuadratureFailure, "quadrature error estimate above tolerance");
    return {total, error};
}

}  // namespace frob::numeric
