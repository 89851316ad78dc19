#include "frobpencil/numeric/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/error.hpp"

namespace frob::numeric {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int degree, cplx c) {
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx leading) {
    std::vector<cplx> v{leading};
    for (cplx r : roots) {
        std::vector<cplx> next(v.size() + 1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            next[i + 1] += v[i];
            next[i] -= r * v[i];
        }
        v = std::move(next);
    }
    return Polynomial(std::move(v));
}

cplx Polynomial::coefficient(int k) const noexcept {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx t) const noexcept {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx shift) const {
    const Polynomial linear(std::vector<cplx>{shift, 1.0});
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * linear + Polynomial({*it});
    return acc;
}

double Polynomial::coefficient_scale() const noexcept {
    double s = 0.0;
    for (cplx c : coeffs_) s = std::max(s, std::abs(c));
    return s;
}

double Polynomial::root_scale() const noexcept {
    const int n = degree();
    if (n < 1) return 1.0;
    const double lead = std::abs(leading());
    double bound = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(coeffs_[static_cast<std::size_t>(i)]) / lead;
        if (a > 0) bound = std::max(bound, std::pow(a, 1.0 / (n - i)));
    }
    return std::max(1.0, 2.0 * bound);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + cplx{-1.0} * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(cplx s, const Polynomial& a) {
    std::vector<cplx> v = a.coeffs_;
    for (cplx& c : v) c *= s;
    return Polynomial(std::move(v));
}

DivMod divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    std::vector<cplx> r = num.coefficients();
    const int dd = den.degree();
    const int nd = num.degree();
    if (num.is_zero() || nd < dd) return {Polynomial{}, num};
    std::vector<cplx> q(static_cast<std::size_t>(nd - dd) + 1);
    const cplx lead = den.leading();
    for (int k = nd - dd; k >= 0; --k) {
        const cplx c = r[static_cast<std::size_t>(k + dd)] / lead;
        q[static_cast<std::size_t>(k)] = c;
        for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= c * den.coefficient(j);
        r[static_cast<std::size_t>(k + dd)] = 0.0;
    }
    r.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

}  // namespace frob::numeric
