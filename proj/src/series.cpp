#include "frobpencil/numeric/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frobpencil/error.hpp"

namespace frob::numeric {
namespace {

void require_same_point(const LaurentSeries& a, const LaurentSeries& b) {
    if (!(a.point() == b.point()))
        throw Error(ErrorKind::IncompatibleExpansionPoints, "series expanded at different points");
}

cplx integer_power(cplx c, int e) {
    cplx r = 1.0;
    cplx base = e < 0 ? 1.0 / c : c;
    for (int k = std::abs(e); k > 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
    }
    return r;
}

}  // namespace

LaurentSeries::LaurentSeries(ExpansionPoint point, int lowest_order, std::vector<cplx> coeffs, int truncation_order)
    : point_(point), low_(lowest_order), trunc_(truncation_order), c_(std::move(coeffs)) {
    if (trunc_ < low_) throw Error(ErrorKind::InsufficientTruncation, "truncation order below lowest order");
    c_.resize(static_cast<std::size_t>(trunc_ - low_));
}

LaurentSeries LaurentSeries::constant(cplx c, int truncation_order, ExpansionPoint point) {
    if (truncation_order <= 0) return {point, truncation_order, {}, truncation_order};
    return {point, 0, {c}, truncation_order};
}

LaurentSeries LaurentSeries::variable(int truncation_order, ExpansionPoint point) {
    return {point, 1, {1.0}, std::max(truncation_order, 1)};
}

LaurentSeries LaurentSeries::from_polynomial(const Polynomial& p, int truncation_order, ExpansionPoint point) {
    return {point, 0, p.coefficients(), std::max(truncation_order, 0)};
}

LaurentSeries LaurentSeries::rational(const Polynomial& num, const Polynomial& den, cplx at, int truncation_order) {
    const auto pt = ExpansionPoint::finite(at);
    const int work = truncation_order + den.degree() + 2;
    const LaurentSeries n(pt, 0, num.taylor_shift(at).coefficients(), work);
    const LaurentSeries d(pt, 0, den.taylor_shift(at).coefficients(), work);
    return (n / d).truncated(truncation_order);
}

int LaurentSeries::valuation() const noexcept {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != cplx{}) return low_ + static_cast<int>(i);
    return trunc_;
}

cplx LaurentSeries::coefficient(int k) const {
    if (k >= trunc_)
        throw Error(ErrorKind::InsufficientTruncation,
                    "coefficient " + std::to_string(k) + " at or beyond truncation order " + std::to_string(trunc_));
    if (k < low_) return {};
    return c_[static_cast<std::size_t>(k - low_)];
}

LaurentSeries LaurentSeries::with_point(ExpansionPoint p) const {
    LaurentSeries r = *this;
    r.point_ = p;
    return r;
}

LaurentSeries LaurentSeries::truncated(int order) const {
    const int t = std::min(order, trunc_);
    const int lo = std::min(low_, t);
    std::vector<cplx> v(static_cast<std::size_t>(t - lo));
    for (int k = std::max(lo, low_); k < t; ++k) v[static_cast<std::size_t>(k - lo)] = coefficient(k);
    return {point_, lo, std::move(v), t};
}

LaurentSeries LaurentSeries::shifted(int k) const { return {point_, low_ + k, c_, trunc_ + k}; }

LaurentSeries LaurentSeries::principal_part() const {
    if (trunc_ < 0) throw Error(ErrorKind::InsufficientTruncation, "principal part not fully certified");
    std::vector<cplx> v;
    for (int k = low_; k < 0; ++k) v.push_back(coefficient(k));
    const int lo = std::min(low_, 0);
    return {point_, lo, std::move(v), trunc_};
}

cplx LaurentSeries::evaluate(cplx s) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
    return acc * std::pow(s, low_);
}

LaurentSeries LaurentSeries::operator-() const { return cplx{-1.0} * *this; }

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_point(a, b);
    const int lo = std::min(a.low_, b.low_);
    const int t = std::min(a.trunc_, b.trunc_);
    if (t <= lo) return {a.point_, t, {}, t};
    std::vector<cplx> v(static_cast<std::size_t>(t - lo));
    for (int k = lo; k < t; ++k) {
        cplx s{};
        if (k >= a.low_) s += a.c_[static_cast<std::size_t>(k - a.low_)];
        if (k >= b.low_) s += b.c_[static_cast<std::size_t>(k - b.low_)];
        v[static_cast<std::size_t>(k - lo)] = s;
    }
    return {a.point_, lo, std::move(v), t};
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(cplx s, const LaurentSeries& a) {
    LaurentSeries r = a;
    for (cplx& c : r.c_) c *= s;
    return r;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_point(a, b);
    const int va = a.valuation();
    const int vb = b.valuation();
    const int t = std::min(a.trunc_ + vb, b.trunc_ + va);
    const int lo = std::min(va + vb, t);
    std::vector<cplx> v(static_cast<std::size_t>(t - lo));
    for (int i = va; i < a.trunc_; ++i) {
        const cplx ai = a.c_[static_cast<std::size_t>(i - a.low_)];
        if (ai == cplx{}) continue;
        for (int j = vb; j < b.trunc_ && i + j < t; ++j)
            v[static_cast<std::size_t>(i + j - lo)] += ai * b.c_[static_cast<std::size_t>(j - b.low_)];
    }
    return {a.point_, lo, std::move(v), t};
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * inverse(b); }

LaurentSeries differentiate(const LaurentSeries& a) {
    const int lo = a.lowest_order() - 1;
    const int t = a.truncation_order() - 1;
    std::vector<cplx> v(static_cast<std::size_t>(t - lo));
    for (int k = a.lowest_order(); k < a.truncation_order(); ++k)
        v[static_cast<std::size_t>(k - 1 - lo)] = static_cast<double>(k) * a.coefficient(k);
    return {a.point(), lo, std::move(v), t};
}

LaurentSeries inverse(const LaurentSeries& a) { return power(a, -1, 1); }

LaurentSeries power(const LaurentSeries& a, int num, int den) {
    if (den <= 0) throw Error(ErrorKind::ValuationError, "exponent denominator must be positive");
    const int v = a.valuation();
    if (v >= a.truncation_order()) throw Error(ErrorKind::ValuationError, "power of a series with no certified terms");
    if ((static_cast<long>(v) * num) % den != 0)
        throw Error(ErrorKind::ValuationError, "valuation times exponent is not an integer");
    const int lo = static_cast<int>(static_cast<long>(v) * num / den);
    const int rel = a.truncation_order() - v;  // certified relative order
    const double e = static_cast<double>(num) / den;
    const cplx a0 = a.coefficient(v);
    std::vector<cplx> b(static_cast<std::size_t>(rel));
    b[0] = den == 1 ? integer_power(a0, num) : std::pow(a0, e);
    // J. C. P. Miller recurrence for (sum a_{v+j} s^j)^e.
    for (int k = 1; k < rel; ++k) {
        cplx acc{};
        for (int j = 1; j <= k; ++j) acc += (e * j - k + j) * a.coefficient(v + j) * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * a0);
    }
    return {a.point(), lo, std::move(b), lo + rel};
}

LaurentSeries compose(const LaurentSeries& a, const LaurentSeries& b) {
    const int vb = b.valuation();
    if (vb < 1 || vb >= b.truncation_order())
        throw Error(ErrorKind::ValuationError, "inner series of a composition must have positive valuation");
    const int tail = a.truncation_order() >= 0 ? a.truncation_order() * vb : a.truncation_order();
    int t = tail;
    const int lo = std::min(a.lowest_order() * vb, t);
    // Terms are accumulated on a fixed window; each power narrows t as needed.
    std::vector<LaurentSeries> terms;
    for (int k = a.lowest_order(); k < a.truncation_order(); ++k) {
        const cplx ak = a.coefficient(k);
        if (ak == cplx{}) continue;
        LaurentSeries bk = k == 0 ? LaurentSeries::constant(1.0, t, b.point()) : power(b, k);
        t = std::min(t, bk.truncation_order());
        terms.push_back(ak * bk);
    }
    LaurentSeries r(b.point(), lo, {}, std::max(t, lo));
    for (const auto& s : terms) r = r + s.truncated(t);
    return r.truncated(t);
}

LaurentSeries revert(const LaurentSeries& a) {
    if (a.valuation() != 1) throw Error(ErrorKind::ValuationError, "reversion needs valuation exactly 1");
    const int t = a.truncation_order();
    const LaurentSeries unit = a.shifted(-1);  // a(s)/s
    std::vector<cplx> d(static_cast<std::size_t>(std::max(t - 1, 0)));
    // Lagrange inversion: [s^j] a^{-1} = (1/j) [s^{j-1}] (s / a(s))^j.
    for (int j = 1; j < t; ++j) {
        const LaurentSeries pj = power(unit, -j);
        d[static_cast<std::size_t>(j - 1)] = pj.coefficient(j - 1) / static_cast<double>(j);
    }
    return {ExpansionPoint::origin(), 1, std::move(d), std::max(t, 1)};
}

LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op) {
    switch (op) {
        case SeriesOp::add: return a + b;
        case SeriesOp::mul: return a * b;
        case SeriesOp::compose: return compose(a, b);
        case SeriesOp::revert: return revert(a);
        case SeriesOp::differentiate: return differentiate(a);
    }
    return a;
}

cplx residue_at(const LaurentSeries& form_series) {
    if (form_series.truncation_order() <= -1)
        throw Error(ErrorKind::InsufficientTruncation, "order -1 coefficient not certified");
    return form_series.coefficient(-1);
}

LaurentSeries puiseux_inverse_root(const Polynomial& f, int order) {
    const int n = f.degree();
    if (f.is_zero() || n < 1 || !f.is_monic()) throw Error(ErrorKind::NotMonic, "f must be monic of degree >= 1");
    if (order < n) throw Error(ErrorKind::OrderTooSmall, "order must be at least deg f");
    // f(t) / t^n as a polynomial in w = 1/t.
    std::vector<cplx> u(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) u[static_cast<std::size_t>(n - j)] = f.coefficient(j);
    const LaurentSeries unit(ExpansionPoint::infinity(), 0, std::move(u), order - 1);
    return power(unit, -1, n).shifted(1);
}

}  // namespace frob::numeric
