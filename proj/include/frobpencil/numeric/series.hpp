#pragma once

#include <vector>

#include "frobpencil/numeric/polynomial.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::numeric {

/// Where a local expansion lives. At a finite point c the local variable is
/// (t - c); at infinity it is w = 1/t.
struct ExpansionPoint {
    bool at_infinity = false;
    cplx center{};

    static ExpansionPoint finite(cplx c) { return {false, c}; }
    static ExpansionPoint infinity() { return {true, {}}; }
    /// Series in an abstract local coordinate that is not tied to a curve point.
    static ExpansionPoint origin() { return {false, {}}; }

    friend bool operator==(const ExpansionPoint&, const ExpansionPoint&) = default;
};

/// Truncated Laurent series  sum_{k=low}^{trunc-1} c_k s^k + O(s^trunc)  in
/// the local variable s of its expansion point. Every operation narrows the
/// certified truncation order pessimistically; reading a coefficient at or
/// above the truncation order throws InsufficientTruncation.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(ExpansionPoint point, int lowest_order, std::vector<cplx> coeffs, int truncation_order);

    static LaurentSeries constant(cplx c, int truncation_order, ExpansionPoint point = ExpansionPoint::origin());
    /// The local variable itself, s.
    static LaurentSeries variable(int truncation_order, ExpansionPoint point = ExpansionPoint::origin());
    static LaurentSeries from_polynomial(const Polynomial& p, int truncation_order,
                                         ExpansionPoint point = ExpansionPoint::origin());
    /// Taylor expansion of num/den at a finite point, truncated at the given order.
    static LaurentSeries rational(const Polynomial& num, const Polynomial& den, cplx at, int truncation_order);

    const ExpansionPoint& point() const noexcept { return point_; }
    int lowest_order() const noexcept { return low_; }
    int truncation_order() const noexcept { return trunc_; }
    /// Order of the first nonzero stored coefficient; truncation order if none.
    int valuation() const noexcept;
    cplx coefficient(int k) const;
    const std::vector<cplx>& coefficients() const noexcept { return c_; }

    LaurentSeries with_point(ExpansionPoint p) const;
    /// Narrow the truncation order (never widens).
    LaurentSeries truncated(int order) const;
    /// Multiply by s^k.
    LaurentSeries shifted(int k) const;
    /// Only the terms of order < 0.
    LaurentSeries principal_part() const;

    cplx evaluate(cplx s) const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(cplx s, const LaurentSeries& a);
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

private:
    ExpansionPoint point_{};
    int low_ = 0;
    int trunc_ = 0;
    std::vector<cplx> c_;  // size trunc_ - low_
};

enum class SeriesOp { add, mul, compose, revert, differentiate };

LaurentSeries differentiate(const LaurentSeries& a);
LaurentSeries inverse(const LaurentSeries& a);
/// a^e for a rational exponent num/den. The leading coefficient uses the
/// principal branch of c^e; the valuation times e must be an integer.
LaurentSeries power(const LaurentSeries& a, int num, int den = 1);
/// a(b(s)); b must have positive valuation.
LaurentSeries compose(const LaurentSeries& a, const LaurentSeries& b);
/// Compositional inverse of a series with valuation exactly 1.
LaurentSeries revert(const LaurentSeries& a);

/// Dispatcher over the binary/unary series operations. For unary operations
/// the second argument is ignored.
LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op);

/// Coefficient of order -1 of a 1-form c(s) ds written in its local variable.
cplx residue_at(const LaurentSeries& form_series);

/// x(t) = f(t)^(-1/n) at t = infinity as a series in w = 1/t (principal
/// branch, leading term exactly w). f must be monic of degree n >= 1 and the
/// requested order at least n.
LaurentSeries puiseux_inverse_root(const Polynomial& f, int order);

}  // namespace frob::numeric
