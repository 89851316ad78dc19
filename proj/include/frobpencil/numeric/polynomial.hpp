#pragma once

#include <span>
#include <vector>

#include "frobpencil/numeric/types.hpp"

namespace frob::numeric {

/// Dense complex polynomial, coefficients in ascending degree. Trailing zero
/// coefficients are trimmed on construction so degree() is always the index
/// of the last nonzero coefficient (the zero polynomial has degree 0 and no
/// coefficients).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);

    static Polynomial monomial(int degree, cplx c = 1.0);
    static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0);

    int degree() const noexcept { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    cplx coefficient(int k) const noexcept;
    cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == cplx{1.0}; }

    cplx operator()(cplx t) const noexcept;
    Polynomial derivative() const;
    /// p(t + shift) expanded around the new origin.
    Polynomial taylor_shift(cplx shift) const;

    /// Largest coefficient modulus; zero for the zero polynomial.
    double coefficient_scale() const noexcept;
    /// Fujiwara-type bound on root modulus, never below 1.
    double root_scale() const noexcept;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(cplx s, const Polynomial& a);

private:
    std::vector<cplx> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

DivMod divmod(const Polynomial& num, const Polynomial& den);

}  // namespace frob::numeric
