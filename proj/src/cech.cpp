#include "frobpencil/verify/cech.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/error.hpp"

namespace frob::verify {

using model::AbelianIntegral;
using numeric::ExpansionPoint;
using numeric::LaurentSeries;
using numeric::Polynomial;

namespace {

LaurentSeries omega_at_infinity(const AbelianIntegral& m, int t) {
    return form_at_infinity(m.polynomial().derivative(), t);
}

double max_coefficient(const LaurentSeries& s) {
    double worst = 0.0;
    for (int k = s.lowest_order(); k < s.truncation_order(); ++k) worst = std::max(worst, std::abs(s.coefficient(k)));
    return worst;
}

void require_genus0(const AbelianIntegral& m) {
    if (m.genus() != 0) throw Error(ErrorKind::InvalidModel, "the Cech oracle works on genus-0 models");
}

}  // namespace

int cech_truncation(const AbelianIntegral& m) { return 3 * m.n() + 8; }

LaurentSeries function_at_infinity(const Polynomial& a, int truncation_order) {
    const int deg = a.degree();
    std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
    for (int j = 0; j <= deg; ++j) c[static_cast<std::size_t>(deg - j)] = a.coefficient(j);
    return {ExpansionPoint::infinity(), -deg, std::move(c), std::max(truncation_order, -deg)};
}

LaurentSeries form_at_infinity(const Polynomial& a, int truncation_order) {
    // dt = -w^{-2} dw
    return cplx{-1.0} * function_at_infinity(a, truncation_order + 2).shifted(-2);
}

double cocycle_defect(const AbelianIntegral& m, const CechCocycle& c) {
    require_genus0(m);
    const int t = cech_truncation(m);
    const LaurentSeries a1 = form_at_infinity(c.alpha_outer, t);
    const LaurentSeries w = omega_at_infinity(m, t);
    const LaurentSeries rhs =
        c.z == cplx{} ? w * c.s_overlap : numeric::differentiate(c.s_overlap) + (1.0 / c.z) * (w * c.s_overlap);
    const LaurentSeries defect = a1 - c.alpha_disk - rhs;
    return max_coefficient(defect) / std::max(1.0, max_coefficient(a1));
}

CechCocycle cocycle_from_form(const AbelianIntegral& m, const Polynomial& a, const LaurentSeries& g_disk) {
    require_genus0(m);
    if (g_disk.valuation() < 0) throw Error(ErrorKind::InvalidModel, "disk function has a pole at infinity");
    const int t = cech_truncation(m);
    const LaurentSeries w = omega_at_infinity(m, t);
    CechCocycle c;
    c.alpha_outer = a;
    c.alpha_disk = (w * g_disk).truncated(t);
    c.s_overlap = ((form_at_infinity(a, t) - c.alpha_disk) / w).truncated(t);
    return c;
}

CechCocycle cocycle_from_form(const AbelianIntegral& m, const Polynomial& a) {
    return cocycle_from_form(m, a, LaurentSeries::constant(0.0, cech_truncation(m) + m.n() + 1,
                                                           ExpansionPoint::infinity()));
}

CechCocycle coboundary(const AbelianIntegral& m, const Polynomial& g1, const LaurentSeries& g2) {
    require_genus0(m);
    const int t = cech_truncation(m);
    CechCocycle c;
    c.alpha_outer = m.polynomial().derivative() * g1;
    c.alpha_disk = (omega_at_infinity(m, t) * g2).truncated(t);
    c.s_overlap = (function_at_infinity(g1, t) - g2).truncated(t);
    return c;
}

CechCocycle operator+(const CechCocycle& a, const CechCocycle& b) {
    if (a.z != b.z) throw Error(ErrorKind::InvalidModel, "cocycles for different pencil parameters");
    return {a.z, a.alpha_outer + b.alpha_outer, a.alpha_disk + b.alpha_disk, a.s_overlap + b.s_overlap};
}

CechReduction reduce_class(const AbelianIntegral& m, const CechCocycle& c, const model::CriticalData& critical) {
    require_genus0(m);
    if (c.z != cplx{}) throw Error(ErrorKind::InvalidModel, "reduction is defined for the z = 0 model");
    const int t = cech_truncation(m);
    const int n = m.n();
    CechReduction r;
    r.relation_defect = cocycle_defect(m, c);
    // the disk part is omega times a function holomorphic at w = 0
    const LaurentSeries g2 = c.alpha_disk / omega_at_infinity(m, t);
    if (g2.valuation() < 0) throw Error(ErrorKind::InvalidModel, "disk form has a pole of order above n");
    r.remainder = numeric::divmod(c.alpha_outer, m.polynomial().derivative()).remainder;
    r.representative = cocycle_from_form(m, r.remainder);
    r.chart = ComplexVector::Zero(n - 1);
    for (int j = 0; j <= std::min(r.remainder.degree(), n - 2); ++j) r.chart(j) = r.remainder.coefficient(j);
    r.fiber = ComplexVector(static_cast<Eigen::Index>(critical.size()));
    for (std::size_t s = 0; s < critical.size(); ++s)
        r.fiber(static_cast<Eigen::Index>(s)) = r.remainder(critical.points[s]);
    return r;
}

CechReduction cech_multiplication_oracle(const AbelianIntegral& m, const ComplexVector& xi, const CechCocycle& c,
                                         const model::CriticalData& critical) {
    require_genus0(m);
    const int t = cech_truncation(m);
    std::vector<cplx> hc(xi.data(), xi.data() + xi.size());
    const Polynomial h1(hc);
    const cplx h2 = h1.coefficient(0);
    const LaurentSeries w = omega_at_infinity(m, t);
    const LaurentSeries tau = (function_at_infinity(h1, t) - LaurentSeries::constant(h2, t, ExpansionPoint::infinity())) / w;

    CechCocycle p;
    p.alpha_outer = h1 * c.alpha_outer;
    p.alpha_disk = h2 * c.alpha_disk;
    p.s_overlap = ((form_at_infinity(p.alpha_outer, t) - p.alpha_disk) / w).truncated(t);
    const LaurentSeries formula = tau * form_at_infinity(c.alpha_outer, t) + h2 * c.s_overlap;
    CechReduction r = reduce_class(m, p, critical);
    const LaurentSeries diff = p.s_overlap - formula.truncated(p.s_overlap.truncation_order());
    r.third_slot_defect = max_coefficient(diff) / std::max(1.0, max_coefficient(p.s_overlap));
    return r;
}

}  // namespace frob::verify
