#pragma once

#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/polynomial.hpp"
#include "frobpencil/numeric/series.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::verify {

/// A Cech 1-cocycle on P^1 covered by the affine line and a disk at infinity
/// (local coordinate w = 1/t). Forms are stored by their densities: dt on the
/// affine part, dw on the disk. The relation is
///   alpha_outer - alpha_disk = ds + (omega / z) s   (z != 0)
///   alpha_outer - alpha_disk = omega s              (z == 0, multiplicative model).
struct CechCocycle {
    cplx z{};
    numeric::Polynomial alpha_outer;
    numeric::LaurentSeries alpha_disk;
    numeric::LaurentSeries s_overlap;
};

/// Working truncation order in w for a degree-n model.
int cech_truncation(const model::AbelianIntegral& m);

/// a(t) dt rewritten as a dw-density at infinity.
numeric::LaurentSeries form_at_infinity(const numeric::Polynomial& a, int truncation_order);
/// a(1/w) as a function at infinity.
numeric::LaurentSeries function_at_infinity(const numeric::Polynomial& a, int truncation_order);

/// Largest certified coefficient of the relation defect, relative to the
/// largest coefficient of alpha_outer at infinity (at least 1).
double cocycle_defect(const model::AbelianIntegral& m, const CechCocycle& c);

/// The z = 0 cocycle (a dt, omega g_disk, s) with s solved from the relation.
/// g_disk must be holomorphic at w = 0.
CechCocycle cocycle_from_form(const model::AbelianIntegral& m, const numeric::Polynomial& a,
                              const numeric::LaurentSeries& g_disk);
CechCocycle cocycle_from_form(const model::AbelianIntegral& m, const numeric::Polynomial& a);
/// The coboundary (omega g1, omega g2, g1 - g2) of the z = 0 model.
CechCocycle coboundary(const model::AbelianIntegral& m, const numeric::Polynomial& g1,
                       const numeric::LaurentSeries& g2);
CechCocycle operator+(const CechCocycle& a, const CechCocycle& b);

struct CechReduction {
    /// (r dt, 0, r dt / omega) with deg r <= n - 2.
    CechCocycle representative;
    numeric::Polynomial remainder;
    /// Coefficients of r, i.e. the class in the chart basis d/da_j <-> t^j.
    ComplexVector chart;
    /// r(q_s) at the critical points.
    ComplexVector fiber;
    double relation_defect = 0.0;
    /// For products: the solved third slot against tau alpha_1 + h_2 s.
    double third_slot_defect = 0.0;
};

/// Reduces a z = 0 class: the disk form is absorbed by the coboundary of
/// alpha_disk / omega, then alpha_outer is taken modulo omega C[t].
/// Genus 0 only; throws InvalidModel otherwise.
CechReduction reduce_class(const model::AbelianIntegral& m, const CechCocycle& c, const model::CriticalData& critical);

/// Multiplies the class of c by the tangent direction xi (chart components),
/// represented by the cocycle (h1, h2, tau) = (d_xi f, 0, d_xi f / omega); the
/// product's third slot is solved from the relation and compared with
/// tau alpha_outer + h2 s. Throws NonSemisimplePoint through the critical data.
CechReduction cech_multiplication_oracle(const model::AbelianIntegral& m, const ComplexVector& xi,
                                         const CechCocycle& c, const model::CriticalData& critical);

}  // namespace frob::verify
