#pragma once

#include <vector>

#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/series.hpp"
#include "frobpencil/numeric/types.hpp"

namespace frob::engine {

/// rho_k: the form with polar part x^{-k} dx at the marked pole (x = f^{-1/n},
/// principal branch), no other poles and zero a-period.
struct PrimitiveSection {
    int k = 2;
    int genus = 0;
    /// Genus 0: rho = density(t) dt.
    numeric::Polynomial density;
    /// Genus 0: antiderivative of density with zero constant term.
    numeric::Polynomial antiderivative;
    /// Genus 1: rho = (lambda0 + mu wp + sum_j nu_j wp^(j)) du, nu_1 .. nu_{k-2}.
    cplx lambda0;
    cplx mu;
    std::vector<cplx> nu;
    elliptic::WpCombination combination;
    /// rho / (dt or du) at each critical point.
    std::vector<cplx> values_at_critical;
    /// Numerically integrated a-period (genus 1); zero at genus 0.
    cplx a_period;
    bool primitive = true;

    cplx operator()(const model::AbelianIntegral& m, cplx point) const;
    /// The primitive p of rho used for expansions: genus 0 the antiderivative,
    /// genus 1 lambda0 u - mu zeta(u) + sum_j nu_j wp^(j-1)(u).
    cplx primitive_at(const model::AbelianIntegral& m, cplx point) const;
};

/// Expansion of the chart variable s (w = 1/t, or u) in x = f^{-1/n}.
numeric::LaurentSeries chart_variable_in_x(const model::AbelianIntegral& m, int order);
/// Expansion p(x) of the primitive of rho at the marked pole.
numeric::LaurentSeries primitive_in_x(const model::AbelianIntegral& m, const PrimitiveSection& rho, int order);
/// Coefficient series r(x) of rho = r(x) dx at the marked pole.
numeric::LaurentSeries section_in_x(const model::AbelianIntegral& m, const PrimitiveSection& rho, int order);

/// Throws KOutOfRange unless 2 <= k <= n. Computes critical data when none is given.
PrimitiveSection primitive_section(const model::AbelianIntegral& m, int k,
                                   const model::CriticalData* critical = nullptr, double degeneracy = 1e-8);

struct EngineOptions {
    model::CriticalOptions critical;
    /// |rho(q_s)| below this times the largest value flags a non-primitive section.
    double degeneracy = 1e-8;
    /// Condition number above which the chart-to-fiber map counts as singular.
    double max_condition = 1e12;
    /// Step of the Richardson difference for the tau column at genus 1.
    double tau_step = 1e-3;
};

/// The fiber algebra at a point: critical data, rho_k and the linear map from
/// chart directions to their idempotent-frame components h_s = (d_xi f)(q_s).
struct FiberAlgebra {
    model::AbelianIntegral model;
    model::CriticalData critical;
    PrimitiveSection rho;
    ComplexMatrix chart_to_fiber;
    double condition = 0.0;
    double max_condition = 1e12;

    int dimension() const { return static_cast<int>(critical.size()); }
};

FiberAlgebra fiber_algebra(const model::AbelianIntegral& m, int k, const EngineOptions& opts = {});

/// (d f / d chart_i) at the given points, holding the chart variable fixed.
ComplexMatrix chart_derivatives_of_f(const model::AbelianIntegral& m, const std::vector<cplx>& points,
                                     double tau_step = 1e-3);

struct TangentVector {
    ComplexVector chart;
    ComplexVector fiber;
};

TangentVector tangent_to_fiber(const FiberAlgebra& fa, const ComplexVector& chart_dir);
/// Recovers the chart representation of a fiber vector; throws SingularFrame.
TangentVector from_fiber(const FiberAlgebra& fa, const ComplexVector& fiber);
TangentVector multiply(const FiberAlgebra& fa, const TangentVector& x, const TangentVector& y);
TangentVector unit_field(const FiberAlgebra& fa);
/// eta(X, Y) = sum_s X_s Y_s rho(q_s)^2 / omega'(q_s); throws NotPrimitive.
cplx metric(const FiberAlgebra& fa, const TangentVector& x, const TangentVector& y);

/// eta in the idempotent frame: rho(q_s)^2 / omega'(q_s).
ComplexVector idempotent_metric(const FiberAlgebra& fa);
/// eta_ij in the chart basis.
ComplexMatrix metric_matrix(const FiberAlgebra& fa);
/// c[k](i, j): chart components of d_i o d_j along d_k.
std::vector<ComplexMatrix> chart_structure_constants(const FiberAlgebra& fa);

}  // namespace frob::engine
