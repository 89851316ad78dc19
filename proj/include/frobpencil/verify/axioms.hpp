#pragma once

#include "frobpencil/flat/flat_structure.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/verify/report.hpp"

namespace frob::verify {

struct SuiteThresholds {
    double algebra = 1e-9;
    double flatness = 1e-8;
    double potentiality = 1e-9;
    double wdvv = 1e-9;
    double k_independence = 1e-8;
    /// Lower bounds.
    double nondegeneracy = 1e-12;
    double metric_k_dependence = 1e-6;
    /// eta on the S direction (genus 1).
    double isotropy = 1e-6;
};

SuiteThresholds default_thresholds(int genus);

struct AxiomOptions {
    flat::FlatOptions flat;
    /// Second section for the k-independence check; 0 picks 3 when k = 2 and
    /// 2 otherwise. Skipped when n < 3.
    int k_alt = 0;
    /// Genus 1: radius of the grid used for the frame closure witness; 0 skips it.
    double region_radius = 0.0;
    bool use_default_thresholds = true;
    SuiteThresholds thresholds;
};

/// Runs the Frobenius axiom battery at m with rho_k. Failures, including
/// exceptions from the pipeline, become failed records; nothing is thrown.
/// Residuals are relative to the scale of the quantities compared.
SuiteReport axiom_suite(const model::AbelianIntegral& m, int k, const AxiomOptions& opts = {});

/// Chart-level structure constants C[l](i, j) obtained by raising the last
/// index of the flat-section tensor c_ijl with eta_k; independent of k.
std::vector<ComplexMatrix> raised_structure_constants(const model::AbelianIntegral& m, int k,
                                                      const engine::EngineOptions& opts = {});

}  // namespace frob::verify
