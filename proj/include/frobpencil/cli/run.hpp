#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "frobpencil/cli/config.hpp"
#include "frobpencil/model/abelian_integral.hpp"
#include "frobpencil/numeric/random.hpp"

namespace frob::cli {

struct RunResult {
    nlohmann::json report;
    /// 0 when every check passes, 1 otherwise.
    int exit_code = 0;
    std::string summary;
};

/// Executes the configured pipeline. Numerical failures become failed checks;
/// only ConfigError (from validation) escapes.
RunResult run(const RunConfig& cfg);

/// FROBPENCIL_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. The
/// first exception (by index) is rethrown after all tasks finish.
void parallel_for(int count, const std::function<void(int)>& body);

/// The model described by cfg; missing coefficients are drawn from rng.
model::AbelianIntegral make_model(const RunConfig& cfg, numeric::Rng& rng);

}  // namespace frob::cli
