#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobpencil/numeric/types.hpp"

namespace frob::cli {

enum class Mode { compute, verify, sweep, oracle };

struct RunConfig {
    Mode mode = Mode::compute;
    int genus = 0;
    int n = 4;
    int k = 2;
    /// Genus 0: a_0 .. a_{n-2}. Genus 1: gamma_1 .. gamma_{n-1}, optionally
    /// followed by c0. Empty: drawn from the seed.
    std::vector<cplx> coeffs;
    cplx tau{0.3, 1.1};
    cplx period_a{};
    cplx period_b{};
    /// Sweep grid, "N" or "NxM".
    int grid_rows = 5;
    int grid_cols = 5;
    /// Sweep variable: "periods" (P_a, P_b) or "tau".
    std::string sweep = "periods";
    double sweep_radius = 1.0;
    /// Random instances in oracle mode.
    int samples = 50;
    std::uint64_t seed = 0;
    /// Overrides every upper-bound threshold of the axiom suite.
    std::optional<double> tol;
    std::string out;
};

/// Parses "re+imi" style complex numbers: "1", "-3", "i", "-0.5i", "2+1i",
/// "0.3+1.1i", "1e-3-2e-2i". Throws ConfigError.
cplx parse_complex(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);

/// key = value lines, '#' starts a comment. Throws ConfigError on malformed
/// lines; unknown keys are rejected by apply_settings.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies settings in order; later keys win. Throws ConfigError.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Range and consistency checks; throws ConfigError.
void validate(const RunConfig& cfg);

std::string to_string(Mode m);
Mode parse_mode(const std::string& text);

}  // namespace frob::cli
