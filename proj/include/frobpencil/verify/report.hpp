#pragma once

#include <string>
#include <vector>

namespace frob::verify {

/// One named residual compared against a threshold. Most checks pass when the
/// residual is at most the threshold; `lower_bound` checks pass when it is at
/// least the threshold (nondegeneracy, detector sanity).
struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool lower_bound = false;
    bool pass = false;
    std::string detail;
};

CheckRecord check_below(std::string name, double residual, double threshold, std::string detail = {});
CheckRecord check_above(std::string name, double residual, double threshold, std::string detail = {});
/// A check that could not be evaluated; recorded as failed with the reason.
CheckRecord check_error(std::string name, double threshold, std::string reason);

struct SuiteReport {
    std::vector<CheckRecord> checks;

    void add(CheckRecord c) { checks.push_back(std::move(c)); }
    void append(const SuiteReport& other);
    bool all_pass() const;
    const CheckRecord* find(const std::string& name) const;
};

}  // namespace frob::verify
