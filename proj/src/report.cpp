#include "frobpencil/verify/report.hpp"

#include <algorithm>
#include <cmath>

namespace frob::verify {

CheckRecord check_below(std::string name, double residual, double threshold, std::string detail) {
    return {std::move(name), residual, threshold, false, std::isfinite(residual) && residual <= threshold,
            std::move(detail)};
}

CheckRecord check_above(std::string name, double residual, double threshold, std::string detail) {
    return {std::move(name), residual, threshold, true, std::isfinite(residual) && residual >= threshold,
            std::move(detail)};
}

CheckRecord check_error(std::string name, double threshold, std::string reason) {
    return {std::move(name), std::nan(""), threshold, false, false, std::move(reason)};
}

void SuiteReport::append(const SuiteReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* SuiteReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace frob::verify
