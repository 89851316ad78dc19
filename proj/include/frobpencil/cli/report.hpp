#pragma once

#include <string>

#include <json.hpp>

#include "frobpencil/numeric/types.hpp"
#include "frobpencil/verify/report.hpp"

namespace frob::cli {

inline constexpr int kSchemaVersion = 1;

/// %.17g; non-finite values become the strings "nan", "inf", "-inf".
std::string format_double(double x);
/// "re+imi" with both parts in %.17g, e.g. "0.29999999999999999+1.1000000000000001i".
std::string format_complex(cplx z);

nlohmann::json complex_json(cplx z);
nlohmann::json complex_json(const ComplexVector& v);
nlohmann::json complex_json(const ComplexMatrix& m);
nlohmann::json complex_json(const std::vector<cplx>& v);
nlohmann::json check_json(const verify::CheckRecord& c);
nlohmann::json suite_json(const verify::SuiteReport& r);

/// Sorted keys, two-space indentation, doubles in %.17g, trailing newline.
/// Equal documents give identical bytes.
std::string canonical_json(const nlohmann::json& doc);

}  // namespace frob::cli
