#include "frobpencil/cli/report.hpp"

#include <cmath>
#include <cstdio>

namespace frob::cli {

using nlohmann::json;

namespace {

void write(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            // nlohmann's default object type is an ordered std::map
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + json(it.key()).dump() + ": ";
                write(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                write(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            const std::string s = format_double(x);
            out += std::isfinite(x) ? s : json(s).dump();
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(cplx z) {
    const std::string im = format_double(z.imag());
    const bool sign = !im.empty() && (im[0] == '-' || im[0] == '+');
    return format_double(z.real()) + (sign ? "" : "+") + im + "i";
}

json complex_json(cplx z) { return format_complex(z); }

json complex_json(const ComplexVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(format_complex(v(i)));
    return a;
}

json complex_json(const ComplexMatrix& m) {
    json a = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(complex_json(ComplexVector(m.row(r).transpose())));
    return a;
}

json complex_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(format_complex(z));
    return a;
}

json check_json(const verify::CheckRecord& c) {
    json j;
    j["name"] = c.name;
    j["residual"] = c.residual;
    j["threshold"] = c.threshold;
    j["bound"] = c.lower_bound ? "lower" : "upper";
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

json suite_json(const verify::SuiteReport& r) {
    json a = json::array();
    for (const auto& c : r.checks) a.push_back(check_json(c));
    return a;
}

std::string canonical_json(const json& doc) {
    std::string out;
    write(doc, out, 0);
    out += "\n";
    return out;
}

}  // namespace frob::cli
