#include "frobpencil/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "frobpencil/error.hpp"

namespace frob::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& key) {
    std::string t = trim(text);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        fail("bad number for " + key + ": '" + text + "'");
    return v;
}

long parse_int(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) fail("bad integer for " + key + ": '" + text + "'");
    return v;
}

}  // namespace

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail("empty complex number");
    if (s.back() != 'i') return {parse_double(s, "complex"), 0.0};
    s.pop_back();
    // the last sign that is neither leading nor part of an exponent splits re and im
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    auto imag = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double(t[0] == '+' ? t.substr(1) : t, "complex");
    };
    if (split == std::string::npos) return {0.0, imag(s)};
    return {parse_double(s.substr(0, split), "complex"), imag(s.substr(split))};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    std::string item;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!trim(item).empty()) out.push_back(parse_complex(item));
            item.clear();
        } else {
            item += ch;
        }
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(path + ":" + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::compute: return "compute";
        case Mode::verify: return "verify";
        case Mode::sweep: return "sweep";
        case Mode::oracle: return "oracle";
    }
    return "compute";
}

Mode parse_mode(const std::string& text) {
    for (Mode m : {Mode::compute, Mode::verify, Mode::sweep, Mode::oracle})
        if (to_string(m) == text) return m;
    fail("unknown mode '" + text + "'");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "mode") cfg.mode = parse_mode(trim(value));
    else if (key == "genus") cfg.genus = static_cast<int>(parse_int(value, key));
    else if (key == "n") cfg.n = static_cast<int>(parse_int(value, key));
    else if (key == "k") cfg.k = static_cast<int>(parse_int(value, key));
    else if (key == "coeffs") cfg.coeffs = parse_complex_list(value);
    else if (key == "tau") cfg.tau = parse_complex(value);
    else if (key == "Pa") cfg.period_a = parse_complex(value);
    else if (key == "Pb") cfg.period_b = parse_complex(value);
    else if (key == "grid") {
        const std::string v = trim(value);
        const auto x = v.find('x');
        cfg.grid_rows = static_cast<int>(parse_int(v.substr(0, x), key));
        cfg.grid_cols = x == std::string::npos ? cfg.grid_rows : static_cast<int>(parse_int(v.substr(x + 1), key));
    } else if (key == "sweep") cfg.sweep = trim(value);
    else if (key == "sweep_radius") cfg.sweep_radius = parse_double(value, key);
    else if (key == "samples") cfg.samples = static_cast<int>(parse_int(value, key));
    else if (key == "seed") {
        const long s = parse_int(value, key);
        if (s < 0) fail("seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "tol") cfg.tol = parse_double(value, key);
    else if (key == "out") cfg.out = trim(value);
    else fail("unknown key '" + key + "'");
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings) {
    for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
}

void validate(const RunConfig& cfg) {
    if (cfg.genus != 0 && cfg.genus != 1) fail("genus must be 0 or 1");
    if (cfg.genus == 0 && cfg.n < 2) fail("n must be at least 2 at genus 0");
    if (cfg.genus == 1 && cfg.n < 2) fail("n must be at least 2 at genus 1");
    if (cfg.n > 12) fail("n above 12 is not supported");
    if (cfg.k < 2 || cfg.k > cfg.n) fail("k must lie in 2..n");
    if (!cfg.coeffs.empty()) {
        const std::size_t want = static_cast<std::size_t>(cfg.n - 1);
        const bool ok = cfg.genus == 0 ? cfg.coeffs.size() == want
                                       : (cfg.coeffs.size() == want || cfg.coeffs.size() == want + 1);
        if (!ok) fail("coeffs has " + std::to_string(cfg.coeffs.size()) + " entries, expected " + std::to_string(want) +
                      (cfg.genus == 1 ? " (or one more for c0)" : ""));
    }
    if (cfg.genus == 1 && !(cfg.tau.imag() > 0.0)) fail("tau must lie in the upper half-plane");
    if (cfg.grid_rows < 1 || cfg.grid_cols < 1) fail("grid must be nonempty");
    if (cfg.sweep != "periods" && cfg.sweep != "tau") fail("sweep must be 'periods' or 'tau'");
    if (cfg.mode == Mode::sweep && cfg.genus != 1) fail("sweep mode needs genus 1");
    if (!(cfg.sweep_radius > 0.0)) fail("sweep_radius must be positive");
    if (cfg.samples < 1) fail("samples must be positive");
    if (cfg.tol && !(*cfg.tol > 0.0)) fail("tol must be positive");
}

}  // namespace frob::cli
