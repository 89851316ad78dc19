#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobpencil/cli/config.hpp"
#include "frobpencil/cli/report.hpp"
#include "frobpencil/cli/run.hpp"
#include "frobpencil/error.hpp"

namespace {

struct Overrides {
    std::string config;
    std::map<std::string, std::string> values;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "flat key = value config file");
    const std::vector<std::pair<std::string, std::string>> keys{
        {"genus", "0 or 1"},
        {"n", "degree of the superpotential"},
        {"k", "primary form index, 2..n"},
        {"coeffs", "comma-separated complex coefficients"},
        {"tau", "lattice parameter (genus 1)"},
        {"Pa", "a-period of the differential (genus 1)"},
        {"Pb", "b-period of the differential (genus 1)"},
        {"grid", "sweep grid, N or NxM"},
        {"sweep", "sweep parameter: periods or tau"},
        {"sweep_radius", "half-width of the sweep grid"},
        {"samples", "oracle instance count"},
        {"seed", "random seed"},
        {"tol", "override for the upper-bound thresholds"},
        {"out", "report path (stdout when omitted)"},
    };
    for (const auto& [key, help] : keys)
        sub->add_option_function<std::string>("--" + key, [&o, key](const std::string& v) { o.values[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius structures on Hurwitz-type spaces of abelian integrals"};
    app.require_subcommand(1);
    Overrides o;
    for (const char* mode : {"compute", "verify", "sweep", "oracle"}) add_common(app.add_subcommand(mode), o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    frob::cli::RunConfig cfg;
    try {
        if (!o.config.empty()) frob::cli::apply_settings(cfg, frob::cli::read_config_file(o.config));
        cfg.mode = frob::cli::parse_mode(app.get_subcommands().front()->get_name());
        frob::cli::apply_settings(cfg, o.values);
        frob::cli::validate(cfg);
    } catch (const frob::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    frob::cli::RunResult result;
    try {
        result = frob::cli::run(cfg);
    } catch (const frob::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    const std::string text = frob::cli::canonical_json(result.report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            std::cerr << "config error: cannot write " << cfg.out << '\n';
            return 2;
        }
        f << text;
        std::cout << result.summary << '\n';
    }
    return result.exit_code;
}
