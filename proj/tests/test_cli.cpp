#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "frobpencil/cli/config.hpp"
#include "frobpencil/cli/report.hpp"
#include "frobpencil/cli/run.hpp"
#include "frobpencil/error.hpp"

using namespace frob;
using namespace frob::cli;

TEST_CASE("complex parsing") {
    CHECK(parse_complex("1") == cplx(1, 0));
    CHECK(parse_complex("2+i") == cplx(2, 1));
    CHECK(parse_complex("-0.5i") == cplx(0, -0.5));
    CHECK(parse_complex("0.3+1.1i") == cplx(0.3, 1.1));
    CHECK(parse_complex("1e-3-2E+2i") == cplx(1e-3, -200));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
    const auto v = parse_complex_list("1, 2-i ,0.5i");
    REQUIRE(v.size() == 3);
    CHECK(v[1] == cplx(2, -1));
}

TEST_CASE("settings and validation") {
    RunConfig cfg;
    apply_setting(cfg, "grid", "3x4");
    CHECK(cfg.grid_rows == 3);
    CHECK(cfg.grid_cols == 4);
    apply_setting(cfg, "grid", "2");
    CHECK(cfg.grid_cols == 2);
    CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), Error);
    CHECK_THROWS_AS(apply_setting(cfg, "n", "four"), Error);

    RunConfig bad;
    bad.k = 7;
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.genus = 1;
    bad.tau = {0.2, -1.0};
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.coeffs = {1.0};
    CHECK_THROWS_AS(validate(bad), Error);
    bad = {};
    bad.mode = Mode::sweep;
    CHECK_THROWS_AS(validate(bad), Error);

    try {
        validate(bad);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConfigError);
    }
}

TEST_CASE("config file") {
    const std::string path = "test_cli_config.txt";
    {
        std::ofstream f(path);
        f << "# run\n genus = 1 \nn=3\n\nPb = 2+i\n";
    }
    RunConfig cfg;
    apply_settings(cfg, read_config_file(path));
    CHECK(cfg.genus == 1);
    CHECK(cfg.n == 3);
    CHECK(cfg.period_b == cplx(2, 1));
    {
        std::ofstream f(path);
        f << "genus 1\n";
    }
    CHECK_THROWS_AS(read_config_file(path), Error);
    CHECK_THROWS_AS(read_config_file("missing_config.txt"), Error);
    std::remove(path.c_str());
}

TEST_CASE("canonical json") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_complex({1.5, -2}) == "1.5-2i");
    CHECK(format_complex({0, 0.25}) == "0+0.25i");
    nlohmann::json j;
    j["zeta"] = 1;
    j["alpha"] = {{"b", 0.5}, {"a", true}};
    j["mid"] = std::numeric_limits<double>::infinity();
    const std::string s = canonical_json(j);
    CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
    CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(s.find("\"inf\"") != std::string::npos);
    CHECK(s.find("0.5") != std::string::npos);
    CHECK(s.back() == '\n');
}

TEST_CASE("run reports") {
    RunConfig cfg;
    cfg.n = 3;
    cfg.coeffs = {{0.5, -0.2}, {0.3, 0.1}};
    const RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report["schema_version"] == kSchemaVersion);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["checks"].size() >= 4);

    cfg.n = 4;
    cfg.coeffs = {0.0, 0.0, 0.0};
    const RunResult bad = run(cfg);
    CHECK(bad.exit_code == 1);
    CHECK(bad.report["checks"][0]["name"] == "NonSemisimplePoint");

    RunConfig o;
    o.mode = Mode::oracle;
    o.samples = 8;
    o.seed = 11;
    const RunResult a = run(o);
    CHECK(a.exit_code == 0);
    CHECK(canonical_json(a.report) == canonical_json(run(o).report));
    o.seed = 12;
    CHECK(canonical_json(a.report) != canonical_json(run(o).report));

    RunConfig invalid;
    invalid.k = 9;
    CHECK_THROWS_AS(run(invalid), Error);
}

TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hits(37, 0);
    parallel_for(37, [&](int i) { hits[static_cast<std::size_t>(i)] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(5, [](int i) {
        if (i == 3) throw Error(ErrorKind::SolveFailure, "boom");
    }));
    CHECK(worker_count() >= 1);
}
