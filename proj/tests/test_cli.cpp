#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgring/cli.hpp"
#include "kgring/errors.hpp"

using namespace kgring;
using namespace kgring::cli;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// Good enough for rows without quoted fields; keeps trailing empties.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int call_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv(args);
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

// Pinned reference energies, shared with the spectrum tests.
constexpr double kE_kratzer_000 = 0.98548923277849990201;  // a0=0.1 r0=1 C=0    D=3
constexpr double kE_kratzer_ring = 0.98946595637676132204; // a0=0.1 r0=1 C=0.05 D=3
constexpr double kE_nr_000 = -0.014589803375031545539;

} // namespace

TEST_CASE("index ranges are inclusive") {
    CHECK(IndexRange{0, 3}.values() == std::vector<int>{0, 1, 2, 3});
    CHECK(IndexRange{2, 2}.values() == std::vector<int>{2});
}

TEST_CASE("csv field formatting") {
    CHECK(csv_num(0.6) == "0.6");
    CHECK(csv_num(3.0) == "3");
    CHECK(csv_num(1e-10) == "1e-10");
    CHECK(csv_num(15.0 / 17.0) == "0.882352941176471");
    CHECK(csv_num(-0.014589803375031545539) == "-0.0145898033750315");

    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("") == "");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_quote("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("a full config populates every section") {
    const std::string text = R"({
        "dimensions": [5, 3, 3],
        "potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": 0.05, "mu": 1.0},
        "quantum": {"n": [0, 2], "n_tilde": 1, "m": [0, 1]},
        "mode": "spectrum",
        "output": {"path": "table.csv", "format": "json"},
        "tolerances": {"oracle_relativistic": 2e-4},
        "grid": {"radial_points": 800, "angular_cells": 256},
        "scan": {"variable": "C", "values": [0.0, 0.1]},
        "wavefn": {"n": 1, "n_tilde": 2, "m": 1, "samples": 64},
        "coulomb": {"qe": 0.5, "n": [0, 1]}
    })";
    const RunConfig config = parse_config(text);

    CHECK(config.dimensions == std::vector<int>{3, 5});
    CHECK(config.potential.kratzer_form);
    CHECK(config.potential.A == doctest::Approx(0.2));
    CHECK(config.potential.B == doctest::Approx(0.1));
    CHECK(config.potential.C == doctest::Approx(0.05));
    CHECK(config.n.values() == std::vector<int>{0, 1, 2});
    CHECK(config.n_tilde.lo == 1);
    CHECK(config.n_tilde.hi == 1);
    CHECK(config.m.hi == 1);
    CHECK(config.mode == Mode::Spectrum);
    CHECK(config.out_path == "table.csv");
    CHECK(config.format == Format::Json);
    CHECK(config.verify_options.oracle_tol_relativistic == doctest::Approx(2e-4));
    // Untouched tolerances keep their defaults.
    CHECK(config.verify_options.normalization_tol == doctest::Approx(1e-7));
    CHECK(config.verify_options.radial_points == 800);
    CHECK(config.verify_options.angular_cells == 256);
    REQUIRE(config.scan.has_value());
    CHECK(config.scan->variable == "C");
    CHECK(config.scan->values == std::vector<double>{0.0, 0.1});
    CHECK(config.scan->observable == "energy");
    CHECK(config.scan->series_order == 2);
    REQUIRE(config.wavefn.has_value());
    CHECK(config.wavefn->n == 1);
    CHECK(config.wavefn->n_tilde == 2);
    CHECK(config.wavefn->m == 1);
    CHECK(config.wavefn->samples == 64);
    CHECK(config.wavefn->r_max == 0.0);
    REQUIRE(config.coulomb.has_value());
    CHECK(config.coulomb->qe == doctest::Approx(0.5));
    CHECK(config.coulomb->n.hi == 1);
    CHECK(config.coulomb->ell.lo == 0);
}

TEST_CASE("an empty config is valid and uses defaults") {
    const RunConfig config = parse_config("{}");
    CHECK(config.dimensions == std::vector<int>{3});
    CHECK(config.mode == Mode::Spectrum);
    CHECK(config.format == Format::Csv);
    CHECK(config.n.values() == std::vector<int>{0});
    CHECK_FALSE(config.scan.has_value());
    CHECK_FALSE(config.wavefn.has_value());
    CHECK_FALSE(config.coulomb.has_value());
}

TEST_CASE("config rejection: structure, keys and ranges") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[1, 2]"), "config must be a JSON object", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"bogus": 1})"), "unknown key \"bogus\" in config",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"ell": 1}})"),
                         "unknown key \"ell\" in quantum", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"output": {"file": "x"}})"),
                         "unknown key \"file\" in output", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"mode": 3})"), "config.mode must be a string",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"mode": "banana"})"), "unknown mode \"banana\"",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"output": {"format": "xml"}})"),
                         "unknown format \"xml\" (expected csv or json)", ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"n": []}})"), "quantum.n range is empty",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"n": [3, 1]}})"),
                         "quantum.n range is empty (lo > hi)", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"n": [0, 1, 2]}})"),
                         "quantum.n range must be [lo, hi] or a scalar", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"n": [0, 1.5]}})"),
                         "quantum.n range entries must be integers", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"m": -1}})"),
                         "quantum.m range must be nonnegative", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"quantum": {"n": "all"}})"),
                         "quantum.n must be an integer or [lo, hi]", ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"({"dimensions": []})"), "dimensions list is empty",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"dimensions": [3, 2.5]})"),
                         "dimensions entries must be integers", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"dimensions": 1})"),
                         "dimensions entries must be >= 2", ConfigError);
}

TEST_CASE("config rejection: potential forms") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"kratzer": true, "a0": 0.1}})"),
                         "potential: kratzer form requires a0 and r0", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"a0": 0.1, "r0": 1.0}})"),
                         "potential: a0/r0 require \"kratzer\": true", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "A": 2.0}})"),
        "potential: A/B cannot be combined with kratzer form (a0, r0)", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"B": 1.0}})"),
                         "potential: explicit form requires A", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"q": 1.0}})"),
                         "unknown key \"q\" in potential", ConfigError);
    // Construction-time physics checks surface as library errors, not config errors.
    CHECK_THROWS_AS(
        parse_config(R"({"potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": -1.0}})"),
        InvalidCoupling);
    CHECK_THROWS_AS(parse_config(R"({"potential": {"A": 1.0, "mu": 0.0}})"), ParameterOutOfRange);
}

TEST_CASE("config rejection: scan, wavefn, coulomb, tolerances, grid") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"scan": {"variable": "x", "values": [1]}})"),
                         "scan.variable must be one of qe, C, a0, D", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scan": {"variable": "qe", "values": []}})"),
                         "scan.values must be a nonempty array of numbers", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scan": {"variable": "D", "values": [2.5]}})"),
                         "scan over D needs integer values >= 2", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"scan": {"variable": "qe", "values": [1], "observable": "foo"}})"),
        "scan.observable must be energy or series_gap", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(
            R"({"scan": {"variable": "C", "values": [1], "observable": "series_gap"}})"),
        "scan.observable series_gap requires variable qe", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(
            R"({"scan": {"variable": "qe", "values": [1], "series_order": 3}})"),
        "scan.series_order must be 0, 1 or 2", ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"({"wavefn": {"samples": 1}})"),
                         "wavefn.samples must be >= 2", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"wavefn": {"n": -1}})"),
                         "wavefn quantum numbers must be >= 0", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"wavefn": {"r_max": -1.0}})"),
                         "wavefn.r_max must be >= 0", ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"({"coulomb": {"qe": 0.0}})"),
                         "coulomb.qe must be positive", ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"({"tolerances": {"residual": 0.0}})"),
                         "tolerances must be positive", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"tolerances": {"res": 1e-6}})"),
                         "unknown key \"res\" in tolerances", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"radial_points": 8}})"),
                         "grid sizes must be >= 16", ConfigError);
}

TEST_CASE("spectrum runner: table layout and pinned energies") {
    RunConfig config = parse_config(R"({
        "potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": 0.0, "mu": 1.0},
        "quantum": {"n": [0, 1]}
    })");
    std::ostringstream out;
    CHECK(run_spectrum(config, out) == 0);

    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "D,n,n_tilde,m,root_index,E_R,E_NR,j,j_prime,m_prime,zeta,residual,error");

    const auto row = split_csv(lines[1]);
    REQUIRE(row.size() == 13);
    CHECK(row[0] == "3");
    CHECK(row[1] == "0");
    CHECK(row[2] == "0");
    CHECK(row[3] == "0");
    CHECK(row[4] == "0");
    CHECK(std::abs(std::stod(row[5]) - kE_kratzer_000) < 1e-12);
    CHECK(std::abs(std::stod(row[6]) - kE_nr_000) < 1e-12);
    CHECK(std::abs(std::stod(row[7])) < 1e-12);          // j = 0 for the ring-free s state
    CHECK(std::abs(std::stod(row[9])) < 1e-12);          // m' = 0
    CHECK(std::stod(row[10]) > 0.0);                     // zeta
    CHECK(std::stod(row[11]) < 1e-10);                   // solver residual
    CHECK(row[12].empty());                              // no row error

    const auto excited = split_csv(lines[2]);
    CHECK(excited[1] == "1");
    CHECK(std::stod(excited[5]) > std::stod(row[5])); // higher n, higher energy
}

TEST_CASE("spectrum runner: every row failing means exit code 2") {
    RunConfig config = parse_config(R"({
        "potential": {"A": -0.5, "B": 0.1}
    })");
    std::ostringstream out;
    CHECK(run_spectrum(config, out) == 2);

    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 2);
    const auto row = split_csv(lines[1]);
    REQUIRE(row.size() == 13);
    CHECK(row[5].empty());                   // no relativistic energy
    CHECK_FALSE(row[6].empty());             // E_NR only depends on A^2, still defined
    CHECK_FALSE(row[12].empty());            // reason is carried through
    CHECK(row[12].find("bound") != std::string::npos);
}

TEST_CASE("coulomb runner: defaults give the textbook ground state") {
    RunConfig config;
    config.mode = Mode::Coulomb;
    std::ostringstream out;
    CHECK(run_coulomb(config, out) == 0);

    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "D,n,ell,N,E_R,error");
    CHECK(lines[1] == "3,0,0,2,0.6,");
}

TEST_CASE("scan runner: ring coupling sweep, deterministic output") {
    RunConfig config = parse_config(R"({
        "potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": 0.0, "mu": 1.0},
        "scan": {"variable": "C", "values": [0.0, 0.05]}
    })");

    std::ostringstream first, second;
    CHECK(run_scan(config, first) == 0);
    CHECK(run_scan(config, second) == 0);
    CHECK(first.str() == second.str());

    const auto lines = split_lines(first.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "C,D,n,n_tilde,m,E_R,j,m_prime,error");
    const auto off = split_csv(lines[1]);
    const auto on = split_csv(lines[2]);
    CHECK(std::abs(std::stod(off[5]) - kE_kratzer_000) < 1e-12);
    CHECK(std::abs(std::stod(on[5]) - kE_kratzer_ring) < 1e-12);
    CHECK(std::stod(on[7]) > 0.0); // the ring coupling lifts m' above zero

    RunConfig no_scan;
    std::ostringstream sink;
    CHECK_THROWS_AS(run_scan(no_scan, sink), ConfigError);

    RunConfig general_a0 = parse_config(R"({
        "potential": {"A": 0.2, "B": 0.1},
        "scan": {"variable": "a0", "values": [0.1]}
    })");
    CHECK_THROWS_WITH_AS(run_scan(general_a0, sink),
                         "scan over a0 requires the kratzer potential form", ConfigError);
}

TEST_CASE("scan runner: coulomb rows and the series gap") {
    RunConfig config = parse_config(R"({
        "scan": {"variable": "qe", "values": [0.5, 1.0]}
    })");
    std::ostringstream out;
    CHECK(run_scan(config, out) == 0);
    auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "qe,D,n,ell,N,E_R,error");
    CHECK(std::abs(std::stod(split_csv(lines[1])[5]) - 15.0 / 17.0) < 1e-15);
    CHECK(std::abs(std::stod(split_csv(lines[2])[5]) - 0.6) < 1e-15);

    RunConfig gaps = parse_config(R"({
        "scan": {"variable": "qe", "values": [0.5, 0.25], "observable": "series_gap"}
    })");
    std::ostringstream gap_out;
    CHECK(run_scan(gaps, gap_out) == 0);
    lines = split_lines(gap_out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "qe,E_exact,E_series,gap,error");
    // For N = 2 and x = qe^2/N^2 the order-2 truncation error is 2x^3/(1+x).
    const double gap_half = std::stod(split_csv(lines[1])[3]);
    const double gap_quarter = std::stod(split_csv(lines[2])[3]);
    const double x1 = 0.0625, x2 = 0.015625;
    CHECK(gap_half == doctest::Approx(2.0 * x1 * x1 * x1 / (1.0 + x1)).epsilon(1e-10));
    CHECK(gap_quarter == doctest::Approx(2.0 * x2 * x2 * x2 / (1.0 + x2)).epsilon(1e-10));
    CHECK(gap_half > gap_quarter);
}

TEST_CASE("wavefn runner: csv table and json metadata") {
    RunConfig config = parse_config(R"({
        "potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": 0.0, "mu": 1.0},
        "wavefn": {"samples": 8}
    })");
    std::ostringstream csv_out;
    CHECK(run_wavefn(config, csv_out) == 0);
    const auto lines = split_lines(csv_out.str());
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "r,R,theta,H,phi,Phi_re,Phi_im,error");
    const auto row = split_csv(lines[1]);
    REQUIRE(row.size() == 8);
    CHECK(std::stod(row[0]) > 0.0);               // first radius
    CHECK(std::stod(row[1]) > 0.0);               // nodeless ground state
    CHECK(std::abs(std::stod(row[3]) - 1.0 / std::sqrt(2.0)) < 1e-12); // flat polar factor
    CHECK(std::abs(std::stod(row[6])) < 1e-15);   // m = 0: no imaginary part

    config.format = Format::Json;
    std::ostringstream json_out;
    CHECK(run_wavefn(config, json_out) == 0);
    const auto root = nlohmann::json::parse(json_out.str());
    REQUIRE(root.contains("state"));
    REQUIRE(root.contains("samples"));
    CHECK(std::abs(root["state"]["E_R"].get<double>() - kE_kratzer_000) < 1e-12);
    CHECK(root["state"]["D"].get<int>() == 3);
    CHECK(root["state"]["zeta"].get<double>() > 0.0);
    CHECK(root["state"]["r_max"].get<double>() > 0.0);
    REQUIRE(root["samples"].size() == 8);
    for (const char* key : {"r", "R", "theta", "H", "phi", "Phi_re", "Phi_im"}) {
        CHECK(root["samples"][0].contains(key));
    }
}

TEST_CASE("json tables carry nulls for missing cells") {
    RunConfig config = parse_config(R"({
        "potential": {"A": -0.5, "B": 0.1}
    })");
    config.format = Format::Json;
    std::ostringstream out;
    CHECK(run_spectrum(config, out) == 2);
    const auto root = nlohmann::json::parse(out.str());
    REQUIRE(root.contains("rows"));
    REQUIRE(root["rows"].size() == 1);
    const auto& row = root["rows"][0];
    CHECK(row["E_R"].is_null());
    CHECK(row["E_NR"].is_number());
    CHECK_FALSE(row["error"].get<std::string>().empty());
}

TEST_CASE("main entry: subcommands, flags and exit codes") {
    const std::string out_path = "cli_test_coulomb.csv";
    CHECK(call_cli({"kgring", "coulomb", "--out", out_path.c_str()}) == 0);
    auto lines = split_lines(read_file(out_path));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "D,n,ell,N,E_R,error");
    CHECK(lines[1] == "3,0,0,2,0.6,");

    // Subcommands that need a config refuse to run without one.
    CHECK(call_cli({"kgring", "spectrum"}) == 1);
    CHECK(call_cli({"kgring", "wavefn"}) == 1);
    CHECK(call_cli({"kgring", "scan"}) == 1);

    // Argument errors come from the flag parser, not the physics.
    CHECK(call_cli({"kgring"}) != 0);
    CHECK(call_cli({"kgring", "frobnicate"}) != 0);
    CHECK(call_cli({"kgring", "coulomb", "--format", "xml"}) != 0);
    CHECK(call_cli({"kgring", "--help"}) == 0);

    CHECK(call_cli({"kgring", "spectrum", "--config", "no_such_file.json"}) == 1);

    const std::string bad_cfg = "cli_test_bad.json";
    write_file(bad_cfg, R"({"bogus": 1})");
    CHECK(call_cli({"kgring", "spectrum", "--config", bad_cfg.c_str()}) == 1);

    // The subcommand decides the mode even when the config says otherwise.
    const std::string cfg = "cli_test_spectrum.json";
    write_file(cfg, R"({
        "mode": "coulomb",
        "potential": {"kratzer": true, "a0": 0.1, "r0": 1.0, "C": 0.0, "mu": 1.0}
    })");
    const std::string spec_out = "cli_test_spectrum_out.json";
    CHECK(call_cli({"kgring", "spectrum", "--config", cfg.c_str(), "--out", spec_out.c_str(),
                    "--format", "json"}) == 0);
    const auto root = nlohmann::json::parse(read_file(spec_out));
    REQUIRE(root.contains("rows"));
    REQUIRE(root["rows"].size() == 1);
    CHECK(root["rows"][0].contains("n_tilde")); // spectrum table, not a coulomb table
    CHECK(std::abs(root["rows"][0]["E_R"].get<double>() - kE_kratzer_000) < 1e-12);

    for (const auto& path : {out_path, bad_cfg, cfg, spec_out}) {
        std::remove(path.c_str());
    }
}
