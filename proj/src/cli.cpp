#include "kgring/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgring/wavefn.hpp"

namespace kgring::cli {

using nlohmann::json;

std::vector<int> IndexRange::values() const {
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

[[noreturn]] void bad_config(const std::string& message) {
    throw ConfigError(message);
}

const json& expect_object(const json& node, const std::string& where) {
    if (!node.is_object()) bad_config(where + " must be a JSON object");
    return node;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) bad_config("unknown key \"" + item.key() + "\" in " + where);
    }
}

double number_at(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) bad_config(where + "." + key + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return number_at(obj, key, where);
}

int integer_at(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) bad_config(where + "." + key + " must be an integer");
    return v.get<int>();
}

int integer_or(const json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return integer_at(obj, key, where);
}

std::string string_at(const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string()) bad_config(where + "." + key + " must be a string");
    return v.get<std::string>();
}

IndexRange parse_range(const json& node, const std::string& where) {
    IndexRange r;
    if (node.is_number_integer()) {
        r.lo = r.hi = node.get<int>();
    } else if (node.is_array()) {
        if (node.empty()) bad_config(where + " range is empty");
        if (node.size() > 2) bad_config(where + " range must be [lo, hi] or a scalar");
        for (const auto& v : node) {
            if (!v.is_number_integer()) bad_config(where + " range entries must be integers");
        }
        r.lo = node[0].get<int>();
        r.hi = node.size() == 2 ? node[1].get<int>() : r.lo;
    } else {
        bad_config(where + " must be an integer or [lo, hi]");
    }
    if (r.lo > r.hi) bad_config(where + " range is empty (lo > hi)");
    if (r.lo < 0) bad_config(where + " range must be nonnegative");
    return r;
}

IndexRange range_or(const json& obj, const char* key, IndexRange fallback,
                    const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return parse_range(obj.at(key), where + "." + key);
}

PotentialSpec parse_potential(const json& node, int first_dimension) {
    const auto& obj = expect_object(node, "potential");
    reject_unknown_keys(obj, {"kratzer", "a0", "r0", "A", "B", "C", "mu"}, "potential");
    const bool kratzer = obj.contains("kratzer") && obj.at("kratzer").is_boolean()
                             ? obj.at("kratzer").get<bool>()
                             : (obj.contains("kratzer")
                                    ? (bad_config("potential.kratzer must be a boolean"), false)
                                    : false);
    const double C = number_or(obj, "C", 0.0, "potential");
    const double mu = number_or(obj, "mu", 1.0, "potential");
    if (kratzer) {
        if (obj.contains("A") || obj.contains("B")) {
            bad_config("potential: A/B cannot be combined with kratzer form (a0, r0)");
        }
        if (!obj.contains("a0") || !obj.contains("r0")) {
            bad_config("potential: kratzer form requires a0 and r0");
        }
        return PotentialSpec::kratzer(number_at(obj, "a0", "potential"),
                                      number_at(obj, "r0", "potential"), C, mu,
                                      first_dimension);
    }
    if (obj.contains("a0") || obj.contains("r0")) {
        bad_config("potential: a0/r0 require \"kratzer\": true");
    }
    if (!obj.contains("A")) bad_config("potential: explicit form requires A");
    return PotentialSpec::general(number_at(obj, "A", "potential"),
                                  number_or(obj, "B", 0.0, "potential"), C, mu,
                                  first_dimension);
}

std::vector<int> parse_dimensions(const json& node) {
    std::vector<int> dims;
    if (node.is_number_integer()) {
        dims.push_back(node.get<int>());
    } else if (node.is_array()) {
        if (node.empty()) bad_config("dimensions list is empty");
        for (const auto& v : node) {
            if (!v.is_number_integer()) bad_config("dimensions entries must be integers");
            dims.push_back(v.get<int>());
        }
    } else {
        bad_config("dimensions must be an integer or a list of integers");
    }
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    for (int d : dims) {
        if (d < 2) bad_config("dimensions entries must be >= 2");
    }
    return dims;
}

Mode parse_mode(const std::string& name) {
    if (name == "spectrum") return Mode::Spectrum;
    if (name == "wavefn") return Mode::Wavefn;
    if (name == "verify") return Mode::Verify;
    if (name == "scan") return Mode::Scan;
    if (name == "coulomb") return Mode::Coulomb;
    bad_config("unknown mode \"" + name + "\"");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    bad_config("unknown format \"" + name + "\" (expected csv or json)");
}

ScanConfig parse_scan(const json& node) {
    const auto& obj = expect_object(node, "scan");
    reject_unknown_keys(obj, {"variable", "values", "observable", "series_order"}, "scan");
    ScanConfig sc;
    sc.variable = string_at(obj, "variable", "scan");
    if (sc.variable != "qe" && sc.variable != "C" && sc.variable != "a0" &&
        sc.variable != "D") {
        bad_config("scan.variable must be one of qe, C, a0, D");
    }
    if (!obj.contains("values") || !obj.at("values").is_array() || obj.at("values").empty()) {
        bad_config("scan.values must be a nonempty array of numbers");
    }
    for (const auto& v : obj.at("values")) {
        if (!v.is_number()) bad_config("scan.values entries must be numbers");
        sc.values.push_back(v.get<double>());
    }
    if (sc.variable == "D") {
        for (double v : sc.values) {
            if (v != std::floor(v) || v < 2) bad_config("scan over D needs integer values >= 2");
        }
    }
    sc.observable = obj.contains("observable") ? string_at(obj, "observable", "scan") : "energy";
    if (sc.observable != "energy" && sc.observable != "series_gap") {
        bad_config("scan.observable must be energy or series_gap");
    }
    if (sc.observable == "series_gap" && sc.variable != "qe") {
        bad_config("scan.observable series_gap requires variable qe");
    }
    sc.series_order = integer_or(obj, "series_order", 2, "scan");
    if (sc.series_order < 0 || sc.series_order > 2) {
        bad_config("scan.series_order must be 0, 1 or 2");
    }
    return sc;
}

WavefnConfig parse_wavefn(const json& node) {
    const auto& obj = expect_object(node, "wavefn");
    reject_unknown_keys(obj, {"n", "n_tilde", "m", "r_max", "samples"}, "wavefn");
    WavefnConfig wc;
    wc.n = integer_or(obj, "n", 0, "wavefn");
    wc.n_tilde = integer_or(obj, "n_tilde", 0, "wavefn");
    wc.m = integer_or(obj, "m", 0, "wavefn");
    wc.r_max = number_or(obj, "r_max", 0.0, "wavefn");
    wc.samples = integer_or(obj, "samples", 200, "wavefn");
    if (wc.n < 0 || wc.n_tilde < 0 || wc.m < 0) bad_config("wavefn quantum numbers must be >= 0");
    if (wc.r_max < 0) bad_config("wavefn.r_max must be >= 0");
    if (wc.samples < 2) bad_config("wavefn.samples must be >= 2");
    return wc;
}

CoulombConfig parse_coulomb(const json& node) {
    const auto& obj = expect_object(node, "coulomb");
    reject_unknown_keys(obj, {"qe", "n", "ell"}, "coulomb");
    CoulombConfig cc;
    cc.qe = number_or(obj, "qe", 1.0, "coulomb");
    if (!(cc.qe > 0.0)) bad_config("coulomb.qe must be positive");
    cc.n = range_or(obj, "n", IndexRange{0, 0}, "coulomb");
    cc.ell = range_or(obj, "ell", IndexRange{0, 0}, "coulomb");
    return cc;
}

void parse_tolerances(const json& node, verify::Options& opt) {
    const auto& obj = expect_object(node, "tolerances");
    reject_unknown_keys(obj,
                        {"oracle_relativistic", "oracle_nonrelativistic", "normalization",
                         "residual"},
                        "tolerances");
    opt.oracle_tol_relativistic =
        number_or(obj, "oracle_relativistic", opt.oracle_tol_relativistic, "tolerances");
    opt.oracle_tol_nonrelativistic =
        number_or(obj, "oracle_nonrelativistic", opt.oracle_tol_nonrelativistic, "tolerances");
    opt.normalization_tol = number_or(obj, "normalization", opt.normalization_tol, "tolerances");
    opt.residual_tol = number_or(obj, "residual", opt.residual_tol, "tolerances");
    if (!(opt.oracle_tol_relativistic > 0) || !(opt.oracle_tol_nonrelativistic > 0) ||
        !(opt.normalization_tol > 0) || !(opt.residual_tol > 0)) {
        bad_config("tolerances must be positive");
    }
}

void parse_grid(const json& node, verify::Options& opt) {
    const auto& obj = expect_object(node, "grid");
    reject_unknown_keys(obj, {"radial_points", "angular_cells"}, "grid");
    opt.radial_points = integer_or(obj, "radial_points", opt.radial_points, "grid");
    opt.angular_cells = integer_or(obj, "angular_cells", opt.angular_cells, "grid");
    if (opt.radial_points < 16 || opt.angular_cells < 16) {
        bad_config("grid sizes must be >= 16");
    }
}

PotentialSpec with_dimension(const PotentialSpec& p, int D) {
    return p.kratzer_form ? PotentialSpec::kratzer(p.a0, p.r0, p.C, p.mu, D)
                          : PotentialSpec::general(p.A, p.B, p.C, p.mu, D);
}

// One output row. Missing numeric cells stay empty in CSV and null in JSON.
struct Cell {
    std::optional<double> num;
    Cell() = default;
    Cell(double v) : num(v) {}
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> row_errors;

    void add_row(std::vector<Cell> cells, std::string error) {
        rows.push_back(std::move(cells));
        row_errors.push_back(std::move(error));
    }
};

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(table.header[i]);
    }
    out << ",error\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
            if (i) out << ',';
            if (table.rows[r][i].num) out << csv_num(*table.rows[r][i].num);
        }
        out << ',' << csv_quote(table.row_errors[r]) << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    json rows = json::array();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        json row = json::object();
        for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
            if (table.rows[r][i].num) {
                row[table.header[i]] = *table.rows[r][i].num;
            } else {
                row[table.header[i]] = nullptr;
            }
        }
        row["error"] = table.row_errors[r];
        rows.push_back(std::move(row));
    }
    out << json{{"rows", rows}}.dump(2) << '\n';
}

int emit(const Table& table, const RunConfig& config, std::ostream& out) {
    if (config.format == Format::Csv) {
        write_csv(table, out);
    } else {
        write_json(table, out);
    }
    for (const auto& err : table.row_errors) {
        if (err.empty()) return 0;
    }
    return 2;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad_config(std::string("config is not valid JSON: ") + e.what());
    }
    const auto& obj = expect_object(root, "config");
    reject_unknown_keys(obj,
                        {"potential", "quantum", "dimensions", "mode", "output", "tolerances",
                         "grid", "scan", "wavefn", "coulomb"},
                        "config");

    RunConfig config;
    if (obj.contains("dimensions")) config.dimensions = parse_dimensions(obj.at("dimensions"));
    if (obj.contains("potential")) {
        config.potential = parse_potential(obj.at("potential"), config.dimensions.front());
    }
    if (obj.contains("quantum")) {
        const auto& q = expect_object(obj.at("quantum"), "quantum");
        reject_unknown_keys(q, {"n", "n_tilde", "m"}, "quantum");
        config.n = range_or(q, "n", config.n, "quantum");
        config.n_tilde = range_or(q, "n_tilde", config.n_tilde, "quantum");
        config.m = range_or(q, "m", config.m, "quantum");
    }
    if (obj.contains("mode")) config.mode = parse_mode(string_at(obj, "mode", "config"));
    if (obj.contains("output")) {
        const auto& o = expect_object(obj.at("output"), "output");
        reject_unknown_keys(o, {"path", "format"}, "output");
        if (o.contains("path")) config.out_path = string_at(o, "path", "output");
        if (o.contains("format")) config.format = parse_format(string_at(o, "format", "output"));
    }
    if (obj.contains("tolerances")) parse_tolerances(obj.at("tolerances"), config.verify_options);
    if (obj.contains("grid")) parse_grid(obj.at("grid"), config.verify_options);
    if (obj.contains("scan")) config.scan = parse_scan(obj.at("scan"));
    if (obj.contains("wavefn")) config.wavefn = parse_wavefn(obj.at("wavefn"));
    if (obj.contains("coulomb")) config.coulomb = parse_coulomb(obj.at("coulomb"));
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_config("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

int run_spectrum(const RunConfig& config, std::ostream& out) {
    Table table;
    table.header = {"D",  "n",       "n_tilde", "m",    "root_index", "E_R",
                    "E_NR", "j",     "j_prime", "m_prime", "zeta",    "residual"};
    for (int D : config.dimensions) {
        const PotentialSpec spec = with_dimension(config.potential, D);
        for (int n : config.n.values()) {
            for (int nt : config.n_tilde.values()) {
                for (int m : config.m.values()) {
                    const QuantumNumbers q{n, nt, m};
                    std::vector<EnergyLevel> roots;
                    std::string row_error;
                    try {
                        roots = solve_noncentral_relativistic(spec, q);
                    } catch (const Error& e) {
                        row_error = e.what();
                    }
                    std::optional<double> e_nr;
                    std::string nr_error;
                    try {
                        e_nr = nonrel_energy(spec, q).value;
                    } catch (const Error& e) {
                        nr_error = std::string("E_NR: ") + e.what();
                    }
                    if (!row_error.empty()) {
                        table.add_row({Cell(D), Cell(n), Cell(nt), Cell(m), Cell(), Cell(),
                                       e_nr ? Cell(*e_nr) : Cell(), Cell(), Cell(), Cell(),
                                       Cell(), Cell()},
                                      row_error);
                        continue;
                    }
                    for (std::size_t idx = 0; idx < roots.size(); ++idx) {
                        const auto d = derived_numbers(spec, q, roots[idx].value);
                        table.add_row({Cell(D), Cell(n), Cell(nt), Cell(m),
                                       Cell(static_cast<double>(idx)), Cell(roots[idx].value),
                                       e_nr ? Cell(*e_nr) : Cell(), Cell(d.j), Cell(d.j_prime),
                                       Cell(d.m_prime), Cell(d.zeta), Cell(roots[idx].residual)},
                                      nr_error);
                    }
                }
            }
        }
    }
    return emit(table, config, out);
}

int run_coulomb(const RunConfig& config, std::ostream& out) {
    const CoulombConfig cc = config.coulomb.value_or(CoulombConfig{});
    Table table;
    table.header = {"D", "n", "ell", "N", "E_R"};
    for (int D : config.dimensions) {
        const PotentialSpec spec = PotentialSpec::general(cc.qe, 0.0, 0.0,
                                                          config.potential.mu > 0
                                                              ? config.potential.mu
                                                              : 1.0,
                                                          D);
        for (int n : cc.n.values()) {
            for (int ell : cc.ell.values()) {
                try {
                    const double E = coulomb_energy(cc.qe, spec, n, ell).value;
                    table.add_row({Cell(D), Cell(n), Cell(ell),
                                   Cell(coulomb_principal(D, n, ell)), Cell(E)},
                                  "");
                } catch (const Error& e) {
                    table.add_row({Cell(D), Cell(n), Cell(ell), Cell(), Cell()}, e.what());
                }
            }
        }
    }
    return emit(table, config, out);
}

int run_scan(const RunConfig& config, std::ostream& out) {
    if (!config.scan) bad_config("scan mode requires a scan section");
    const ScanConfig& sc = *config.scan;
    const CoulombConfig cc = config.coulomb.value_or(CoulombConfig{});
    const int D0 = config.dimensions.front();
    Table table;

    if (sc.variable == "qe" && sc.observable == "series_gap") {
        table.header = {"qe", "E_exact", "E_series", "gap"};
        for (double qe : sc.values) {
            try {
                const PotentialSpec spec =
                    PotentialSpec::general(qe, 0.0, 0.0, 1.0, D0);
                const double exact = coulomb_energy(qe, spec, cc.n.lo, cc.ell.lo).value;
                const double series =
                    coulomb_series(qe, spec, cc.n.lo, cc.ell.lo, sc.series_order).value;
                table.add_row(
                    {Cell(qe), Cell(exact), Cell(series), Cell(std::abs(exact - series))}, "");
            } catch (const Error& e) {
                table.add_row({Cell(qe), Cell(), Cell(), Cell()}, e.what());
            }
        }
        return emit(table, config, out);
    }

    if (sc.variable == "qe" || sc.variable == "D") {
        table.header = {sc.variable, "D", "n", "ell", "N", "E_R"};
        for (double v : sc.values) {
            const double qe = sc.variable == "qe" ? v : cc.qe;
            const int D = sc.variable == "D" ? static_cast<int>(v) : D0;
            try {
                const PotentialSpec spec = PotentialSpec::general(qe, 0.0, 0.0, 1.0, D);
                const double E = coulomb_energy(qe, spec, cc.n.lo, cc.ell.lo).value;
                table.add_row({Cell(v), Cell(D), Cell(cc.n.lo), Cell(cc.ell.lo),
                               Cell(coulomb_principal(D, cc.n.lo, cc.ell.lo)), Cell(E)},
                              "");
            } catch (const Error& e) {
                table.add_row({Cell(v), Cell(D), Cell(cc.n.lo), Cell(cc.ell.lo), Cell(), Cell()},
                              e.what());
            }
        }
        return emit(table, config, out);
    }

    // C or a0 sweeps drive the full noncentral solver.
    if (sc.variable == "a0" && !config.potential.kratzer_form) {
        bad_config("scan over a0 requires the kratzer potential form");
    }
    const QuantumNumbers q{config.n.lo, config.n_tilde.lo, config.m.lo};
    table.header = {sc.variable, "D", "n", "n_tilde", "m", "E_R", "j", "m_prime"};
    for (double v : sc.values) {
        try {
            PotentialSpec base = config.potential;
            PotentialSpec spec =
                sc.variable == "C"
                    ? (base.kratzer_form
                           ? PotentialSpec::kratzer(base.a0, base.r0, v, base.mu, D0)
                           : PotentialSpec::general(base.A, base.B, v, base.mu, D0))
                    : PotentialSpec::kratzer(v, base.r0, base.C, base.mu, D0);
            const auto level = solve_noncentral_relativistic(spec, q).front();
            const auto d = derived_numbers(spec, q, level.value);
            table.add_row({Cell(v), Cell(D0), Cell(q.n), Cell(q.n_tilde), Cell(q.m),
                           Cell(level.value), Cell(d.j), Cell(d.m_prime)},
                          "");
        } catch (const Error& e) {
            table.add_row({Cell(v), Cell(D0), Cell(q.n), Cell(q.n_tilde), Cell(q.m), Cell(),
                           Cell(), Cell()},
                          e.what());
        }
    }
    return emit(table, config, out);
}

int run_wavefn(const RunConfig& config, std::ostream& out) {
    const WavefnConfig wc = config.wavefn.value_or(WavefnConfig{});
    const int D = config.dimensions.front();
    const PotentialSpec spec = with_dimension(config.potential, D);
    const QuantumNumbers q{wc.n, wc.n_tilde, wc.m};
    const auto level = solve_noncentral_relativistic(spec, q).front();
    const auto d = derived_numbers(spec, q, level.value);
    const auto rad = RadialState::make(spec, level, q.n, d.j);
    const auto ang = AngularState::make(q.n_tilde, d.m_prime);
    const double r_max = wc.r_max > 0 ? wc.r_max : 40.0 / rad.epsilon;

    Table table;
    table.header = {"r", "R", "theta", "H", "phi", "Phi_re", "Phi_im"};
    for (int i = 1; i <= wc.samples; ++i) {
        const double r = r_max * i / wc.samples;
        const double theta = M_PI * i / (wc.samples + 1);
        const double phi = 2.0 * M_PI * i / wc.samples;
        const auto az = azimuthal(q.m, phi);
        table.add_row({Cell(r), Cell(radial(rad, r)), Cell(theta), Cell(angular(ang, theta)),
                       Cell(phi), Cell(az.real()), Cell(az.imag())},
                      "");
    }
    if (config.format == Format::Json) {
        json meta{{"E_R", level.value}, {"j", d.j},     {"m_prime", d.m_prime},
                  {"zeta", d.zeta},     {"D", D},       {"n", q.n},
                  {"n_tilde", q.n_tilde}, {"m", q.m},   {"r_max", r_max}};
        json rows = json::array();
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            json row = json::object();
            for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
                row[table.header[i]] = *table.rows[r][i].num;
            }
            rows.push_back(std::move(row));
        }
        out << json{{"state", meta}, {"samples", rows}}.dump(2) << '\n';
        return 0;
    }
    return emit(table, config, out);
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& human) {
    const auto results = verify::run_all(config.verify_options);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        human << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured=" << csv_num(r.measured)
              << " tolerance=" << csv_num(r.tolerance);
        if (!r.detail.empty()) human << "  (" << r.detail << ")";
        human << '\n';
    }
    human << (all_pass ? "all checks passed" : "some checks FAILED") << '\n';

    json checks = json::array();
    for (const auto& r : results) {
        checks.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"measured", std::isfinite(r.measured) ? json(r.measured) : json()},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    out << json{{"all_pass", all_pass}, {"checks", checks}}.dump(2) << '\n';
    return all_pass ? 0 : 3;
}

int run(const RunConfig& config) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!config.out_path.empty()) {
        file.open(config.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file: " << config.out_path << '\n';
            return 1;
        }
        out = &file;
    }
    switch (config.mode) {
        case Mode::Spectrum: return run_spectrum(config, *out);
        case Mode::Wavefn: return run_wavefn(config, *out);
        case Mode::Scan: return run_scan(config, *out);
        case Mode::Coulomb: return run_coulomb(config, *out);
        case Mode::Verify: {
            if (config.out_path.empty()) {
                std::ostringstream sink;
                return run_verify(config, sink, std::cout);
            }
            return run_verify(config, *out, std::cout);
        }
    }
    return 1;
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"Bound states of the ring-shaped Kratzer potential in D dimensions"};
    app.require_subcommand(1);

    std::string config_path, out_path, format_str;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format_str, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* sub_spectrum = app.add_subcommand("spectrum", "energy table over quantum numbers");
    CLI::App* sub_wavefn = app.add_subcommand("wavefn", "sampled normalized wavefunctions");
    CLI::App* sub_verify = app.add_subcommand("verify", "run the full self-check suite");
    CLI::App* sub_scan = app.add_subcommand("scan", "sweep one parameter");
    CLI::App* sub_coulomb = app.add_subcommand("coulomb", "closed-form Coulomb limit table");
    for (CLI::App* sub : {sub_spectrum, sub_wavefn, sub_verify, sub_scan, sub_coulomb}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Mode mode = Mode::Verify;
    if (sub_spectrum->parsed()) mode = Mode::Spectrum;
    if (sub_wavefn->parsed()) mode = Mode::Wavefn;
    if (sub_verify->parsed()) mode = Mode::Verify;
    if (sub_scan->parsed()) mode = Mode::Scan;
    if (sub_coulomb->parsed()) mode = Mode::Coulomb;

    try {
        RunConfig config;
        if (!config_path.empty()) {
            // The subcommand decides the mode; a "mode" key in the config is
            // advisory (it lets a config run standalone defaults).
            config = load_config(config_path);
        } else if (mode == Mode::Spectrum || mode == Mode::Wavefn || mode == Mode::Scan) {
            bad_config("this subcommand requires --config");
        }
        config.mode = mode;
        if (!out_path.empty()) config.out_path = out_path;
        if (!format_str.empty()) config.format = parse_format(format_str);
        return run(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace kgring::cli
