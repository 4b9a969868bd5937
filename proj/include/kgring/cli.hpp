#ifndef KGRING_CLI_HPP
#define KGRING_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kgring/errors.hpp"
#include "kgring/spectrum.hpp"
#include "kgring/verify.hpp"

namespace kgring::cli {

enum class Mode { Spectrum, Wavefn, Verify, Scan, Coulomb };
enum class Format { Csv, Json };

/// Inclusive integer range.
struct IndexRange {
    int lo = 0;
    int hi = 0;

    std::vector<int> values() const;
};

struct ScanConfig {
    std::string variable; // one of: qe, C, a0, D
    std::vector<double> values;
    std::string observable; // one of: energy, series_gap
    int series_order = 2;
};

struct WavefnConfig {
    int n = 0;
    int n_tilde = 0;
    int m = 0;
    double r_max = 0.0; // 0 = auto from the decay rate
    int samples = 200;
};

struct CoulombConfig {
    double qe = 1.0;
    IndexRange n{0, 0};
    IndexRange ell{0, 0};
};

struct RunConfig {
    PotentialSpec potential;
    IndexRange n{0, 0};
    IndexRange n_tilde{0, 0};
    IndexRange m{0, 0};
    std::vector<int> dimensions{3};
    Mode mode = Mode::Spectrum;
    std::string out_path; // empty = stdout
    Format format = Format::Csv;
    verify::Options verify_options;
    std::optional<ScanConfig> scan;
    std::optional<WavefnConfig> wavefn;
    std::optional<CoulombConfig> coulomb;
};

/// Parses and strictly validates a JSON config: unknown keys, empty ranges,
/// or non-positive tolerances throw ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Each runner writes its table/report to out and returns the process exit
/// code: 0 success, 2 every row failed, 3 a verification check failed.
int run_spectrum(const RunConfig& config, std::ostream& out);
int run_coulomb(const RunConfig& config, std::ostream& out);
int run_scan(const RunConfig& config, std::ostream& out);
int run_wavefn(const RunConfig& config, std::ostream& out);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& human);

/// Dispatch by config.mode; opens config.out_path when set. Config and I/O
/// errors return 1.
int run(const RunConfig& config);

/// Full entry point used by the binary: subcommand + flags to exit code.
int main_entry(int argc, const char* const* argv);

/// CSV field formatting: 15 significant digits, '.' decimal point, minimal
/// RFC-4180 quoting.
std::string csv_num(double v);
std::string csv_quote(const std::string& field);

} // namespace kgring::cli

#endif // KGRING_CLI_HPP
