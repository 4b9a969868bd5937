#ifndef KGRING_VERIFY_HPP
#define KGRING_VERIFY_HPP

#include <string>
#include <vector>

namespace kgring::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Options {
    int radial_points = 4000;
    int angular_cells = 16000;
    double oracle_tol_relativistic = 1e-4;
    double oracle_tol_nonrelativistic = 1e-5;
    double normalization_tol = 1e-7;
    double residual_tol = 1e-6;
};

/// Runs the full self-check suite: reduction regressions, closed-form vs
/// root-solve consistency, oracle comparisons, normalization quadratures,
/// equation residuals, and the weak-coupling limit scan. Solver exceptions
/// inside a check are caught and recorded as failures with the message in
/// detail.
std::vector<CheckResult> run_all(const Options& options);

} // namespace kgring::verify

#endif // KGRING_VERIFY_HPP
