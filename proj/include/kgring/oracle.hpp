#ifndef KGRING_ORACLE_HPP
#define KGRING_ORACLE_HPP

#include <functional>
#include <vector>

#include "kgring/errors.hpp"
#include "kgring/spectrum.hpp"

namespace kgring::oracle {

/// Uniform radial grid for the finite-difference eigensolver.
struct GridSpec {
    enum class Scheme { CentralSecondOrder };

    double r_min = 0.0;
    double r_max = 60.0;
    int n_points = 4000;
    Scheme scheme = Scheme::CentralSecondOrder;

    /// r_max = 40 / eps (decay resolved far past the tail), r_min = 0. The
    /// reduced function vanishes at the origin, so anchoring the boundary
    /// there keeps the truncation error purely second order in the spacing;
    /// interior nodes start one spacing in and never touch the singularity.
    static GridSpec radial_for_decay(double eps_estimate, int n_points = 4000);

    /// Structural validity: n_points >= 16 and 0 <= r_min < r_max; throws
    /// ParameterOutOfRange. Grids with fewer than ~200 points pass here but
    /// fail the refinement certificate (GridTooCoarse) in the eigensolvers.
    void validate() const;
};

/// Finite-difference eigenvalue of the reduced radial problem
///   -g'' + [ (M-1)(M-3)/(4 r^2) + alpha2sq (B/r^2 - A/r) ] g = (E^2 - mu^2) g
/// at fixed orbital j, solved self-consistently in E because alpha2sq = mu + E.
/// relativistic = false instead solves the linear Schroedinger analogue with
/// alpha2sq = 2 mu and eigenvalue 2 mu E. The returned level carries
/// method = Oracle and residual = the grid-refinement discrepancy.
/// Runs the grid and its 2x refinement, Richardson-extrapolates, and throws
/// GridTooCoarse when the two refinement stages disagree beyond 1e-3 relative.
EnergyLevel fd_radial_eigen(const PotentialSpec& spec, double j, bool relativistic, int n,
                            const GridSpec& grid);

/// Single-grid variant (no refinement certificate), for convergence studies.
double fd_radial_eigen_single(const PotentialSpec& spec, double j, bool relativistic, int n,
                              const GridSpec& grid);

/// Finite-volume eigenvalue of the polar problem on s = cos(theta):
///   -[(1-s^2) H']' + (m^2 + c s^2)/(1-s^2) H = lambda H
/// (the operator does not involve D; it is accepted for validation only).
/// Returns lambda for the n_tilde-th eigenfunction after factoring the
/// indicial endpoint exponent sqrt(m^2 + c) out of H, running n_cells and
/// 2 n_cells, and Richardson-extrapolating; throws GridTooCoarse when the
/// refinement moves the eigenvalue by more than 1e-3 * max(|lambda|, 1).
/// c_ring = C alpha2_sq is the ring coupling already scaled.
double fd_angular_eigen(int m, double c_ring, int D, int n_tilde, int n_cells);

/// Fully coupled oracle: outer root-solve in E with the angular eigenvalue
/// recomputed at each trial energy.
EnergyLevel fd_noncentral_eigen(const PotentialSpec& spec, const QuantumNumbers& q,
                                const GridSpec& grid, int angular_cells);

enum class OdeId { RadialRel, PolarRel, RadialNR };

struct OdeParams {
    PotentialSpec spec;
    double j = 0.0;
    double energy = 0.0;
    int m = 0;
    double c_ring = 0.0;
    double lambda_polar = 0.0;
};

struct ResidualReport {
    double max_residual = 0.0; // normalized by the largest |y| sampled
    bool degenerate = false;   // true when the solution is numerically zero
};

/// Plugs a closed-form solution y into its defining equation with Richardson
/// central differences and reports the worst normalized defect over the
/// sample points.
ResidualReport residual(OdeId id, const OdeParams& params,
                        const std::function<double(double)>& y,
                        const std::vector<double>& sample_points);

/// Normalized eigenvector of the radial finite-difference operator (inverse
/// iteration at the converged eigenvalue), for profile comparisons. Returns
/// grid points and g values with sum g^2 h = 1.
struct GridFunction {
    std::vector<double> x;
    std::vector<double> y;
};

GridFunction fd_radial_eigenvector(const PotentialSpec& spec, double j, bool relativistic, int n,
                                   const GridSpec& grid);

} // namespace kgring::oracle

#endif // KGRING_ORACLE_HPP
