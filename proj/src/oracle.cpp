#include "kgring/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace kgring::oracle {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x,
/// from the signs of the LDL^T pivots.
int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

/// k-th (0-based) eigenvalue by bisection on the count function.
double kth_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(d, e, mid) <= k) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-14 * std::max(1.0, std::min(std::abs(lo), std::abs(hi)))) break;
    }
    return 0.5 * (lo + hi);
}

/// Solve (T - shift I) x = b for tridiagonal T, banded LU with partial
/// pivoting (one fill-in superdiagonal).
std::vector<double> solve_shifted(const std::vector<double>& d, const std::vector<double>& e,
                                  double shift, std::vector<double> b) {
    const std::size_t n = d.size();
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), fill(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = d[i] - shift;
        if (i > 0) sub[i] = e[i - 1];
        if (i + 1 < n) sup[i] = e[i];
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(sub[k + 1]) > std::abs(diag[k])) {
            std::swap(diag[k], sub[k + 1]);
            std::swap(sup[k], diag[k + 1]);
            std::swap(fill[k], sup[k + 1]);
            std::swap(b[k], b[k + 1]);
        }
        if (diag[k] == 0.0) diag[k] = 1e-300;
        const double l = sub[k + 1] / diag[k];
        diag[k + 1] -= l * sup[k];
        sup[k + 1] -= l * fill[k];
        b[k + 1] -= l * b[k];
    }
    if (diag[n - 1] == 0.0) diag[n - 1] = 1e-300;
    std::vector<double> x(n, 0.0);
    x[n - 1] = b[n - 1] / diag[n - 1];
    if (n >= 2) x[n - 2] = (b[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
    for (std::size_t i = n; i-- > 2;) {
        const std::size_t k = i - 2;
        x[k] = (b[k] - sup[k] * x[k + 1] - fill[k] * x[k + 2]) / diag[k];
    }
    return x;
}

struct RadialMatrix {
    std::vector<double> d;
    std::vector<double> e;
    std::vector<double> r;
    double h = 0.0;
};

/// Dirichlet discretization of -g'' + (cf/r^2 - cl/r) g on the interior nodes.
RadialMatrix radial_matrix(double cf, double cl, const GridSpec& grid) {
    RadialMatrix m;
    const int n = grid.n_points;
    m.h = (grid.r_max - grid.r_min) / (n + 1);
    const double inv_h2 = 1.0 / (m.h * m.h);
    m.d.resize(n);
    m.e.assign(n - 1, -inv_h2);
    m.r.resize(n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.r_min + (i + 1) * m.h;
        m.r[i] = r;
        m.d[i] = 2.0 * inv_h2 + cf / (r * r) - cl / r;
    }
    return m;
}

/// Centrifugal strength (M-1)(M-3)/4 written through j so callers pass j.
double centrifugal(double j, int D) {
    const double M = D + 2.0 * j;
    return 0.25 * (M - 1.0) * (M - 3.0);
}

struct ScanResult {
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
};

/// Scan phi over (-mu+, mu-) and bisect; demands exactly one sign change.
ScanResult self_consistent_root(const std::function<double(double)>& phi, double mu,
                                int scan_points) {
    const double lo_end = -mu * (1.0 - 1e-6);
    const double hi_end = mu * (1.0 - 1e-6);
    const double step = (hi_end - lo_end) / scan_points;

    std::vector<double> values(scan_points + 1);
    for (int i = 0; i <= scan_points; ++i) {
        values[i] = phi(lo_end + i * step);
    }
    std::vector<int> cells;
    for (int i = 0; i < scan_points; ++i) {
        if (values[i] == 0.0 || values[i] * values[i + 1] < 0.0) {
            cells.push_back(i);
        }
    }
    if (cells.empty()) {
        throw NoBoundState("self-consistent scan found no sign change");
    }
    if (cells.size() > 1) {
        std::ostringstream os;
        os << "self-consistent scan found " << cells.size() << " sign changes near E =";
        for (int c : cells) os << " " << fmt(lo_end + (c + 0.5) * step);
        throw NonConvergent(os.str());
    }

    ScanResult out;
    double a = lo_end + cells[0] * step;
    double b = a + step;
    out.bracket_lo = a;
    out.bracket_hi = b;
    double fa = values[cells[0]];
    if (fa == 0.0) {
        out.value = a;
        return out;
    }
    double mid = a, fm = fa;
    for (int it = 0; it < 100; ++it) {
        mid = 0.5 * (a + b);
        fm = phi(mid);
        if ((b - a) < 1e-13 * mu) break;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    out.value = mid;
    out.residual = std::abs(fm);
    return out;
}

/// Polar finite-volume matrix on s in (-1, 1): cell centers, flux faces at
/// s = -1 + i h where the coefficient 1 - s^2 vanishes at both ends (natural
/// boundary, no extra condition).
// Polar eigenproblem on s = cos(theta). The eigenfunction behaves like
// (1 - s^2)^{w/2} at the endpoints, where w^2 = m^2 + c is the indicial
// exponent of the ODE's regular singular points. A scheme that samples the
// raw operator converges only like h^{2w} for fractional w, so we factor
// the local exponent out first: with H = (1 - s^2)^{w/2} v the problem
// becomes
//   -[ (1-s^2)^{w+1} v' ]' + (w^2 + w - c) (1-s^2)^w v = lambda (1-s^2)^w v
// whose eigenfunction v is smooth (polynomial), restoring clean h^2
// convergence. Finite volumes with the degenerate flux coefficient at the
// boundary faces give the natural boundary condition; the generalized
// problem is symmetrized by the cell masses. For w = 0 the scheme keeps
// lambda = 0 (constant) and lambda = 2 (linear) exact on any resolution.
void angular_matrix(int m, double c_ring, int n_cells, std::vector<double>& d,
                    std::vector<double>& e) {
    const double w = std::sqrt(static_cast<double>(m) * m + c_ring);
    const double q0 = w * w + w - c_ring;
    const double h = 2.0 / n_cells;
    d.resize(n_cells);
    e.assign(n_cells - 1, 0.0);
    std::vector<double> mass(n_cells);
    for (int i = 0; i < n_cells; ++i) {
        const double s = -1.0 + (i + 0.5) * h;
        mass[i] = std::pow(1.0 - s * s, w) * h;
        d[i] = q0 * mass[i];
    }
    for (int i = 0; i + 1 < n_cells; ++i) {
        const double f = -1.0 + (i + 1) * h;
        const double flux = std::pow(1.0 - f * f, w + 1.0) / h;
        d[i] += flux;
        d[i + 1] += flux;
        e[i] = -flux;
    }
    for (int i = 0; i < n_cells; ++i) d[i] /= mass[i];
    for (int i = 0; i + 1 < n_cells; ++i) e[i] /= std::sqrt(mass[i] * mass[i + 1]);
}

double angular_single(int m, double c_ring, int n_tilde, int n_cells) {
    if (n_cells < 16) {
        throw ParameterOutOfRange("polar grid needs at least 16 cells");
    }
    if (n_tilde >= n_cells) {
        throw ParameterOutOfRange("polar index exceeds grid resolution");
    }
    std::vector<double> d, e;
    angular_matrix(m, c_ring, n_cells, d, e);
    return kth_eigenvalue(d, e, n_tilde);
}

} // namespace

GridSpec GridSpec::radial_for_decay(double eps_estimate, int n_points) {
    if (!(eps_estimate > 0.0)) {
        throw ParameterOutOfRange("decay estimate must be positive");
    }
    GridSpec grid;
    grid.r_min = 0.0;
    grid.r_max = 40.0 / eps_estimate;
    grid.n_points = n_points;
    grid.validate();
    return grid;
}

void GridSpec::validate() const {
    if (n_points < 16) {
        throw ParameterOutOfRange("grid needs at least 16 points");
    }
    if (!(r_min >= 0.0) || !(r_min < r_max)) {
        throw ParameterOutOfRange("grid bounds must satisfy 0 <= r_min < r_max");
    }
}

namespace {

/// One self-consistent (or linear) eigensolve on a fixed grid.
double radial_eigen_on_grid(const PotentialSpec& spec, double j, bool relativistic, int n,
                            const GridSpec& grid) {
    const double cf0 = centrifugal(j, spec.D);
    const double mu = spec.mu;
    if (!relativistic) {
        const double a2 = 2.0 * mu;
        RadialMatrix m = radial_matrix(cf0 + a2 * spec.B, a2 * spec.A, grid);
        const double lambda = kth_eigenvalue(m.d, m.e, n);
        return lambda / (2.0 * mu);
    }
    auto phi = [&](double E) {
        const double a2 = mu + E;
        RadialMatrix m = radial_matrix(cf0 + a2 * spec.B, a2 * spec.A, grid);
        return kth_eigenvalue(m.d, m.e, n) - (E * E - mu * mu);
    };
    return self_consistent_root(phi, mu, 160).value;
}

EnergyLevel certified(double coarse, double fine, double mu, bool relativistic,
                      const GridSpec& grid) {
    const double gap = std::abs(fine - coarse);
    const double scale = std::max(std::abs(fine), relativistic ? mu : 1e-6);
    if (gap > 1e-3 * scale) {
        throw GridTooCoarse("refinement " + std::to_string(grid.n_points) + " -> " +
                            std::to_string(2 * grid.n_points) + " moved the eigenvalue by " +
                            fmt(gap) + " (" + fmt(gap / scale) + " relative)");
    }
    EnergyLevel level;
    level.value = (4.0 * fine - coarse) / 3.0;
    level.kind = relativistic ? EnergyKind::Relativistic : EnergyKind::Nonrelativistic;
    level.method = SolveMethod::Oracle;
    level.residual = gap;
    return level;
}

} // namespace

double fd_radial_eigen_single(const PotentialSpec& spec, double j, bool relativistic, int n,
                              const GridSpec& grid) {
    spec.validate();
    grid.validate();
    if (n < 0) {
        throw NegativeIndex("radial index must be nonnegative");
    }
    return radial_eigen_on_grid(spec, j, relativistic, n, grid);
}

EnergyLevel fd_radial_eigen(const PotentialSpec& spec, double j, bool relativistic, int n,
                            const GridSpec& grid) {
    spec.validate();
    grid.validate();
    if (n < 0) {
        throw NegativeIndex("radial index must be nonnegative");
    }
    const double coarse = radial_eigen_on_grid(spec, j, relativistic, n, grid);
    GridSpec fine_grid = grid;
    fine_grid.n_points = 2 * grid.n_points;
    const double fine = radial_eigen_on_grid(spec, j, relativistic, n, fine_grid);
    return certified(coarse, fine, spec.mu, relativistic, grid);
}

double fd_angular_eigen(int m, double c_ring, int D, int n_tilde, int n_cells) {
    if (D < 2) {
        throw ParameterOutOfRange("dimension must be at least 2");
    }
    if (m < 0 || n_tilde < 0) {
        throw NegativeIndex("polar indices must be nonnegative");
    }
    const double coarse = angular_single(m, c_ring, n_tilde, n_cells);
    const double fine = angular_single(m, c_ring, n_tilde, 2 * n_cells);
    const double gap = std::abs(fine - coarse);
    if (gap > 1e-3 * std::max(std::abs(fine), 1.0)) {
        throw GridTooCoarse("polar refinement moved the eigenvalue by " + fmt(gap));
    }
    return (4.0 * fine - coarse) / 3.0;
}

EnergyLevel fd_noncentral_eigen(const PotentialSpec& spec, const QuantumNumbers& q,
                                const GridSpec& grid, int angular_cells) {
    spec.validate();
    grid.validate();
    if (q.n < 0 || q.n_tilde < 0 || q.m < 0) {
        throw NegativeIndex("quantum numbers must be nonnegative");
    }
    const double mu = spec.mu;
    const double dim_shift = 0.25 * (spec.D - 1.0) * (spec.D - 3.0);

    auto solve_once = [&](int n_pts, int cells) {
        GridSpec g = grid;
        g.n_points = n_pts;
        auto phi = [&](double E) {
            const double a2 = mu + E;
            const double lambda_polar = angular_single(q.m, spec.C * a2, q.n_tilde, cells);
            RadialMatrix m = radial_matrix(lambda_polar + dim_shift + a2 * spec.B, a2 * spec.A, g);
            return kth_eigenvalue(m.d, m.e, q.n) - (E * E - mu * mu);
        };
        return self_consistent_root(phi, mu, 160).value;
    };

    const double coarse = solve_once(grid.n_points, angular_cells);
    const double fine = solve_once(2 * grid.n_points, 2 * angular_cells);
    return certified(coarse, fine, mu, true, grid);
}

ResidualReport residual(OdeId id, const OdeParams& params,
                        const std::function<double(double)>& y,
                        const std::vector<double>& sample_points) {
    const PotentialSpec& spec = params.spec;

    auto defect = [&](double x, double yv, double dy, double d2y) {
        switch (id) {
            case OdeId::RadialRel: {
                const double a2 = spec.mu + params.energy;
                const double lam = params.j * (params.j + spec.D - 2.0);
                return d2y + (spec.D - 1.0) / x * dy -
                       (lam / (x * x) + (spec.mu * spec.mu - params.energy * params.energy) -
                        a2 * (spec.A / x - spec.B / (x * x))) *
                           yv;
            }
            case OdeId::RadialNR: {
                const double lam = params.j * (params.j + spec.D - 2.0);
                return d2y + (spec.D - 1.0) / x * dy -
                       (lam / (x * x) -
                        2.0 * spec.mu *
                            (params.energy + spec.A / x - spec.B / (x * x))) *
                           yv;
            }
            case OdeId::PolarRel: {
                const double st = std::sin(x);
                const double ct = std::cos(x);
                return d2y + ct / st * dy +
                       (params.lambda_polar -
                        (static_cast<double>(params.m) * params.m + params.c_ring * ct * ct) /
                            (st * st)) *
                           yv;
            }
        }
        return 0.0;
    };

    double max_abs_y = 0.0;
    for (double x : sample_points) {
        max_abs_y = std::max(max_abs_y, std::abs(y(x)));
    }
    ResidualReport report;
    if (max_abs_y == 0.0) {
        report.degenerate = true;
        return report;
    }

    for (double x : sample_points) {
        const double h = 1e-3 * std::max(std::abs(x), 1e-2);
        const double ym2 = y(x - 2.0 * h), ym1 = y(x - h), y0 = y(x), yp1 = y(x + h),
                     yp2 = y(x + 2.0 * h);
        const double dy = (8.0 * (yp1 - ym1) - (yp2 - ym2)) / (12.0 * h);
        const double d2y = (-(yp2 + ym2) + 16.0 * (yp1 + ym1) - 30.0 * y0) / (12.0 * h * h);
        report.max_residual = std::max(report.max_residual, std::abs(defect(x, y0, dy, d2y)));
    }
    report.max_residual /= max_abs_y;
    return report;
}

GridFunction fd_radial_eigenvector(const PotentialSpec& spec, double j, bool relativistic, int n,
                                   const GridSpec& grid) {
    spec.validate();
    grid.validate();
    const double E = radial_eigen_on_grid(spec, j, relativistic, n, grid);
    const double a2 = relativistic ? spec.mu + E : 2.0 * spec.mu;
    const double lambda = relativistic ? E * E - spec.mu * spec.mu : 2.0 * spec.mu * E;
    RadialMatrix m = radial_matrix(centrifugal(j, spec.D) + a2 * spec.B, a2 * spec.A, grid);

    const std::size_t N = m.d.size();
    std::vector<double> x(N);
    for (std::size_t i = 0; i < N; ++i) {
        x[i] = 1.0 + 0.3 * std::sin(7.1 * static_cast<double>(i));
    }
    const double shift = lambda + 1e-10 * std::max(std::abs(lambda), 1.0);
    for (int it = 0; it < 4; ++it) {
        x = solve_shifted(m.d, m.e, shift, x);
        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
    }
    double norm_sq = 0.0;
    for (double v : x) norm_sq += v * v * m.h;
    const double scale = 1.0 / std::sqrt(norm_sq);
    GridFunction out;
    out.x = m.r;
    out.y.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.y[i] = x[i] * scale;
    }
    return out;
}

} // namespace kgring::oracle
