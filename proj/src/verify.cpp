#include "kgring/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "kgring/nu_engine.hpp"
#include "kgring/oracle.hpp"
#include "kgring/special_fn.hpp"
#include "kgring/spectrum.hpp"
#include "kgring/wavefn.hpp"

namespace kgring::verify {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

CheckResult guarded(const std::string& name, double tolerance,
                    const std::function<CheckResult(CheckResult)>& body) {
    CheckResult result;
    result.name = name;
    result.tolerance = tolerance;
    try {
        return body(result);
    } catch (const GridTooCoarse& e) {
        result.pass = false;
        result.detail = std::string("GridTooCoarse: ") + e.what();
    } catch (const Error& e) {
        result.pass = false;
        result.detail = e.what();
    } catch (const std::exception& e) {
        result.pass = false;
        result.detail = e.what();
    }
    return result;
}

double slope_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct OracleCase {
    double a0, r0, C;
    int D, n, n_tilde, m;
};

const OracleCase kCentralCases[] = {
    {0.1, 1.0, 0.0, 3, 0, 0, 0},
    {0.1, 1.0, 0.0, 3, 1, 0, 0},
    {0.2, 1.5, 0.0, 4, 0, 1, 0},
};

const OracleCase kNoncentralCases[] = {
    {0.1, 1.0, 0.05, 3, 0, 0, 0},
    {0.15, 1.0, 0.10, 3, 0, 1, 1},
    {0.1, 2.0, 0.02, 5, 1, 0, 1},
};

const OracleCase kNonrelCases[] = {
    {0.1, 1.0, 0.0, 3, 0, 0, 0},
    {0.1, 1.0, 0.0, 3, 1, 0, 0},
    {0.2, 1.5, 0.05, 3, 0, 0, 0},
    {0.15, 1.0, 0.0, 4, 0, 1, 1},
};

double closed_relativistic(const OracleCase& c) {
    const PotentialSpec spec = PotentialSpec::kratzer(c.a0, c.r0, c.C, 1.0, c.D);
    const QuantumNumbers q{c.n, c.n_tilde, c.m};
    return solve_noncentral_relativistic(spec, q).front().value;
}

CheckResult check_nu_angular(CheckResult r) {
    double worst = 0.0;
    for (const auto& [mp, nu_p] : {std::pair{1.0, 2.0}, std::pair{1.3, 3.7}}) {
        nu::Problem prob;
        prob.sigma = Poly{1.0, 0.0, -1.0};
        prob.tau_tilde = Poly{0.0, -2.0};
        prob.sigma_tilde = Poly{nu_p - mp * mp, 0.0, -nu_p};
        const auto sol = nu::select_branch(nu::pi_candidates(prob), prob);
        worst = std::max(worst, std::abs(sol.k - (nu_p - mp * mp)));
        worst = std::max(worst, std::abs(sol.pi[0]));
        worst = std::max(worst, std::abs(sol.pi[1] + mp));
        worst = std::max(worst, std::abs(sol.tau[1] + 2.0 * (1.0 + mp)));
        for (int nt = 0; nt <= 3; ++nt) {
            const double expected = 2.0 * nt * (1.0 + mp) + nt * (nt - 1.0);
            worst = std::max(worst, std::abs(nu::lambda_n(sol, prob, nt) - expected));
        }
        worst = std::max(worst,
                         std::abs(nu::lambda_from_k(sol) - (nu_p - mp * (1.0 + mp))));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_nu_radial(CheckResult r) {
    double worst = 0.0;
    for (const auto& [eps, beta_sq, gamma_sq] :
         {std::tuple{0.8, 1.8, 0.75}, std::tuple{0.37, 1.21, 1.93}}) {
        const double zeta = std::sqrt(4.0 * gamma_sq + 1.0);
        nu::Problem prob;
        prob.sigma = Poly{0.0, 1.0};
        prob.tau_tilde = Poly{};
        prob.sigma_tilde = Poly{-gamma_sq, beta_sq, -eps * eps};
        const auto sol = nu::select_branch(nu::pi_candidates(prob), prob);
        worst = std::max(worst, std::abs(sol.k - (beta_sq - eps * zeta)));
        worst = std::max(worst, std::abs(sol.pi[0] - 0.5 * (1.0 + zeta)));
        worst = std::max(worst, std::abs(sol.pi[1] + eps));
        worst = std::max(worst, std::abs(sol.tau[0] - (1.0 + zeta)));
        worst = std::max(worst, std::abs(sol.tau_slope + 2.0 * eps));
        for (int n = 0; n <= 3; ++n) {
            worst = std::max(worst, std::abs(nu::lambda_n(sol, prob, n) - 2.0 * n * eps));
        }
        worst = std::max(worst, std::abs(nu::lambda_from_k(sol) -
                                          (beta_sq - eps * (1.0 + zeta))));
        const auto w = nu::rodrigues_weight(sol, prob);
        worst = std::max(worst, std::abs(w.power - zeta));
        worst = std::max(worst, std::abs(w.decay - 2.0 * eps));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_nu_reconstruction(CheckResult r) {
    double worst = 0.0;
    {
        // sigma = r family: phi = r^{pi0} exp(pi1 r)
        const double eps = 0.8, beta_sq = 1.8, gamma_sq = 0.75;
        nu::Problem prob;
        prob.sigma = Poly{0.0, 1.0};
        prob.sigma_tilde = Poly{-gamma_sq, beta_sq, -eps * eps};
        const auto sol = nu::select_branch(nu::pi_candidates(prob), prob);
        auto phi = [&](double x) {
            return std::pow(x, sol.pi[0]) * std::exp(sol.pi[1] * x);
        };
        for (double x : {0.3, 0.9, 2.1, 5.5}) {
            const double h = 1e-5 * x;
            const double dphi = (8.0 * (phi(x + h) - phi(x - h)) -
                                 (phi(x + 2 * h) - phi(x - 2 * h))) /
                                (12.0 * h);
            const double lhs = prob.sigma(x) * dphi / phi(x);
            worst = std::max(worst, std::abs(lhs - sol.pi(x)));
        }
    }
    {
        // sigma = 1 - s^2 family: phi = (1 - s^2)^{m'/2}
        const double mp = 1.3, nu_p = 3.7;
        nu::Problem prob;
        prob.sigma = Poly{1.0, 0.0, -1.0};
        prob.tau_tilde = Poly{0.0, -2.0};
        prob.sigma_tilde = Poly{nu_p - mp * mp, 0.0, -nu_p};
        const auto sol = nu::select_branch(nu::pi_candidates(prob), prob);
        auto phi = [&](double s) { return std::pow(1.0 - s * s, mp / 2.0); };
        for (double s : {-0.7, -0.2, 0.4, 0.8}) {
            const double h = 1e-5;
            const double dphi = (8.0 * (phi(s + h) - phi(s - h)) -
                                 (phi(s + 2 * h) - phi(s - 2 * h))) /
                                (12.0 * h);
            const double lhs = prob.sigma(s) * dphi / phi(s);
            worst = std::max(worst, std::abs(lhs - sol.pi(s)));
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_c0_reduction(CheckResult r) {
    double worst = 0.0;
    for (int D : {3, 4}) {
        const PotentialSpec spec = PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, D);
        for (const auto& [nt, m] : {std::pair{0, 0}, std::pair{1, 1}}) {
            const QuantumNumbers q{0, nt, m};
            const double via_coupled = solve_noncentral_relativistic(spec, q).front().value;
            const double j = angular_j(nt, m, 0.0, 1.0, D).j;
            const double via_radial = solve_radial_relativistic(spec, 0, j).front().value;
            worst = std::max(worst, std::abs(via_coupled - via_radial));
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_coulomb_consistency(CheckResult r) {
    double worst = 0.0;
    for (double qe : {0.5, 1.0}) {
        for (int D : {3, 4, 5}) {
            const PotentialSpec spec = PotentialSpec::general(qe, 0.0, 0.0, 1.0, D);
            for (int n = 0; n <= 2; ++n) {
                for (int ell = 0; ell <= 2; ++ell) {
                    const double closed = coulomb_energy(qe, spec, n, ell).value;
                    const auto roots = solve_radial_relativistic(spec, n, ell);
                    double best = 1e300;
                    for (const auto& root : roots) {
                        best = std::min(best, std::abs(root.value - closed));
                    }
                    worst = std::max(worst, best);
                }
            }
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_quantum_roundtrip(CheckResult r) {
    double worst = 0.0;
    int points = 0;
    for (int nt = 0; nt <= 5; ++nt) {
        for (int m : {0, 1, 2}) {
            for (double C : {0.0, 0.3}) {
                for (int D : {3, 4, 5}) {
                    const double a2 = 1.7;
                    const auto ang = angular_j(nt, m, C, a2, D);
                    const double back = angular_ntilde(ang.j, m, C, a2, D);
                    worst = std::max(worst, std::abs(back - nt));
                    if (C == 0.0 && D == 3) {
                        // The ring-free three-dimensional case must recover
                        // the integer orbital momentum exactly.
                        worst = std::max(worst, std::abs(ang.j - (nt + m)));
                    }
                    ++points;
                }
            }
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance && points >= 100;
    r.detail = std::to_string(points) + " grid points";
    return r;
}

CheckResult check_series_order(CheckResult r) {
    const PotentialSpec base = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
    std::vector<double> qes{0.1, 0.05, 0.025};
    std::vector<double> gaps;
    for (double qe : qes) {
        const double exact = coulomb_energy(qe, base, 0, 0).value;
        const double series = coulomb_series(qe, base, 0, 0, 2).value;
        gaps.push_back(std::abs(exact - series));
    }
    const double slope = slope_loglog(qes, gaps);
    r.measured = slope;
    r.pass = std::abs(slope - 6.0) <= r.tolerance;
    r.detail = "log-log slope of the truncation gap";
    return r;
}

CheckResult check_oracle_relativistic(CheckResult r, const Options& opt) {
    double worst = 0.0;
    for (const auto& c : kCentralCases) {
        const PotentialSpec spec = PotentialSpec::kratzer(c.a0, c.r0, c.C, 1.0, c.D);
        const double closed = closed_relativistic(c);
        const double j = angular_j(c.n_tilde, c.m, 0.0, 1.0, c.D).j;
        const double eps = std::sqrt(1.0 - closed * closed);
        const auto grid = oracle::GridSpec::radial_for_decay(eps, opt.radial_points);
        const auto level = oracle::fd_radial_eigen(spec, j, true, c.n, grid);
        worst = std::max(worst, std::abs(level.value - closed));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_oracle_noncentral(CheckResult r, const Options& opt) {
    double worst = 0.0;
    for (const auto& c : kNoncentralCases) {
        const PotentialSpec spec = PotentialSpec::kratzer(c.a0, c.r0, c.C, 1.0, c.D);
        const QuantumNumbers q{c.n, c.n_tilde, c.m};
        const double closed = closed_relativistic(c);
        const double eps = std::sqrt(1.0 - closed * closed);
        const auto grid = oracle::GridSpec::radial_for_decay(eps, opt.radial_points);
        const auto level = oracle::fd_noncentral_eigen(spec, q, grid, opt.angular_cells);
        worst = std::max(worst, std::abs(level.value - closed) / std::abs(closed));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_oracle_nonrelativistic(CheckResult r, const Options& opt) {
    double worst = 0.0;
    for (const auto& c : kNonrelCases) {
        const PotentialSpec spec = PotentialSpec::kratzer(c.a0, c.r0, c.C, 1.0, c.D);
        const QuantumNumbers q{c.n, c.n_tilde, c.m};
        const double closed = nonrel_energy(spec, q).value;
        // Effective orbital momentum straight from the polar oracle.
        const double lam = oracle::fd_angular_eigen(c.m, 2.0 * spec.mu * spec.C, c.D, c.n_tilde,
                                                    opt.angular_cells);
        const double d2 = 0.5 * (c.D - 2);
        const double ell_eff = -d2 + std::sqrt(d2 * d2 + lam);
        const double eps = std::sqrt(-2.0 * spec.mu * closed);
        const auto grid = oracle::GridSpec::radial_for_decay(eps, opt.radial_points);
        const auto level = oracle::fd_radial_eigen(spec, ell_eff, false, c.n, grid);
        worst = std::max(worst, std::abs(level.value - closed));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_oracle_convergence(CheckResult r, const Options& opt) {
    const PotentialSpec spec = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
    const double exact = 0.6;
    const double eps = std::sqrt(1.0 - exact * exact);

    // The refinement certificate must hold at the configured resolution.
    const auto grid = oracle::GridSpec::radial_for_decay(eps, opt.radial_points);
    oracle::fd_radial_eigen(spec, 0.0, true, 0, grid);

    std::vector<double> hs, errs;
    for (int scale : {4, 2, 1}) {
        const int n_pts = std::max(200, opt.radial_points / scale);
        const auto g = oracle::GridSpec::radial_for_decay(eps, n_pts);
        const double e = oracle::fd_radial_eigen_single(spec, 0.0, true, 0, g);
        hs.push_back((g.r_max - g.r_min) / (n_pts + 1));
        errs.push_back(std::abs(e - exact));
    }
    const double slope = slope_loglog(hs, errs);
    r.measured = slope;
    r.pass = std::abs(slope - 2.0) <= r.tolerance;
    r.detail = "eigenvalue error order in the grid spacing";
    return r;
}

struct StateFamily {
    PotentialSpec spec;
    QuantumNumbers q;
};

std::vector<StateFamily> normalization_sets() {
    return {
        {PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, 3), {0, 0, 0}},
        {PotentialSpec::kratzer(0.2, 1.5, 0.1, 1.0, 4), {0, 1, 1}},
    };
}

double radial_norm_integral(const RadialState& state, int D) {
    const auto rule = QuadratureRule::adaptive_simpson(1e-10, 1 << 21);
    const double r_cut = (60.0 + 10.0 * state.zeta + 20.0 * state.n) / (2.0 * state.epsilon);
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double R = radial(state, r);
        return R * R * std::pow(r, D - 1);
    };
    return integrate(f, rule, 0.0, r_cut).value;
}

CheckResult check_normalization_radial(CheckResult r) {
    double worst = 0.0;
    for (const auto& fam : normalization_sets()) {
        for (int n = 0; n <= 3; ++n) {
            for (int nt = 0; nt <= 3; ++nt) {
                QuantumNumbers q = fam.q;
                q.n = n;
                q.n_tilde = nt;
                const auto level = solve_noncentral_relativistic(fam.spec, q).front();
                const auto d = derived_numbers(fam.spec, q, level.value);
                const auto state = RadialState::make(fam.spec, level, n, d.j);
                worst = std::max(worst,
                                 std::abs(radial_norm_integral(state, fam.spec.D) - 1.0));
            }
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_normalization_angular(CheckResult r) {
    double worst = 0.0;
    const auto rule = QuadratureRule::adaptive_simpson(1e-10, 1 << 21);
    auto probe = [&](int nt, double m_prime) {
        const auto state = AngularState::make(nt, m_prime);
        auto f = [&](double theta) {
            const double H = angular(state, theta);
            return H * H * std::sin(theta);
        };
        const double I = integrate(f, rule, 0.0, M_PI).value;
        worst = std::max(worst, std::abs(I - 1.0));
    };
    // Polar factors of the actual bound states at both parameter sets,
    // where the ring index is energy dependent.
    for (const auto& fam : normalization_sets()) {
        for (int n = 0; n <= 3; ++n) {
            for (int nt = 0; nt <= 3; ++nt) {
                QuantumNumbers q = fam.q;
                q.n = n;
                q.n_tilde = nt;
                const auto level = solve_noncentral_relativistic(fam.spec, q).front();
                const auto d = derived_numbers(fam.spec, q, level.value);
                probe(nt, d.m_prime);
            }
        }
    }
    // A couple of standalone fractional indices for extra coverage.
    for (int nt = 0; nt <= 3; ++nt) {
        probe(nt, std::sqrt(2.0));
        probe(nt, 2.7);
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_normalization_azimuthal(CheckResult r) {
    double worst = 0.0;
    const auto rule = QuadratureRule::adaptive_simpson(1e-10, 1 << 20);
    for (int m : {0, 1, 3}) {
        auto f = [&](double phi) { return std::norm(azimuthal(m, phi)); };
        const double I = integrate(f, rule, 0.0, 2.0 * M_PI).value;
        worst = std::max(worst, std::abs(I - 1.0));
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_normalization_total(CheckResult r) {
    double worst = 0.0;
    const auto rule_r = QuadratureRule::gauss_legendre(400);
    const auto rule_t = QuadratureRule::gauss_legendre(96);
    const double phi0 = 0.7;
    for (const auto& fam : normalization_sets()) {
        for (int n = 0; n <= 3; ++n) {
            for (int nt = 0; nt <= 3; ++nt) {
                QuantumNumbers q = fam.q;
                q.n = n;
                q.n_tilde = nt;
                const auto level = solve_noncentral_relativistic(fam.spec, q).front();
                const auto d = derived_numbers(fam.spec, q, level.value);
                const auto rad = RadialState::make(fam.spec, level, q.n, d.j);
                const auto ang = AngularState::make(q.n_tilde, d.m_prime);
                const double r_cut =
                    (60.0 + 10.0 * rad.zeta + 20.0 * rad.n) / (2.0 * rad.epsilon);

                auto inner = [&](double rr) {
                    auto g = [&](double theta) {
                        const double a =
                            std::abs(total(rad, ang, q.m, rr, theta, phi0));
                        return a * a * std::sin(theta);
                    };
                    return integrate(g, rule_t, 0.0, M_PI).value;
                };
                auto outer = [&](double rr) {
                    return inner(rr) * std::pow(rr, fam.spec.D - 1);
                };
                const double I =
                    integrate(outer, rule_r, 1e-12, r_cut).value * 2.0 * M_PI;
                worst = std::max(worst, std::abs(I - 1.0));
            }
        }
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_radial_orthogonality(CheckResult r) {
    const auto fam = normalization_sets()[0];
    std::vector<RadialState> states;
    for (int n = 0; n <= 3; ++n) {
        QuantumNumbers q = fam.q;
        q.n = n;
        const auto level = solve_noncentral_relativistic(fam.spec, q).front();
        const auto d = derived_numbers(fam.spec, q, level.value);
        states.push_back(RadialState::make(fam.spec, level, n, d.j));
    }
    const auto rule = QuadratureRule::adaptive_simpson(1e-9, 1 << 21);
    double worst = 0.0;
    double eps_min = 1e300;
    for (const auto& s : states) eps_min = std::min(eps_min, s.epsilon);
    const double r_cut = 120.0 / eps_min;
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            auto f = [&](double rr) {
                if (rr <= 0.0) return 0.0;
                return radial(states[a], rr) * radial(states[b], rr) *
                       std::pow(rr, fam.spec.D - 1);
            };
            worst = std::max(worst, std::abs(integrate(f, rule, 0.0, r_cut).value));
        }
    }
    r.measured = worst;
    r.pass = true;
    r.detail = "off-diagonal overlap reported, not asserted (each level has its own decay scale)";
    return r;
}

CheckResult check_node_counts(CheckResult r) {
    const auto fam = normalization_sets()[0];
    int worst = 0;
    for (int n = 0; n <= 3; ++n) {
        QuantumNumbers q = fam.q;
        q.n = n;
        const auto level = solve_noncentral_relativistic(fam.spec, q).front();
        const auto d = derived_numbers(fam.spec, q, level.value);
        const auto state = RadialState::make(fam.spec, level, n, d.j);
        const int nodes = radial_node_count(state, 40.0 / state.epsilon);
        worst = std::max(worst, std::abs(nodes - n));
    }
    for (int nt = 0; nt <= 3; ++nt) {
        const auto state = AngularState::make(nt, std::sqrt(2.0));
        worst = std::max(worst, std::abs(angular_node_count(state) - nt));
    }
    r.measured = worst;
    r.pass = worst == 0;
    return r;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out;
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < count; ++i) {
        out.push_back(lo * std::exp(ratio * i / (count - 1)));
    }
    return out;
}

CheckResult check_ode_residual_radial(CheckResult r) {
    double worst = 0.0;
    {
        // Pure Coulomb ground state, exact energy 3/5.
        const PotentialSpec spec = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
        EnergyLevel level;
        level.value = 0.6;
        const auto state = RadialState::make(spec, level, 0, 0.0);
        oracle::OdeParams params;
        params.spec = spec;
        params.j = 0.0;
        params.energy = level.value;
        auto y = [&](double rr) { return radial(state, rr); };
        const auto rep = oracle::residual(oracle::OdeId::RadialRel, params, y,
                                          log_spaced(0.1 / state.epsilon, 20.0 / state.epsilon, 50));
        worst = std::max(worst, rep.max_residual);
    }
    {
        // Ring-shaped Kratzer excited state.
        const PotentialSpec spec = PotentialSpec::kratzer(0.2, 1.5, 0.1, 1.0, 4);
        const QuantumNumbers q{1, 1, 1};
        const auto level = solve_noncentral_relativistic(spec, q).front();
        const auto d = derived_numbers(spec, q, level.value);
        const auto state = RadialState::make(spec, level, q.n, d.j);
        oracle::OdeParams params;
        params.spec = spec;
        params.j = d.j;
        params.energy = level.value;
        auto y = [&](double rr) { return radial(state, rr); };
        const auto rep = oracle::residual(oracle::OdeId::RadialRel, params, y,
                                          log_spaced(0.1 / state.epsilon, 20.0 / state.epsilon, 50));
        worst = std::max(worst, rep.max_residual);
    }
    r.measured = worst;
    r.pass = worst <= r.tolerance;
    return r;
}

CheckResult check_ode_residual_nonrel(CheckResult r) {
    const PotentialSpec spec = PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, 3);
    const QuantumNumbers q{0, 0, 0};
    const double E = nonrel_energy(spec, q).value;
    const double eps = std::sqrt(-2.0 * spec.mu * E);
    const double d2 = spec.D - 2.0;
    const double zeta = std::sqrt(d2 * d2 + 8.0 * spec.mu * spec.B);
    auto y = [&](double rr) {
        return std::pow(rr, 0.5 * (zeta + 2.0 - spec.D)) * std::exp(-eps * rr) *
               laguerre(q.n, zeta, 2.0 * eps * rr);
    };
    oracle::OdeParams params;
    params.spec = spec;
    params.j = 0.0;
    params.energy = E;
    const auto rep = oracle::residual(oracle::OdeId::RadialNR, params, y,
                                      log_spaced(0.1 / eps, 20.0 / eps, 50));
    r.measured = rep.max_residual;
    r.pass = r.measured <= r.tolerance;
    return r;
}

CheckResult check_ode_residual_angular(CheckResult r) {
    const int m = 1;
    const double c_ring = 1.0;
    const double m_prime = std::sqrt(2.0);
    const int nt = 2;
    const auto state = AngularState::make(nt, m_prime);
    const double lp = nt + m_prime;
    oracle::OdeParams params;
    params.m = m;
    params.c_ring = c_ring;
    params.lambda_polar = lp * (lp + 1.0) - c_ring;
    auto y = [&](double theta) { return angular(state, theta); };
    std::vector<double> samples;
    for (int i = 0; i < 50; ++i) {
        samples.push_back(0.15 + (M_PI - 0.3) * i / 49.0);
    }
    const auto rep = oracle::residual(oracle::OdeId::PolarRel, params, y, samples);
    r.measured = rep.max_residual;
    r.pass = r.measured <= r.tolerance;
    return r;
}

CheckResult check_ode_residual_sensitivity(CheckResult r) {
    const PotentialSpec spec = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
    EnergyLevel level;
    level.value = 0.6;
    const auto state = RadialState::make(spec, level, 0, 0.0);
    oracle::OdeParams params;
    params.spec = spec;
    params.j = 0.0;
    params.energy = level.value;
    const double r_c = 2.0 / state.epsilon;
    const double w = 0.4 / state.epsilon;
    const double peak = radial(state, 1.0 / state.epsilon);
    auto y = [&](double rr) {
        const double bump = 0.01 * peak * std::exp(-(rr - r_c) * (rr - r_c) / (2.0 * w * w));
        return radial(state, rr) + bump;
    };
    const auto rep = oracle::residual(oracle::OdeId::RadialRel, params, y,
                                      log_spaced(0.1 / state.epsilon, 20.0 / state.epsilon, 50));
    r.measured = rep.max_residual;
    r.pass = r.measured > r.tolerance;
    r.detail = "perturbed control must exceed the tolerance";
    return r;
}

CheckResult check_nonrel_limit(CheckResult r) {
    std::vector<double> gaps;
    std::ostringstream detail;
    for (double a0 : {0.1, 0.05, 0.025}) {
        const PotentialSpec spec = PotentialSpec::kratzer(a0, 1.0, 0.0, 1.0, 3);
        const QuantumNumbers q{0, 0, 0};
        const auto level = solve_noncentral_relativistic(spec, q).front();
        const auto lim = nonrel_limit_map(level, spec, q);
        gaps.push_back(lim.relative_gap);
        detail << " " << fmt(lim.relative_gap);
    }
    const bool monotone = gaps[0] > gaps[1] && gaps[1] > gaps[2];
    r.measured = gaps[0];
    r.pass = monotone && gaps[0] <= r.tolerance;
    r.detail = "relative gaps along the coupling sequence:" + detail.str();
    return r;
}

} // namespace

std::vector<CheckResult> run_all(const Options& options) {
    std::vector<CheckResult> results;
    auto add = [&](const std::string& name, double tol,
                   const std::function<CheckResult(CheckResult)>& body) {
        results.push_back(guarded(name, tol, body));
    };

    add("nu_angular_regression", 1e-12, check_nu_angular);
    add("nu_radial_regression", 1e-12, check_nu_radial);
    add("nu_reconstruction", 1e-9, check_nu_reconstruction);
    add("c0_reduction", 1e-12, check_c0_reduction);
    add("coulomb_consistency", 1e-10, check_coulomb_consistency);
    add("quantum_roundtrip", 1e-10, check_quantum_roundtrip);
    add("series_order", 0.5, check_series_order);
    add("oracle_relativistic", options.oracle_tol_relativistic,
        [&](CheckResult r) { return check_oracle_relativistic(std::move(r), options); });
    add("oracle_noncentral", 1e-3,
        [&](CheckResult r) { return check_oracle_noncentral(std::move(r), options); });
    add("oracle_nonrelativistic", options.oracle_tol_nonrelativistic,
        [&](CheckResult r) { return check_oracle_nonrelativistic(std::move(r), options); });
    add("oracle_convergence", 0.3,
        [&](CheckResult r) { return check_oracle_convergence(std::move(r), options); });
    add("normalization_radial", options.normalization_tol, check_normalization_radial);
    add("normalization_angular", options.normalization_tol, check_normalization_angular);
    add("normalization_azimuthal", options.normalization_tol, check_normalization_azimuthal);
    add("normalization_total", options.normalization_tol, check_normalization_total);
    add("radial_orthogonality", 0.0, check_radial_orthogonality);
    add("node_counts", 0.0, check_node_counts);
    add("ode_residual_radial", options.residual_tol, check_ode_residual_radial);
    add("ode_residual_nonrel", options.residual_tol, check_ode_residual_nonrel);
    add("ode_residual_angular", options.residual_tol, check_ode_residual_angular);
    add("ode_residual_sensitivity", 1e-3, check_ode_residual_sensitivity);
    add("nonrel_limit_gap", 0.02, check_nonrel_limit);
    return results;
}

} // namespace kgring::verify
