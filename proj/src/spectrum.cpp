#include "kgring/spectrum.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace kgring {

namespace {

constexpr int kScanPoints = 10000;
constexpr double kEndpointGuard = 1e-6;
constexpr double kRootTol = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

} // namespace

PotentialSpec PotentialSpec::kratzer(double a0, double r0, double C, double mu, int D) {
    PotentialSpec spec;
    spec.a0 = a0;
    spec.r0 = r0;
    spec.A = 2.0 * a0 * r0;
    spec.B = a0 * r0 * r0;
    spec.C = C;
    spec.mu = mu;
    spec.D = D;
    spec.kratzer_form = true;
    spec.validate();
    return spec;
}

PotentialSpec PotentialSpec::general(double A, double B, double C, double mu, int D) {
    PotentialSpec spec;
    spec.A = A;
    spec.B = B;
    spec.C = C;
    spec.mu = mu;
    spec.D = D;
    spec.kratzer_form = false;
    spec.validate();
    return spec;
}

void PotentialSpec::validate() const {
    if (!(mu > 0.0)) {
        throw ParameterOutOfRange("rest mass must be positive");
    }
    if (D < 2) {
        throw ParameterOutOfRange("dimension must be at least 2");
    }
    if (C < 0.0) {
        throw InvalidCoupling("ring coupling must be nonnegative");
    }
    if (kratzer_form && !(r0 > 0.0)) {
        throw ParameterOutOfRange("equilibrium distance must be positive");
    }
}

AngularMomenta angular_j(int n_tilde, int m, double C, double alpha2_sq, int D) {
    if (n_tilde < 0) {
        throw NegativeIndex("polar index must be nonnegative");
    }
    if (m < 0) {
        throw ParameterOutOfRange("azimuthal index must be nonnegative");
    }
    if (D < 2) {
        throw ParameterOutOfRange("dimension must be at least 2");
    }
    const double ring = C * alpha2_sq;
    const double mp_sq = static_cast<double>(m) * m + ring;
    if (mp_sq < 0.0) {
        throw ComplexAngularMomentum("m'^2 = m^2 + C alpha2^2 is negative");
    }
    AngularMomenta out;
    out.m_prime = std::sqrt(mp_sq);
    const double base = 2.0 * n_tilde + 2.0 * out.m_prime + 1.0;
    const double d2 = static_cast<double>(D - 2);
    const double rad_j = d2 * d2 + base * base - 4.0 * ring - 1.0;
    if (rad_j < 0.0) {
        throw ComplexAngularMomentum("ring coupling too strong: j radicand " + fmt(rad_j));
    }
    out.j = -0.5 * d2 + 0.5 * std::sqrt(rad_j);
    out.j_prime = -0.5 * d2 + 0.5 * std::sqrt(d2 * d2 + base * base - 1.0);
    return out;
}

double angular_ntilde(double j, int m, double C, double alpha2_sq, int D) {
    if (m < 0) {
        throw ParameterOutOfRange("azimuthal index must be nonnegative");
    }
    if (D < 2) {
        throw ParameterOutOfRange("dimension must be at least 2");
    }
    const double ring = C * alpha2_sq;
    const double mp_sq = static_cast<double>(m) * m + ring;
    if (mp_sq < 0.0) {
        throw ComplexAngularMomentum("m'^2 = m^2 + C alpha2^2 is negative");
    }
    const double m_prime = std::sqrt(mp_sq);
    const double rad = (2.0 * j + 1.0) * (2.0 * j + 1.0) + 4.0 * j * (D - 3) + 4.0 * ring;
    if (rad < 0.0) {
        throw ComplexAngularMomentum("polar-index radicand is negative: " + fmt(rad));
    }
    const double n_tilde = -0.5 * (1.0 + 2.0 * m_prime) + 0.5 * std::sqrt(rad);
    if (n_tilde < -1e-10) {
        throw NegativeIndex("inconsistent inputs: recovered polar index " + fmt(n_tilde));
    }
    return n_tilde;
}

double radial_eigen_equation(const PotentialSpec& spec, int n, double j, double E) {
    const double a2 = spec.mu + E;
    const double d = spec.D + 2.0 * j - 2.0;
    const double rad = d * d + 4.0 * a2 * spec.B;
    if (rad < 0.0) {
        throw InvalidCoupling("radial radicand negative at E = " + fmt(E));
    }
    return (1.0 + 2.0 * n + std::sqrt(rad)) * std::sqrt(spec.mu - E) -
           spec.A * std::sqrt(a2);
}

double noncentral_eigen_equation(const PotentialSpec& spec, const QuantumNumbers& q, double E) {
    const double a2 = spec.mu + E;
    const AngularMomenta ang = angular_j(q.n_tilde, q.m, spec.C, a2, spec.D);
    const double d = 2.0 * ang.j_prime + spec.D - 2.0;
    const double rad = d * d + 4.0 * (spec.B - spec.C) * a2;
    if (rad < 0.0) {
        throw InvalidCoupling("noncentral radicand negative at E = " + fmt(E));
    }
    return (1.0 + 2.0 * q.n + std::sqrt(rad)) * std::sqrt(spec.mu - E) -
           spec.A * std::sqrt(a2);
}

namespace {

// Scan f over (-mu + guard, mu - guard) on a uniform grid, bisect every sign
// change. Evaluation failures abort the solve: a negative inner radicand
// anywhere in the window is an InvalidCoupling diagnosis, not a skippable
// point.
std::vector<EnergyLevel> scan_and_bisect(const std::function<double(double)>& f, double mu) {
    const double lo = -mu + kEndpointGuard * mu;
    const double hi = mu - kEndpointGuard * mu;
    const double step = (hi - lo) / kScanPoints;

    std::vector<double> values(kScanPoints + 1);
    bool any_bad = false;
    double bad_lo = 0.0, bad_hi = 0.0;
    for (int i = 0; i <= kScanPoints; ++i) {
        const double E = lo + i * step;
        try {
            values[i] = f(E);
        } catch (const InvalidCoupling&) {
            if (!any_bad) bad_lo = E;
            bad_hi = E;
            any_bad = true;
            values[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (any_bad) {
        throw InvalidCoupling("inner radicand negative for E in [" + fmt(bad_lo) + ", " +
                              fmt(bad_hi) + "]");
    }

    std::vector<EnergyLevel> roots;
    for (int i = 0; i < kScanPoints; ++i) {
        double a = lo + i * step;
        double b = a + step;
        double fa = values[i];
        double fb = values[i + 1];
        if (fa == 0.0) {
            EnergyLevel level;
            level.value = a;
            level.kind = EnergyKind::Relativistic;
            level.method = SolveMethod::RootSolve;
            level.residual = 0.0;
            level.bracket_lo = a;
            level.bracket_hi = b;
            roots.push_back(level);
            continue;
        }
        if (fa * fb >= 0.0) continue;

        const double bracket_lo = a;
        const double bracket_hi = b;
        double fm = fa;
        double mid = a;
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (a + b);
            fm = f(mid);
            if (std::abs(fm) < kRootTol * mu || (b - a) < 1e-16 * mu) break;
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        EnergyLevel level;
        level.value = mid;
        level.kind = EnergyKind::Relativistic;
        level.method = SolveMethod::RootSolve;
        level.residual = std::abs(fm);
        level.bracket_lo = bracket_lo;
        level.bracket_hi = bracket_hi;
        roots.push_back(level);
    }
    if (roots.empty()) {
        throw NoBoundState("no sign change in the bound-state window");
    }
    return roots;
}

} // namespace

std::vector<EnergyLevel> solve_radial_relativistic(const PotentialSpec& spec, int n, double j) {
    spec.validate();
    if (n < 0) {
        throw NegativeIndex("radial index must be nonnegative");
    }
    if (j < 0.0) {
        throw ParameterOutOfRange("orbital momentum must be nonnegative");
    }
    return scan_and_bisect([&](double E) { return radial_eigen_equation(spec, n, j, E); },
                           spec.mu);
}

std::vector<EnergyLevel> solve_noncentral_relativistic(const PotentialSpec& spec,
                                                       const QuantumNumbers& q) {
    spec.validate();
    if (q.n < 0 || q.n_tilde < 0) {
        throw NegativeIndex("quantum numbers must be nonnegative");
    }
    return scan_and_bisect([&](double E) { return noncentral_eigen_equation(spec, q, E); },
                           spec.mu);
}

int coulomb_principal(int D, int n, int ell) { return 2 * n + 2 * ell + D - 1; }

EnergyLevel coulomb_energy(double qe, const PotentialSpec& spec, int n, int ell) {
    if (n < 0 || ell < 0) {
        throw NegativeIndex("quantum numbers must be nonnegative");
    }
    const double q2 = qe * qe;
    const double N = coulomb_principal(spec.D, n, ell);
    EnergyLevel level;
    level.value = spec.mu * (1.0 - 2.0 * q2 / (q2 + N * N));
    level.kind = EnergyKind::Relativistic;
    level.method = SolveMethod::ClosedForm;
    return level;
}

EnergyLevel coulomb_series(double qe, const PotentialSpec& spec, int n, int ell, int order) {
    if (n < 0 || ell < 0) {
        throw NegativeIndex("quantum numbers must be nonnegative");
    }
    if (order < 0 || order > 2) {
        throw ParameterOutOfRange("series order must be 0, 1, or 2");
    }
    const double N = coulomb_principal(spec.D, n, ell);
    const double ratio = qe * qe / (N * N);
    double value = spec.mu;
    if (order >= 1) value -= 2.0 * spec.mu * ratio;
    if (order >= 2) value += 2.0 * spec.mu * ratio * ratio;
    EnergyLevel level;
    level.value = value;
    level.kind = EnergyKind::Relativistic;
    level.method = SolveMethod::ClosedForm;
    return level;
}

EnergyLevel nonrel_energy(const PotentialSpec& spec, const QuantumNumbers& q) {
    spec.validate();
    if (q.n < 0 || q.n_tilde < 0) {
        throw NegativeIndex("quantum numbers must be nonnegative");
    }
    if (q.m < 0) {
        throw ParameterOutOfRange("azimuthal index must be nonnegative");
    }
    const double m_prime = std::sqrt(static_cast<double>(q.m) * q.m + 2.0 * spec.mu * spec.C);
    const double base = 2.0 * q.n_tilde + 2.0 * m_prime + 1.0;
    const double d2 = static_cast<double>(spec.D - 2);
    const double ell_term = std::sqrt(d2 * d2 + base * base - 1.0); // 2 ell' + D - 2
    const double rad = ell_term * ell_term + 8.0 * spec.mu * (spec.B - spec.C);
    if (rad < 0.0) {
        throw ComplexDenominator("nonrelativistic denominator radicand " + fmt(rad));
    }
    const double denom = 2.0 * q.n + 1.0 + std::sqrt(rad);
    EnergyLevel level;
    level.value = -2.0 * spec.mu * spec.A * spec.A / (denom * denom);
    level.kind = EnergyKind::Nonrelativistic;
    level.method = SolveMethod::ClosedForm;
    return level;
}

NonrelLimit nonrel_limit_map(const EnergyLevel& level, const PotentialSpec& spec,
                             const QuantumNumbers& q) {
    NonrelLimit out;
    out.shifted_relativistic = level.value - spec.mu;
    out.nonrelativistic = nonrel_energy(spec, q).value;
    out.gap = std::abs(out.shifted_relativistic - out.nonrelativistic);
    const double denom = std::max(std::abs(out.nonrelativistic), 1e-300);
    out.relative_gap = out.gap / denom;
    return out;
}

DerivedNumbers derived_numbers(const PotentialSpec& spec, const QuantumNumbers& q, double E) {
    if (!(E > -spec.mu && E < spec.mu)) {
        throw ParameterOutOfRange("bound-state energy must lie in (-mu, mu)");
    }
    DerivedNumbers out;
    out.alpha1_sq = spec.mu - E;
    out.alpha2_sq = spec.mu + E;
    const AngularMomenta ang = angular_j(q.n_tilde, q.m, spec.C, out.alpha2_sq, spec.D);
    out.m_prime = ang.m_prime;
    out.j = ang.j;
    out.j_prime = ang.j_prime;
    const double m_prime_nr = std::sqrt(static_cast<double>(q.m) * q.m + 2.0 * spec.mu * spec.C);
    const double base_nr = 2.0 * q.n_tilde + 2.0 * m_prime_nr + 1.0;
    const double d2 = static_cast<double>(spec.D - 2);
    out.ell_prime = 0.5 * (std::sqrt(d2 * d2 + base_nr * base_nr - 1.0) - d2);
    out.M = spec.D + 2.0 * out.j;
    const double dj = spec.D + 2.0 * out.j - 2.0;
    out.zeta = std::sqrt(dj * dj + 4.0 * spec.B * out.alpha2_sq);
    out.epsilon = std::sqrt(out.alpha1_sq * out.alpha2_sq);
    out.beta_sq = spec.A * out.alpha2_sq;
    out.gamma_sq4 = out.zeta * out.zeta - 1.0;
    return out;
}

} // namespace kgring
