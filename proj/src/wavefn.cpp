#include "kgring/wavefn.hpp"

#include <cmath>

#include "kgring/special_fn.hpp"

namespace kgring {

RadialState RadialState::make(const PotentialSpec& spec, const EnergyLevel& level, int n,
                              double j) {
    if (n < 0) {
        throw NegativeIndex("radial index must be nonnegative");
    }
    const double E = level.value;
    if (!(E > -spec.mu && E < spec.mu)) {
        throw ParameterOutOfRange("bound-state energy must lie in (-mu, mu)");
    }
    RadialState state;
    state.n = n;
    state.D = spec.D;
    state.j = j;
    const double a2 = spec.mu + E;
    const double d = spec.D + 2.0 * j - 2.0;
    const double zeta_sq = d * d + 4.0 * spec.B * a2;
    if (zeta_sq < 0.0) {
        throw InvalidCoupling("zeta radicand is negative");
    }
    state.zeta = std::sqrt(zeta_sq);
    state.epsilon = std::sqrt((spec.mu - E) * a2);
    state.log_norm = (1.0 + 0.5 * state.zeta) * std::log(2.0 * state.epsilon) +
                     0.5 * (log_gamma(n + 1.0) - std::log(2.0 * n + state.zeta + 1.0) -
                            log_gamma(n + state.zeta + 1.0));
    return state;
}

double radial(const RadialState& state, double r) {
    if (!(r > 0.0)) {
        throw ParameterOutOfRange("radius must be positive");
    }
    const double rho = 2.0 * state.epsilon * r;
    const double log_env =
        state.log_norm + 0.5 * (state.zeta + 2.0 - state.D) * std::log(r) - state.epsilon * r;
    return std::exp(log_env) * laguerre(state.n, state.zeta, rho);
}

AngularState AngularState::make(int n_tilde, double m_prime) {
    if (n_tilde < 0) {
        throw NegativeIndex("polar index must be nonnegative");
    }
    if (m_prime < 0.0) {
        throw ParameterOutOfRange("m' must be nonnegative");
    }
    AngularState state;
    state.n_tilde = n_tilde;
    state.m_prime = m_prime;
    state.log_norm = -m_prime * std::log(2.0) - log_gamma(n_tilde + m_prime + 1.0) +
                     0.5 * (std::log(2.0 * n_tilde + 2.0 * m_prime + 1.0) +
                            log_gamma(n_tilde + 2.0 * m_prime + 1.0) +
                            log_gamma(n_tilde + 1.0) - std::log(2.0));
    return state;
}

double angular(const AngularState& state, double theta) {
    const double s = std::cos(theta);
    const double sin_t = std::sin(theta);
    double envelope;
    if (state.m_prime == 0.0) {
        envelope = std::exp(state.log_norm);
    } else if (sin_t <= 0.0) {
        return 0.0;
    } else {
        envelope = std::exp(state.log_norm + state.m_prime * std::log(sin_t));
    }
    return envelope * jacobi(state.n_tilde, state.m_prime, state.m_prime, s);
}

std::complex<double> azimuthal(int m, double phi) {
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);
    return std::polar(norm, m * phi);
}

std::complex<double> total(const RadialState& rad, const AngularState& ang, int m, double r,
                           double theta, double phi) {
    return radial(rad, r) * angular(ang, theta) * azimuthal(m, phi);
}

namespace {

int count_sign_changes(const std::vector<double>& samples) {
    int count = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (double v : samples) {
        if (v == 0.0) continue;
        if (have_prev && ((prev < 0.0) != (v < 0.0))) ++count;
        prev = v;
        have_prev = true;
    }
    return count;
}

} // namespace

int radial_node_count(const RadialState& state, double r_max, int samples) {
    std::vector<double> values;
    values.reserve(samples);
    for (int i = 1; i < samples; ++i) {
        values.push_back(radial(state, r_max * i / samples));
    }
    return count_sign_changes(values);
}

int angular_node_count(const AngularState& state, int samples) {
    std::vector<double> values;
    values.reserve(samples);
    for (int i = 1; i < samples; ++i) {
        values.push_back(angular(state, M_PI * i / samples));
    }
    return count_sign_changes(values);
}

} // namespace kgring
