#ifndef KGRING_POLYNOMIAL_HPP
#define KGRING_POLYNOMIAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace kgring {

/// Dense real polynomial of degree <= 2, coefficients stored lowest-degree first.
class Poly {
  public:
    Poly() : c_{0.0, 0.0, 0.0} {}

    Poly(std::initializer_list<double> coeffs) : c_{0.0, 0.0, 0.0} {
        if (coeffs.size() > 3) {
            throw std::invalid_argument("Poly: degree > 2 not representable");
        }
        std::copy(coeffs.begin(), coeffs.end(), c_.begin());
    }

    static Poly constant(double c0) { return Poly{c0}; }
    static Poly linear(double c0, double c1) { return Poly{c0, c1}; }
    static Poly quadratic(double c0, double c1, double c2) { return Poly{c0, c1, c2}; }

    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    /// Highest index with |coefficient| > tol; -1 for the zero polynomial.
    int degree(double tol = 0.0) const {
        for (int i = 2; i >= 0; --i) {
            if (std::abs(c_[static_cast<std::size_t>(i)]) > tol) {
                return i;
            }
        }
        return -1;
    }

    bool is_zero(double tol = 0.0) const { return degree(tol) < 0; }

    double operator()(double x) const { return c_[0] + x * (c_[1] + x * c_[2]); }

    Poly derivative() const { return Poly{c_[1], 2.0 * c_[2]}; }

    double max_abs_coeff() const {
        return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        return Poly{a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        return Poly{a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
    }
    friend Poly operator*(double s, const Poly& a) {
        return Poly{s * a.c_[0], s * a.c_[1], s * a.c_[2]};
    }

    /// Product, valid only when the result stays within degree 2.
    friend Poly operator*(const Poly& a, const Poly& b) {
        std::array<double, 5> full{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                full[static_cast<std::size_t>(i + j)] +=
                    a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
            }
        }
        if (std::abs(full[3]) > 0.0 || std::abs(full[4]) > 0.0) {
            throw std::invalid_argument("Poly: product exceeds degree 2");
        }
        return Poly{full[0], full[1], full[2]};
    }

  private:
    std::array<double, 3> c_;
};

/// Coefficient-wise comparison, relative to the largest coefficient of either side.
inline bool approx_equal(const Poly& a, const Poly& b, double rel_tol = 1e-12) {
    const double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1e-300});
    for (int i = 0; i < 3; ++i) {
        if (std::abs(a[i] - b[i]) > rel_tol * scale) {
            return false;
        }
    }
    return true;
}

} // namespace kgring

#endif // KGRING_POLYNOMIAL_HPP
