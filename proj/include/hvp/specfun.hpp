#pragma once

// Special functions used by the closed-form potentials and energy shifts:
// generalized exponential integrals E_n, the Gauss hypergeometric function
// 2F1 on the real half-line z < 1, and spherical Bessel functions j0, j1.

#include <cmath>
#include <limits>
#include <sstream>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"

namespace hvp::specfun {

/// E_n(x) = \int_1^\infty e^{-xt} t^{-n} dt.
///
/// Power series for x <= 1, modified Lentz continued fraction above. Results
/// below the smallest subnormal underflow to zero.
inline double expint(int n, double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    constexpr int max_iter = 10000;

    if (n < 0) throw DomainError("expint: order must be non-negative");
    if (!(x >= 0.0)) throw DomainError("expint: argument must be non-negative");
    if (x == 0.0) {
        if (n <= 1) throw DomainError("expint: E_0 and E_1 diverge at x = 0");
        return 1.0 / (n - 1);
    }
    if (n == 0) return std::exp(-x) / x;

    const int nm1 = n - 1;
    if (x > 1.0) {
        double b = x + n;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i <= max_iter; ++i) {
            const double a = -static_cast<double>(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < eps) return h * std::exp(-x);
        }
        throw ConvergenceError("expint: continued fraction failed to converge");
    }

    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - constants::euler_gamma;
    double fact = 1.0;
    for (int i = 1; i <= max_iter; ++i) {
        fact *= -x / i;
        double del;
        if (i != nm1) {
            del = -fact / (i - nm1);
        } else {
            double psi = -constants::euler_gamma;
            for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * eps) return ans;
    }
    throw ConvergenceError("expint: series failed to converge");
}

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

inline double hyp2f1_series(double a, double b, double c, double z) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 200000;
    double term = 1.0;
    double sum = 1.0;
    int small_terms = 0;
    for (int k = 0; k < max_iter; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= eps * std::abs(sum)) {
            if (++small_terms == 2) return sum;
        } else {
            small_terms = 0;
        }
    }
    std::ostringstream msg;
    msg << "hyp2f1: series did not converge after " << max_iter << " terms (a=" << a << ", b=" << b
        << ", c=" << c << ", z=" << z << ", partial sum=" << sum << ", last term=" << term << ")";
    throw ConvergenceError(msg.str());
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments and z < 1.
///
/// |z| <= 1/2 sums the defining series directly. For z < -1/2 the Pfaff
/// transformation maps z onto w = z/(z-1) in (1/3, 1); the variant whose
/// second parameter terminates or shrinks is chosen.
inline double hyp2f1(double a, double b, double c, double z) {
    if (detail::is_nonpositive_integer(c)) throw DomainError("hyp2f1: c must not be a non-positive integer");
    if (!(z < 1.0)) throw DomainError("hyp2f1: only z < 1 is supported");
    if (z == 0.0) return 1.0;
    if (z >= -0.5) return detail::hyp2f1_series(a, b, c, z);

    const double w = z / (z - 1.0);
    // 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; w) = (1-z)^{-b} 2F1(c-a, b; c; w)
    const bool use_a = detail::is_nonpositive_integer(c - b) ||
                       (!detail::is_nonpositive_integer(c - a) && std::abs(c - b) <= std::abs(c - a));
    if (use_a) return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
    return std::pow(1.0 - z, -b) * detail::hyp2f1_series(c - a, b, c, w);
}

/// Spherical Bessel function of the first kind j_k(x), k in {0, 1}.
inline double sph_bessel_j(int k, double x) {
    const double ax = std::abs(x);
    if (k == 0) {
        if (ax < 1e-2) {
            const double x2 = x * x;
            return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
        }
        return std::sin(x) / x;
    }
    if (k == 1) {
        if (ax < 1e-2) {
            const double x2 = x * x;
            return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0))));
        }
        return std::sin(x) / (x * x) - std::cos(x) / x;
    }
    throw DomainError("sph_bessel_j: only orders 0 and 1 are implemented");
}

/// 3 j1(x)/x, the form factor of a homogeneously charged sphere (-> 1 at x = 0).
inline double sphere_form_factor(double x) {
    const double ax = std::abs(x);
    if (ax < 2e-2) {
        const double x2 = x * x;
        return 1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0)));
    }
    return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

}  // namespace hvp::specfun
