#pragma once

// Quadrature helpers layered on Boost.Math: adaptive Gauss-Kronrod for smooth
// or weakly singular integrands, and a panel integrator for oscillatory
// integrands with Wynn epsilon acceleration of the partial sums.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hvp/error.hpp"

namespace hvp::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive 31-point Gauss-Kronrod on [a, b]; b may be +infinity.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 18) {
    if (a == b) return {};
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
    return {v, err * std::max(std::abs(v), l1)};
}

/// Integrates over consecutive sub-intervals given by sorted breakpoints.
template <class F>
Result integrate_pieces(F&& f, const std::vector<double>& breaks, double rel_tol = 1e-12, unsigned max_depth = 18) {
    Result total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        const Result r = integrate(f, breaks[i], breaks[i + 1], rel_tol, max_depth);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

/// \int_a^b f with an integrable derivative singularity at `at` (a or b),
/// smoothed by x = at + (other - at) u^3 before Gauss-Kronrod.
template <class F>
Result integrate_endpoint_singular(F&& f, double a, double b, double at, double rel_tol = 1e-12,
                                   unsigned max_depth = 18) {
    if (a == b) return {};
    const double other = at == a ? b : a;
    const double span = other - at;
    auto g = [&](double u) { return 3.0 * span * u * u * f(at + span * u * u * u); };
    const Result r = integrate(g, 0.0, 1.0, rel_tol, max_depth);
    return at == a ? r : Result{-r.value, r.error};
}

/// Fixed 15-point Gauss-Kronrod on a single panel (no subdivision).
template <class F>
double panel(F&& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0);
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
///
/// Recomputes the full table from the stored sums; sequences used here are a
/// few dozen terms long, so the quadratic cost is irrelevant.
class WynnEpsilon {
public:
    /// Appends a partial sum and returns the current best limit estimate.
    double push(double s) {
        sums_.push_back(s);
        const std::size_t n = sums_.size();
        std::vector<double> prev(n + 1, 0.0);  // eps_{k-1}
        std::vector<double> cur(sums_.begin(), sums_.end());  // eps_k, column k = 0
        double best = s;
        for (std::size_t k = 1; k < n; ++k) {
            std::vector<double> next(n - k);
            for (std::size_t j = 0; j + k < n; ++j) {
                const double diff = cur[j + 1] - cur[j];
                if (diff == 0.0) {
                    // Exact convergence; only even columns are limit estimates.
                    last_ = (k - 1) % 2 == 0 ? cur[j + 1] : best;
                    return last_;
                }
                next[j] = prev[j + 1] + 1.0 / diff;
            }
            prev = std::move(cur);
            cur = std::move(next);
            if (k % 2 == 0) best = cur.back();
        }
        last_ = best;
        return best;
    }
    std::size_t size() const { return sums_.size(); }
    double last() const { return last_; }

private:
    std::vector<double> sums_;
    double last_ = 0.0;
};

/// \int_a^\infty f(q) dq for an integrand oscillating with half-period h,
/// assuming f has constant-sign lobes between multiples of h.
template <class F>
Result oscillatory_tail(F&& f, double a, double h, double rel_tol = 1e-10, double abs_tol = 0.0, int max_panels = 400) {
    WynnEpsilon wynn;
    double lo = a;
    double hi = (std::floor(a / h) + 1.0) * h;
    double sum = 0.0;
    double prev_est = std::numeric_limits<double>::quiet_NaN();
    int stable = 0;
    for (int k = 0; k < max_panels; ++k) {
        sum += panel(f, lo, hi);
        const double est = wynn.push(sum);
        if (k >= 6 && std::isfinite(prev_est)) {
            const double delta = std::abs(est - prev_est);
            if (delta <= std::max(rel_tol * std::abs(est), abs_tol)) {
                if (++stable >= 3) return {est, delta};
            } else {
                stable = 0;
            }
        }
        prev_est = est;
        lo = hi;
        hi += h;
    }
    throw ConvergenceError("oscillatory_tail: Wynn epsilon extrapolation did not settle");
}

}  // namespace hvp::quad
