#pragma once

// B-spline basis on an arbitrary clamped knot vector with derivatives, and
// Gauss-Legendre nodes, both templated on the scalar type.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hvp {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration.
template <class Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n) {
    using std::abs;
    using std::cos;
    std::vector<Real> x(n), w(n);
    const Real pi = Real(3.141592653589793238462643383279502884L);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = cos(pi * (i + Real(0.75)) / (n + Real(0.5)));
        Real dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1;
            Real p1 = z;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (z * p1 - p0) / (z * z - 1);
            const Real dz = p1 / dp;
            z -= dz;
            if (abs(dz) < 8 * std::numeric_limits<Real>::epsilon()) break;
        }
        // Recompute derivative at the converged root.
        Real p0 = 1;
        Real p1 = z;
        for (int k = 2; k <= n; ++k) {
            const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
    }
    return {x, w};
}

/// B-splines of order k (degree k-1) on a non-decreasing knot vector whose
/// first and last knots have multiplicity k.
template <class Real>
class BSplineBasis {
public:
    BSplineBasis(std::vector<Real> knots, int order) : t_(std::move(knots)), k_(order) {
        if (k_ < 2) throw std::invalid_argument("B-spline order must be >= 2");
        if (static_cast<int>(t_.size()) < 2 * k_) throw std::invalid_argument("too few knots for B-spline order");
        if (!std::is_sorted(t_.begin(), t_.end())) throw std::invalid_argument("knots must be non-decreasing");
    }

    int order() const { return k_; }
    int size() const { return static_cast<int>(t_.size()) - k_; }
    const std::vector<Real>& knots() const { return t_; }

    /// Index mu with t[mu] <= x < t[mu+1], clamped to the last non-empty interval.
    int span(Real x) const {
        const int n = size();
        if (x >= t_[n]) return n - 1;
        const auto it = std::upper_bound(t_.begin() + k_ - 1, t_.begin() + n + 1, x);
        return static_cast<int>(it - t_.begin()) - 1;
    }

    /// Values and derivatives up to `nd` of the k splines non-zero on span mu:
    /// out[d][j] is the d-th derivative of B_{mu-k+1+j}(x).
    void eval(Real x, int mu, int nd, std::vector<std::vector<Real>>& out) const {
        const int p = k_ - 1;
        std::vector<std::vector<Real>> ndu(k_, std::vector<Real>(k_));
        std::vector<Real> left(k_), right(k_);
        ndu[0][0] = 1;
        for (int j = 1; j <= p; ++j) {
            left[j] = x - t_[mu + 1 - j];
            right[j] = t_[mu + j] - x;
            Real saved = 0;
            for (int r = 0; r < j; ++r) {
                ndu[j][r] = right[r + 1] + left[j - r];
                const Real temp = ndu[r][j - 1] / ndu[j][r];
                ndu[r][j] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            ndu[j][j] = saved;
        }
        out.assign(nd + 1, std::vector<Real>(k_, Real(0)));
        for (int j = 0; j <= p; ++j) out[0][j] = ndu[j][p];
        std::vector<std::vector<Real>> a(2, std::vector<Real>(k_));
        for (int r = 0; r <= p; ++r) {
            int s1 = 0;
            int s2 = 1;
            a[0][0] = 1;
            for (int kk = 1; kk <= nd && kk <= p; ++kk) {
                Real d = 0;
                const int rk = r - kk;
                const int pk = p - kk;
                if (r >= kk) {
                    a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                    d = a[s2][0] * ndu[rk][pk];
                }
                const int j1 = rk >= -1 ? 1 : -rk;
                const int j2 = (r - 1 <= pk) ? kk - 1 : p - r;
                for (int j = j1; j <= j2; ++j) {
                    a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                    d += a[s2][j] * ndu[rk + j][pk];
                }
                if (r <= pk) {
                    a[s2][kk] = -a[s1][kk - 1] / ndu[pk + 1][r];
                    d += a[s2][kk] * ndu[r][pk];
                }
                out[kk][r] = d;
                std::swap(s1, s2);
            }
        }
        Real factor = p;
        for (int kk = 1; kk <= nd && kk <= p; ++kk) {
            for (int j = 0; j <= p; ++j) out[kk][j] *= factor;
            factor *= (p - kk);
        }
    }

private:
    std::vector<Real> t_;
    int k_;
};

}  // namespace hvp
