#pragma once

// B-spline Galerkin solver for the radial Dirac equation in the field of an
// extended nucleus, optionally with an additional radial potential.
//
// The basis is dual kinetically balanced: every B-spline B_i yields the two
// spinors (B_i, (B_i' + kappa B_i / r) / 2m) and ((B_i' - kappa B_i / r) / 2m, B_i),
// which keeps spurious solutions out of the bound spectrum. The first B-spline
// (and the second for |kappa| >= 2) and the last one are dropped so that the
// radial functions vanish at the origin and at the cavity wall.
//
// Internally lengths are in units of 1/m and energies in units of m, with
// the rest mass subtracted, so that eigenvalues are binding energies.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hvp/bspline.hpp"
#include "hvp/constants.hpp"
#include "hvp/error.hpp"
#include "hvp/nuclear.hpp"
#include "hvp/potentials.hpp"
#include "hvp/wavefunctions.hpp"

namespace hvp {

enum class GridType { exponential, polynomial_exponential };

struct SolverConfig {
    int order = 7;
    int knots = 200;         ///< number of distinct breakpoints, including 0 and the box edge
    double box = 0.0;        ///< cavity radius [GeV^-1]; 0 selects 40 <r> of the loosest target
    double r_min = 0.0;      ///< first non-zero breakpoint [GeV^-1]; 0 selects R/100
    GridType grid = GridType::exponential;
    int quad_points = 0;     ///< Gauss points per interval; 0 selects order + 5
    bool refine = false;     ///< long double Rayleigh-quotient refinement of target eigenpairs
    std::vector<BoundStateLabel> targets;
};

/// A bound state sampled on the solver's quadrature grid. `large`/`small`
/// hold r g(r) and r f(r) [GeV^{1/2}], normalized so that
/// sum_j weight_j (large_j^2 + small_j^2) = 1.
struct SampledState {
    BoundStateLabel label;
    long double binding = 0;  ///< E - m [GeV]
    int nodes = 0;
    bool spurious = false;
    std::vector<double> r;
    std::vector<double> weight;
    std::vector<double> large;
    std::vector<double> small;

    double energy() const { return label.mass + static_cast<double>(binding); }
    double g(std::size_t j) const { return large[j] / r[j]; }
    double f(std::size_t j) const { return small[j] / r[j]; }

    double norm() const {
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) s += weight[j] * (large[j] * large[j] + small[j] * small[j]);
        return s;
    }

    double mean_radius() const {
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) s += weight[j] * r[j] * (large[j] * large[j] + small[j] * small[j]);
        return s;
    }
};

/// <state| V |state> = \int V (g^2 + f^2) r^2 dr on the state's grid [GeV].
inline double expectation_value(const SampledState& state, const RadialPotential& potential) {
    double s = 0.0;
    for (std::size_t j = 0; j < state.r.size(); ++j) {
        const double rho = state.large[j] * state.large[j] + state.small[j] * state.small[j];
        if (rho == 0.0) continue;
        s += state.weight[j] * potential(state.r[j]) * rho;
    }
    return s;
}

/// Same with the potential pre-sampled on the state's grid.
inline double expectation_value(const SampledState& state, std::span<const double> potential_on_grid) {
    if (potential_on_grid.size() != state.r.size())
        throw DomainError("expectation_value: potential sampled on " + std::to_string(potential_on_grid.size()) +
                          " points, state grid has " + std::to_string(state.r.size()));
    double s = 0.0;
    for (std::size_t j = 0; j < state.r.size(); ++j)
        s += state.weight[j] * potential_on_grid[j] * (state.large[j] * state.large[j] + state.small[j] * state.small[j]);
    return s;
}

/// Overlap \int (g1 g2 + f1 f2) r^2 dr of two states on the same grid.
inline double overlap(const SampledState& a, const SampledState& b) {
    if (a.r.size() != b.r.size()) throw DomainError("overlap: states live on different grids");
    double s = 0.0;
    for (std::size_t j = 0; j < a.r.size(); ++j) s += a.weight[j] * (a.large[j] * b.large[j] + a.small[j] * b.small[j]);
    return s;
}

struct SpectrumResult {
    std::vector<SampledState> states;

    const SampledState& at(int n, int kappa) const {
        for (const auto& s : states)
            if (s.label.n == n && s.label.kappa == kappa) return s;
        throw LookupError("state n = " + std::to_string(n) + ", kappa = " + std::to_string(kappa) + " not in spectrum");
    }
};

class DiracSolver {
public:
    using Real = long double;
    using MatrixL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

    DiracSolver(NuclearModel model, double mass, SolverConfig config, std::optional<RadialPotential> extra = {})
        : model_(std::move(model)), mass_(mass), config_(std::move(config)), extra_(std::move(extra)) {
        if (model_.is_point()) throw DomainError("DiracSolver: the finite-size solver needs an extended nucleus");
        if (!(mass_ > 0.0)) throw DomainError("DiracSolver: mass must be positive");
        if (config_.order < 4) throw DomainError("DiracSolver: spline order must be >= 4");
        if (config_.knots < 20) throw DomainError("DiracSolver: need at least 20 knots");
        build_grid();
        sample_potentials();
    }

    const SolverConfig& config() const { return config_; }
    double box() const { return box_; }
    double nuclear_radius() const { return radius_; }
    /// Distinct breakpoints [GeV^-1].
    std::vector<double> breakpoints() const {
        std::vector<double> b;
        for (Real t : breaks_) b.push_back(static_cast<double>(t / mass_));
        return b;
    }

    /// All bound states of symmetry kappa with n <= max_n.
    SpectrumResult solve_kappa(int kappa, int max_n) const {
        const Block blk = assemble(kappa);
        const int l = kappa > 0 ? kappa : -kappa - 1;
        Eigen::MatrixXd h = blk.h.cast<double>();
        Eigen::MatrixXd s = blk.s.cast<double>();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, s);
        if (es.info() != Eigen::Success) throw ConvergenceError("DiracSolver: generalized eigensolver failed");
        SpectrumResult out;
        int n = l + 1;
        for (Eigen::Index i = 0; i < es.eigenvalues().size() && n <= max_n; ++i) {
            const double e = es.eigenvalues()(i);
            if (!(e > -1.0 && e < 0.0)) continue;
            BoundStateLabel label{n, kappa, mass_, model_.z()};
            VectorL x = es.eigenvectors().col(i).cast<Real>();
            Real energy = e;
            if (config_.refine) refine(blk, x, energy);
            out.states.push_back(sample(blk, label, x, energy));
            ++n;
        }
        return out;
    }

    SampledState solve_state(const BoundStateLabel& label) const {
        label.validate();
        if (label.z != model_.z()) throw DomainError("solve_state: label Z differs from the nuclear model");
        auto spec = solve_kappa(label.kappa, label.n);
        const SampledState& s = spec.at(label.n, label.kappa);
        if (s.spurious)
            throw ConvergenceError("solve_state: " + label.name() + " has " + std::to_string(s.nodes) +
                                   " nodes, expected " + std::to_string(label.radial_nodes()));
        if (s.mean_radius() * 8.0 > box_)
            throw ConvergenceError("solve_state: cavity radius " + std::to_string(box_) + " too small for <r> = " +
                                   std::to_string(s.mean_radius()));
        return s;
    }

private:
    struct Block {
        int kappa;
        int first;   // index of the first retained B-spline
        int count;   // retained B-splines
        MatrixL h;   // Hamiltonian minus rest mass, including extra potential
        MatrixL s;   // overlap
    };

    // Values at one quadrature node for the k splines of its span.
    struct NodeData {
        int mu;
        Real rho;
        Real w;
        std::vector<std::vector<Real>> d;  // d[order][j]
    };

    void build_grid() {
        const double m = mass_;
        radius_ = model_.is_sphere() ? model_.sphere_radius() : model_.rms_radius() * std::sqrt(5.0 / 3.0);
        const double za = model_.z() * constants::alpha;
        double box = config_.box;
        if (!(box > 0.0)) {
            double mean_r = 0.0;
            auto add = [&](int n, int l) { mean_r = std::max(mean_r, (3.0 * n * n - l * (l + 1.0)) / (2.0 * za * m)); };
            if (config_.targets.empty()) add(2, 0);
            for (const auto& t : config_.targets) add(t.n, t.l());
            box = 40.0 * mean_r;
        }
        box_ = box;
        const double r_min = config_.r_min > 0.0 ? config_.r_min : radius_ / 100.0;
        if (!(r_min < box)) throw DomainError("DiracSolver: r_min must be below the cavity radius");

        const Real lo = Real(r_min) * m;
        const Real hi = Real(box) * m;
        const int nb = config_.knots;
        std::vector<Real> pts;
        pts.push_back(0);
        if (config_.grid == GridType::exponential) {
            for (int j = 0; j < nb - 1; ++j) pts.push_back(lo * std::pow(hi / lo, Real(j) / Real(nb - 2)));
        } else {
            // rho(u) = hi (e^{beta u} - 1)/(e^beta - 1), beta fixed by rho(1/(nb-1)) = lo.
            auto first = [&](Real beta) { return hi * std::expm1(beta / (nb - 1)) / std::expm1(beta); };
            Real b_lo = 1e-6;
            Real b_hi = 200;
            for (int it = 0; it < 200; ++it) {
                const Real mid = 0.5L * (b_lo + b_hi);
                (first(mid) > lo ? b_lo : b_hi) = mid;
            }
            const Real beta = 0.5L * (b_lo + b_hi);
            for (int j = 1; j < nb; ++j) pts.push_back(hi * std::expm1(beta * j / (nb - 1)) / std::expm1(beta));
        }
        // Put a breakpoint exactly on the nuclear surface.
        const Real rr = Real(radius_) * m;
        if (rr > pts[1] && rr < pts.back()) {
            std::size_t best = 1;
            for (std::size_t j = 1; j + 1 < pts.size(); ++j)
                if (std::abs(pts[j] - rr) < std::abs(pts[best] - rr)) best = j;
            pts[best] = rr;
        }
        int inside = 0;
        for (Real p : pts)
            if (p > 0 && p < rr) ++inside;
        if (inside < 8) throw DomainError("DiracSolver: fewer than 8 grid intervals inside the nucleus; lower r_min");
        breaks_ = pts;

        const int k = config_.order;
        std::vector<Real> knots(k - 1, Real(0));
        knots.insert(knots.end(), pts.begin(), pts.end());
        knots.insert(knots.end(), k - 1, pts.back());
        basis_.emplace(knots, k);

        const int nq = config_.quad_points > 0 ? config_.quad_points : k + 5;
        const auto [gx, gw] = gauss_legendre<Real>(nq);
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            const Real a = pts[j];
            const Real b = pts[j + 1];
            const Real half = (b - a) / 2;
            const Real mid = (a + b) / 2;
            const int mu = basis_->span(mid);
            for (int q = 0; q < nq; ++q) {
                NodeData nd;
                nd.mu = mu;
                nd.rho = mid + half * gx[q];
                nd.w = half * gw[q];
                basis_->eval(nd.rho, mu, 2, nd.d);
                nodes_.push_back(std::move(nd));
            }
        }
    }

    void sample_potentials() {
        nuclear_.resize(nodes_.size());
        extra_values_.assign(nodes_.size(), 0);
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            const double r = static_cast<double>(nodes_[j].rho / mass_);
            nuclear_[j] = Real(model_.coulomb_potential(r)) / mass_;
            if (extra_) extra_values_[j] = Real((*extra_)(r)) / mass_;
        }
    }

    Block assemble(int kappa) const {
        const int k = config_.order;
        const int nbasis = basis_->size();
        const int first = std::abs(kappa) >= 2 ? 2 : 1;
        const int count = nbasis - 1 - first;
        Block blk{kappa, first, count, MatrixL::Zero(2 * count, 2 * count), MatrixL::Zero(2 * count, 2 * count)};
        const Real kap = kappa;
        const Real c = Real(0.5);  // 1 / 2m in units of m

        // Spinor components of the DKB functions: [type][value G, G', F, F'].
        std::vector<std::array<std::array<Real, 4>, 2>> comp(k);
        std::vector<int> index(k);
        for (std::size_t q = 0; q < nodes_.size(); ++q) {
            const NodeData& nd = nodes_[q];
            const Real r = nd.rho;
            const Real v = nuclear_[q] + extra_values_[q];
            for (int j = 0; j < k; ++j) {
                const Real b0 = nd.d[0][j];
                const Real b1 = nd.d[1][j];
                const Real b2 = nd.d[2][j];
                comp[j][0] = {b0, b1, c * (b1 + kap * b0 / r), c * (b2 + kap * b1 / r - kap * b0 / (r * r))};
                comp[j][1] = {c * (b1 - kap * b0 / r), c * (b2 - kap * b1 / r + kap * b0 / (r * r)), b0, b1};
                index[j] = nd.mu - k + 1 + j - first;
            }
            for (int a = 0; a < k; ++a) {
                if (index[a] < 0 || index[a] >= count) continue;
                for (int ta = 0; ta < 2; ++ta) {
                    const auto& u = comp[a][ta];
                    const int row = index[a] + ta * count;
                    for (int b = 0; b < k; ++b) {
                        if (index[b] < 0 || index[b] >= count) continue;
                        for (int tb = 0; tb < 2; ++tb) {
                            const auto& w = comp[b][tb];
                            const int col = index[b] + tb * count;
                            const Real hg = -w[3] + kap * w[2] / r + v * w[0];
                            const Real hf = w[1] + kap * w[0] / r + (v - 2) * w[2];
                            blk.h(row, col) += nd.w * (u[0] * hg + u[2] * hf);
                            blk.s(row, col) += nd.w * (u[0] * w[0] + u[2] * w[2]);
                        }
                    }
                }
            }
        }
        MatrixL sym = (blk.h + blk.h.transpose()) / 2;
        blk.h = std::move(sym);
        return blk;
    }

    // Rayleigh-quotient iteration in long double from a double-precision eigenpair.
    static void refine(const Block& blk, VectorL& x, Real& energy) {
        auto s_norm = [&](const VectorL& v) { return std::sqrt(v.dot(blk.s * v)); };
        x /= s_norm(x);
        Real sigma = x.dot(blk.h * x);
        for (int it = 0; it < 6; ++it) {
            const MatrixL shifted = blk.h - sigma * blk.s;
            Eigen::PartialPivLU<MatrixL> lu(shifted);
            VectorL y = lu.solve(blk.s * x);
            if (!y.allFinite()) break;
            y /= s_norm(y);
            if (y.dot(blk.s * x) < 0) y = -y;
            const Real next = y.dot(blk.h * y);
            x = y;
            const bool done = std::abs(next - sigma) <= 1e-18L * std::max<Real>(1, std::abs(next));
            sigma = next;
            if (done) break;
        }
        energy = sigma;
    }

    SampledState sample(const Block& blk, const BoundStateLabel& label, VectorL x, Real energy) const {
        const int k = config_.order;
        x /= std::sqrt(x.dot(blk.s * x));
        SampledState st;
        st.label = label;
        st.binding = energy * mass_;
        const Real kap = blk.kappa;
        const Real c = Real(0.5);
        const Real sqm = std::sqrt(Real(mass_));
        st.r.reserve(nodes_.size());
        for (const NodeData& nd : nodes_) {
            Real gsum = 0;
            Real fsum = 0;
            const Real r = nd.rho;
            for (int j = 0; j < k; ++j) {
                const int idx = nd.mu - k + 1 + j - blk.first;
                if (idx < 0 || idx >= blk.count) continue;
                const Real b0 = nd.d[0][j];
                const Real b1 = nd.d[1][j];
                const Real c1 = x(idx);
                const Real c2 = x(idx + blk.count);
                gsum += c1 * b0 + c2 * c * (b1 - kap * b0 / r);
                fsum += c1 * c * (b1 + kap * b0 / r) + c2 * b0;
            }
            st.r.push_back(static_cast<double>(r / mass_));
            st.weight.push_back(static_cast<double>(nd.w / mass_));
            st.large.push_back(static_cast<double>(gsum * sqm));
            st.small.push_back(static_cast<double>(fsum * sqm));
        }
        // Overall sign: large component positive near the origin.
        double lead = 0.0;
        for (double g : st.large)
            if (std::abs(g) > 0.0) {
                lead = g;
                break;
            }
        if (lead < 0.0) {
            for (auto& g : st.large) g = -g;
            for (auto& f : st.small) f = -f;
        }
        double gmax = 0.0;
        for (double g : st.large) gmax = std::max(gmax, std::abs(g));
        int nodes = 0;
        int sign = 0;
        for (double g : st.large) {
            if (std::abs(g) < 1e-6 * gmax) continue;
            const int sg = g > 0 ? 1 : -1;
            if (sign != 0 && sg != sign) ++nodes;
            sign = sg;
        }
        st.nodes = nodes;
        st.spurious = nodes != label.radial_nodes();
        return st;
    }

    NuclearModel model_;
    double mass_;
    SolverConfig config_;
    std::optional<RadialPotential> extra_;
    double box_ = 0.0;
    double radius_ = 0.0;
    std::vector<Real> breaks_;
    std::optional<BSplineBasis<Real>> basis_;
    std::vector<NodeData> nodes_;
    std::vector<Real> nuclear_;
    std::vector<Real> extra_values_;
};

/// Bound states listed in `config.targets` for a finite nucleus, with an
/// optional additional potential included in the Hamiltonian.
inline SpectrumResult solve_dirac_fns(const NuclearModel& model, double mass, const std::optional<RadialPotential>& extra,
                                      const SolverConfig& config) {
    if (config.targets.empty()) throw DomainError("solve_dirac_fns: no target states requested");
    DiracSolver solver(model, mass, config, extra);
    SpectrumResult out;
    std::vector<int> kappas;
    for (const auto& t : config.targets) {
        t.validate();
        if (std::find(kappas.begin(), kappas.end(), t.kappa) != kappas.end()) continue;
        kappas.push_back(t.kappa);
        int max_n = 0;
        for (const auto& u : config.targets)
            if (u.kappa == t.kappa) max_n = std::max(max_n, u.n);
        auto block = solver.solve_kappa(t.kappa, max_n);
        for (const auto& u : config.targets) {
            if (u.kappa != t.kappa) continue;
            const auto& st = block.at(u.n, u.kappa);
            if (st.spurious)
                throw ConvergenceError("solve_dirac_fns: state " + u.name() + " misidentified (node count " +
                                       std::to_string(st.nodes) + ")");
            out.states.push_back(st);
        }
    }
    return out;
}

/// Eigenvalue-difference estimate of the shift caused by `potential`: both
/// solves share one grid so discretization errors cancel. Long double
/// refinement is forced on.
inline double eigenvalue_shift(const NuclearModel& model, const BoundStateLabel& label, const RadialPotential& potential,
                               SolverConfig config) {
    config.refine = true;
    if (config.targets.empty()) config.targets = {label};
    const DiracSolver bare(model, label.mass, config);
    const DiracSolver perturbed(model, label.mass, config, potential);
    const auto a = bare.solve_state(label);
    const auto b = perturbed.solve_state(label);
    return static_cast<double>(b.binding - a.binding);
}

}  // namespace hvp
