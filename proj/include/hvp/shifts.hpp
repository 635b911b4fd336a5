#pragma once

// Hadronic vacuum-polarization energy shifts: closed forms, Z alpha
// expansions, perturbative expectation values with point-Coulomb or
// finite-size wavefunctions, and uncertainty assembly.
//
// All public functions return energies in eV.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"
#include "hvp/nuclear.hpp"
#include "hvp/polarization.hpp"
#include "hvp/potentials.hpp"
#include "hvp/quadrature.hpp"
#include "hvp/solver.hpp"
#include "hvp/specfun.hpp"
#include "hvp/units.hpp"
#include "hvp/wavefunctions.hpp"

namespace hvp {

enum class ShiftMethod { nonrel_point, rel_point_analytic, rel_point_numeric, rel_fns_approx, rel_fns_full };

inline std::string to_string(ShiftMethod m) {
    switch (m) {
        case ShiftMethod::nonrel_point: return "nonrel-point";
        case ShiftMethod::rel_point_analytic: return "rel-point-analytic";
        case ShiftMethod::rel_point_numeric: return "rel-point-numeric";
        case ShiftMethod::rel_fns_approx: return "rel-fns-approx";
        case ShiftMethod::rel_fns_full: return "rel-fns-full";
    }
    return "unknown";
}

inline ShiftMethod parse_shift_method(const std::string& s) {
    for (auto m : {ShiftMethod::nonrel_point, ShiftMethod::rel_point_analytic, ShiftMethod::rel_point_numeric,
                   ShiftMethod::rel_fns_approx, ShiftMethod::rel_fns_full})
        if (s == to_string(m)) return m;
    throw DomainError("unknown shift method '" + s +
                      "' (expected nonrel-point, rel-point-analytic, rel-point-numeric, rel-fns-approx or rel-fns-full)");
}

inline bool is_point_method(ShiftMethod m) {
    return m == ShiftMethod::nonrel_point || m == ShiftMethod::rel_point_analytic ||
           m == ShiftMethod::rel_point_numeric;
}

/// Literature value of the hadronic/muonic VP ratio, shipped for display only.
struct RatioReference {
    double value;
    double uncertainty;
};
inline constexpr RatioReference literature_vp_ratio{0.671, 0.015};

// ---------------------------------------------------------------------------
// Closed forms and series

/// All-order 1s shift for a point nucleus with the first-region potential:
/// -Z alpha lambda (2 lambda s)^{2 gamma} B1 / gamma^2 2F1(2g, 2g; 1+2g; -2 lambda s),
/// lambda = Z alpha m, s = sqrt(C1). A non-zero A1 adds -Z alpha A1 <1/r>.
inline double shift_1s_closed_form(int z, double mass, const PolarizationParamSet& params) {
    const double za = z * constants::alpha;
    if (z < 1 || !(za < 1.0)) throw DomainError("shift_1s_closed_form: need 1 <= Z and Z alpha < 1");
    if (!(mass > 0.0)) throw DomainError("shift_1s_closed_form: mass must be positive");
    const auto& reg = params.first();
    const double s = std::sqrt(reg.c);
    const double gamma = std::sqrt(1.0 - za * za);
    const double lambda = za * mass;
    const double y = 2.0 * lambda * s;
    const double f = specfun::hyp2f1(2.0 * gamma, 2.0 * gamma, 1.0 + 2.0 * gamma, -y);
    double e = -za * lambda * std::pow(y, 2.0 * gamma) * reg.b / (gamma * gamma) * f;
    if (reg.a != 0.0) e -= za * reg.a * lambda / gamma;
    return gev_to_ev(e);
}

/// Leading non-relativistic shift of an s state, -4 B1 C1 m^3 (Z alpha)^4 / n^3.
/// With `nucleus_mass` the lepton mass is replaced by the reduced mass.
inline double shift_nonrel(const BoundStateLabel& label, const PolarizationParamSet& params,
                           std::optional<double> nucleus_mass = {}) {
    label.validate();
    if (label.l() != 0) throw DomainError("shift_nonrel: only s states (l = 0), got " + label.name());
    double m = label.mass;
    if (nucleus_mass) {
        if (!(*nucleus_mass > 0.0)) throw DomainError("shift_nonrel: nucleus mass must be positive");
        m = m * *nucleus_mass / (m + *nucleus_mass);
    }
    const auto& reg = params.first();
    const double za = label.z * constants::alpha;
    const double n3 = double(label.n) * label.n * label.n;
    double e = -4.0 * reg.b * reg.c * m * m * m * std::pow(za, 4) / n3;
    if (reg.a != 0.0) e -= za * reg.a * za * m / (double(label.n) * label.n);
    return gev_to_ev(e);
}

/// Powers of Z alpha covered by the series for `label`: {leading, highest}.
inline std::pair<int, int> expansion_orders(const BoundStateLabel& label) {
    if (label.n == 1 && label.kappa == -1) return {4, 6};
    if (label.n == 2 && label.kappa == -1) return {4, 5};
    if (label.n == 2 && label.kappa == 1) return {6, 7};
    if (label.n == 2 && label.kappa == -2) return {6, 7};
    throw DomainError("shift_expansion: no series for state " + label.name());
}

/// Partial sum of the Z alpha expansion through (Z alpha)^order.
///  1s:     -4 B1 C1 m^3 a^4 + 32/3 B1 C1^{3/2} m^4 a^5
///          - 4 B1 C1 m^3 a^6 [1 + 6 C1 m^2 - ln(2 a sqrt(C1) m)]
///  2s:     -1/2 B1 C1 m^3 a^4 + 4/3 B1 C1^{3/2} m^4 a^5
///  2p1/2:  -B1 C1 (3 + 4 C1 m^2) m^3 a^6 / 32 + B1 C1^{3/2} (5 + 24 C1 m^2) m^4 a^7 / 60
///  2p3/2:  -B1 C1^2 m^5 a^6 / 8 + 2/5 B1 C1^{5/2} m^6 a^7
inline double shift_expansion(const BoundStateLabel& label, int order, const PolarizationParamSet& params) {
    label.validate();
    const auto [lo, hi] = expansion_orders(label);
    if (order < lo || order > hi)
        throw DomainError("shift_expansion: order " + std::to_string(order) + " outside [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "] for " + label.name());
    const auto& reg = params.first();
    const double b = reg.b;
    const double c = reg.c;
    const double sc = std::sqrt(c);
    const double m = label.mass;
    const double a = label.z * constants::alpha;
    const double m3 = m * m * m;
    std::vector<double> terms;
    if (label.kappa == -1 && label.n == 1) {
        terms = {-4.0 * b * c * m3 * std::pow(a, 4), 32.0 / 3.0 * b * c * sc * m3 * m * std::pow(a, 5),
                 -4.0 * b * c * m3 * std::pow(a, 6) * (1.0 + 6.0 * c * m * m - std::log(2.0 * a * sc * m))};
    } else if (label.kappa == -1) {
        terms = {-0.5 * b * c * m3 * std::pow(a, 4), 4.0 / 3.0 * b * c * sc * m3 * m * std::pow(a, 5)};
    } else if (label.kappa == 1) {
        terms = {-b * c * (3.0 + 4.0 * c * m * m) * m3 * std::pow(a, 6) / 32.0,
                 b * c * sc * (5.0 + 24.0 * c * m * m) * m3 * m * std::pow(a, 7) / 60.0};
    } else {
        terms = {-b * c * c * m3 * m * m * std::pow(a, 6) / 8.0,
                 2.0 / 5.0 * b * c * c * sc * m3 * m3 * std::pow(a, 7)};
    }
    double sum = 0.0;
    for (int k = lo; k <= order; ++k) sum += terms[k - lo];
    return gev_to_ev(sum);
}

// ---------------------------------------------------------------------------
// Expectation values

namespace detail {

// \int_0^cut (g^2 + f^2) r^2 V dr with point-Coulomb wavefunctions; the
// integrand behaves as r^{2 gamma - 1} ln r at the origin.
inline quad::Result point_expectation(const BoundStateLabel& label, const RadialPotential& v, double range) {
    const DiracCoulombState st(label);
    auto f = [&](double r) { return r > 0.0 ? st.radial_density(r) * v(r) : 0.0; };
    const double cut = std::isfinite(v.cutoff) ? v.cutoff : 200.0 * range + 60.0 / st.lambda();
    std::vector<double> breaks{1e-2 * range, range, 4.0 * range, 16.0 * range, 64.0 * range};
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return b >= cut; }), breaks.end());
    breaks.push_back(cut);
    quad::Result total = quad::integrate_endpoint_singular(f, 0.0, breaks.front(), 0.0, 1e-11);
    const auto rest = quad::integrate_pieces(f, breaks, 1e-11);
    total.value += rest.value;
    total.error += rest.error;
    return total;
}

inline RadialPotential fns_potential(const NuclearModel& model, const PolarizationParamSet& params, ShiftMethod method,
                                     const FullQuadratureOptions& full) {
    PotentialSpec spec;
    spec.params = params;
    spec.model = model;
    spec.full = full;
    if (method == ShiftMethod::rel_fns_full)
        spec.method = PotentialMethod::full_quadrature;
    else
        spec.method = model.is_sphere() ? PotentialMethod::closed_form_approx : PotentialMethod::convolution_numeric;
    return make_potential(spec);
}

inline SampledState fns_state(const BoundStateLabel& label, const NuclearModel& model, SolverConfig cfg) {
    cfg.targets = {label};
    return DiracSolver(model, label.mass, cfg).solve_state(label);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Requests

struct ShiftRequest {
    BoundStateLabel label;
    NuclearModel model = NuclearModel::point(1);
    ShiftMethod method = ShiftMethod::rel_fns_approx;
    PolarizationParamSet params = builtin_params();
    /// Second parameter set; |difference| is the parameterization uncertainty.
    std::optional<PolarizationParamSet> alternate = alternate_params();
    /// rms radius uncertainty [fm] propagated by R +- sigma (finite-size methods).
    double radius_uncertainty_fm = 0.0;
    /// Potential for rel-point-numeric.
    PotentialMethod point_potential = PotentialMethod::closed_form_approx;
    SolverConfig solver{};
    /// Repeat finite-size solves on a 1.5x denser grid for the numerical uncertainty.
    bool grid_refinement = true;
    FullQuadratureOptions full{1e-8, 20000};

    void validate() const {
        label.validate();
        if (label.z != model.z())
            throw DomainError("shift request: state Z = " + std::to_string(label.z) + " but nuclear model Z = " +
                              std::to_string(model.z()));
        if (is_point_method(method) && !model.is_point())
            throw DomainError("shift request: method " + to_string(method) + " needs a point nucleus");
        if (!is_point_method(method) && model.is_point())
            throw DomainError("shift request: method " + to_string(method) + " needs an extended nucleus");
        if (method == ShiftMethod::nonrel_point && label.l() != 0) expansion_orders(label);  // throws if no series
        if (method == ShiftMethod::rel_point_analytic && !(label.n == 1 && label.kappa == -1))
            throw DomainError("shift request: rel-point-analytic covers the 1s state only");
        if (!(radius_uncertainty_fm >= 0.0)) throw DomainError("shift request: radius uncertainty must be >= 0");
    }
};

struct ShiftResult {
    BoundStateLabel label;
    ShiftMethod method = ShiftMethod::nonrel_point;
    double value = 0.0;        ///< eV
    double unc_param = 0.0;    ///< eV
    double unc_radius = 0.0;   ///< eV
    double unc_numeric = 0.0;  ///< eV

    double uncertainty() const {
        return std::sqrt(unc_param * unc_param + unc_radius * unc_radius + unc_numeric * unc_numeric);
    }
};

/// Evaluates one request with its uncertainty budget.
inline ShiftResult shift_perturbative(const ShiftRequest& req) {
    req.validate();
    ShiftResult out;
    out.label = req.label;
    out.method = req.method;
    const auto& label = req.label;

    switch (req.method) {
        case ShiftMethod::nonrel_point: {
            // Lowest order in Z alpha: the s-state formula, or the leading series term for p states.
            auto eval = [&](const PolarizationParamSet& p) {
                return label.l() == 0 ? shift_nonrel(label, p)
                                      : shift_expansion(label, expansion_orders(label).first, p);
            };
            out.value = eval(req.params);
            if (req.alternate) out.unc_param = std::abs(eval(*req.alternate) - out.value);
            return out;
        }
        case ShiftMethod::rel_point_analytic: {
            out.value = shift_1s_closed_form(label.z, label.mass, req.params);
            if (req.alternate)
                out.unc_param = std::abs(shift_1s_closed_form(label.z, label.mass, *req.alternate) - out.value);
            return out;
        }
        case ShiftMethod::rel_point_numeric: {
            auto eval = [&](const PolarizationParamSet& p) {
                PotentialSpec spec;
                spec.params = p;
                spec.model = req.model;
                spec.method = req.point_potential;
                spec.full = req.full;
                return detail::point_expectation(label, make_potential(spec), std::sqrt(p.first().c));
            };
            const auto r = eval(req.params);
            out.value = gev_to_ev(r.value);
            out.unc_numeric = gev_to_ev(r.error);
            if (req.alternate) out.unc_param = std::abs(gev_to_ev(eval(*req.alternate).value) - out.value);
            return out;
        }
        case ShiftMethod::rel_fns_approx:
        case ShiftMethod::rel_fns_full: {
            auto value = [&](const SampledState& st, const NuclearModel& model, const PolarizationParamSet& p) {
                return gev_to_ev(expectation_value(st, detail::fns_potential(model, p, req.method, req.full)));
            };
            const auto st = detail::fns_state(label, req.model, req.solver);
            out.value = value(st, req.model, req.params);
            if (req.alternate) out.unc_param = std::abs(value(st, req.model, *req.alternate) - out.value);
            if (req.radius_uncertainty_fm > 0.0) {
                const double rms = natural_to_fm(req.model.rms_radius());
                double v[2];
                for (int k = 0; k < 2; ++k) {
                    const auto m = req.model.with_rms_fm(rms + (k == 0 ? 1.0 : -1.0) * req.radius_uncertainty_fm);
                    v[k] = value(detail::fns_state(label, m, req.solver), m, req.params);
                }
                out.unc_radius = 0.5 * std::abs(v[0] - v[1]);
            }
            if (req.grid_refinement) {
                SolverConfig fine = req.solver;
                fine.knots = fine.knots * 3 / 2;
                out.unc_numeric = std::abs(value(detail::fns_state(label, req.model, fine), req.model, req.params) -
                                           out.value);
            }
            return out;
        }
    }
    throw DomainError("shift_perturbative: unknown method");
}

/// Outcome of one request in a batch: a result or the error message.
struct BatchEntry {
    std::optional<ShiftResult> result;
    std::string error;
};

/// Evaluates independent requests on `threads` workers; entry i always
/// belongs to request i.
inline std::vector<BatchEntry> run_batch(const std::vector<ShiftRequest>& requests, unsigned threads = 0) {
    std::vector<BatchEntry> out(requests.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, requests.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < requests.size(); i = next++) {
            try {
                out[i].result = shift_perturbative(requests[i]);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    if (threads <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

// ---------------------------------------------------------------------------
// Muonic comparison

/// Ratio of the non-relativistic hadronic 1s shift to the lowest-order
/// muon-loop VP shift -4 alpha (Z alpha) |psi(0)|^2 / (15 m_mu^2).
inline double muonic_vp_ratio(int z, const PolarizationParamSet& params = builtin_params()) {
    const BoundStateLabel label{1, -1, constants::m_e, z};
    const double hadronic = shift_nonrel(label, params);
    const double mm = constants::m_mu;
    const double muonic = -4.0 * constants::alpha * z * constants::alpha * nonrel_density_at_origin(label) / (15.0 * mm * mm);
    return hadronic / gev_to_ev(muonic);
}

}  // namespace hvp
