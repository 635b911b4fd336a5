#pragma once

// Hadronic and leptonic Uehling potentials (potential energy of a unit
// charge, in GeV, as a function of r in GeV^-1).
//
// Hadronic variants:
//   - uehling_point_approx: point nucleus, first-region parameters, closed form
//   - uehling_sphere_closed: homogeneous sphere, first-region parameters, closed form
//   - uehling_convolved: any radial density, first-region parameters, 1D quadrature
//   - uehling_full: any form factor, all parameter regions, oscillatory quadrature

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"
#include "hvp/nuclear.hpp"
#include "hvp/polarization.hpp"
#include "hvp/quadrature.hpp"
#include "hvp/specfun.hpp"

namespace hvp {

enum class PotentialMethod { closed_form_approx, full_quadrature, convolution_numeric };

inline std::string to_string(PotentialMethod m) {
    switch (m) {
        case PotentialMethod::closed_form_approx: return "closed-form-approx";
        case PotentialMethod::full_quadrature: return "full-quadrature";
        case PotentialMethod::convolution_numeric: return "convolution-numeric";
    }
    return "?";
}

inline std::string to_string(LoopSpecies s) {
    switch (s) {
        case LoopSpecies::hadronic: return "hadronic";
        case LoopSpecies::electron_loop: return "electron-loop";
        case LoopSpecies::muon_loop: return "muon-loop";
    }
    return "?";
}

/// A radial potential with its method tag. Beyond `cutoff` the potential is
/// treated as exactly zero.
struct RadialPotential {
    std::function<double(double)> fn;
    std::string method;
    double cutoff = std::numeric_limits<double>::infinity();

    double operator()(double r) const { return r > cutoff ? 0.0 : fn(r); }
};

namespace detail {

inline double range_of(const PolarizationParamSet& p) { return std::sqrt(p.first().c); }

// Radius below which the finite-size closed forms switch to the even
// quadratic interpolation anchored at the analytic r = 0 value.
inline double small_r(double radius, double s) { return 1e-3 * std::min(radius, s); }

}  // namespace detail

/// Point nucleus with the first-region parameters extended to all momenta:
/// -(Z alpha A1)/r - (2 Z alpha B1 / r) E1(r / sqrt(C1)).
inline double uehling_point_approx(int z, const PolarizationParamSet& params, double r) {
    if (!(r > 0.0)) throw DomainError("uehling_point_approx: r must be positive");
    const auto& reg = params.first();
    const double za = z * constants::alpha;
    const double s = std::sqrt(reg.c);
    double v = -2.0 * za * reg.b * specfun::expint(1, r / s) / r;
    if (reg.a != 0.0) v -= za * reg.a / r;
    return v;
}

namespace detail {

// B1 part of the sphere potential for r > 0 (no small-r treatment).
inline double sphere_closed_b_term(double za, double b1, double s, double radius, double r) {
    const double c1 = s * s;
    const double rr = radius;
    const double pref = -3.0 * za * b1 * s / (r * rr * rr * rr);
    using specfun::expint;
    if (r >= rr) {
        const double xm = (r - rr) / s;
        const double xp = (r + rr) / s;
        const double d3p = expint(3, xm) + expint(3, xp);
        const double d4m = expint(4, xm) - expint(4, xp);
        return pref * (s * rr * d3p - c1 * d4m);
    }
    const double xp = (r + rr) / s;
    double br = s * r + s * rr * expint(3, xp) + c1 * expint(4, xp);
    br -= std::exp((r - rr) / s) * (2.0 * c1 + s * (r + 2.0 * rr) + (r - rr) * (r + 2.0 * rr)) / 6.0;
    br -= (r - rr) * (r - rr) * (r + 2.0 * rr) / (6.0 * s) * expint(1, (rr - r) / s);
    return pref * br;
}

// Analytic r -> 0 limit of the B1 part of the sphere potential.
inline double sphere_closed_b_origin(double za, double b1, double s, double radius) {
    const double y = radius / s;
    const double bracket = 0.5 * y * y * specfun::expint(1, y) + 0.5 * (1.0 - (y + 1.0) * std::exp(-y));
    return -6.0 * za * b1 * s * s / (radius * radius * radius) * bracket;
}

}  // namespace detail

/// Homogeneously charged sphere of radius R, first-region parameters.
/// Outside and inside closed forms; r -> 0 via the analytic limit.
inline double uehling_sphere_closed(int z, const PolarizationParamSet& params, double radius, double r) {
    if (r < 0.0) throw DomainError("uehling_sphere_closed: r must be non-negative");
    if (!(radius > 0.0)) throw DomainError("uehling_sphere_closed: R must be positive");
    const auto& reg = params.first();
    const double za = z * constants::alpha;
    const double s = std::sqrt(reg.c);
    const double r0 = detail::small_r(radius, s);
    double v;
    if (r >= r0) {
        v = detail::sphere_closed_b_term(za, reg.b, s, radius, r);
    } else {
        const double v0 = detail::sphere_closed_b_origin(za, reg.b, s, radius);
        const double v1 = detail::sphere_closed_b_term(za, reg.b, s, radius, r0);
        const double t = r / r0;
        v = v0 + (v1 - v0) * t * t;
    }
    if (reg.a != 0.0) {
        const double phi = r >= radius ? 1.0 / r : (3.0 * radius * radius - r * r) / (2.0 * radius * radius * radius);
        v -= za * reg.a * phi;
    }
    return v;
}

namespace detail {

// x rho(x) D^-_2(r, x) / r integrated over the density; r > 0.
inline double convolved_b_integral(const NuclearModel& model, double s, double r, double rel_tol) {
    using specfun::expint;
    auto kernel = [&](double x) {
        const double d = expint(2, std::abs(r - x) / s) - expint(2, (r + x) / s);
        return x * model.density(x) * d;
    };
    std::vector<double> breaks{0.0};
    double ext = model.extent();
    if (model.is_fermi()) {
        const auto& f = std::get<FermiShape>(model.shape());
        ext = f.c + 40.0 * f.a;  // density below 1e-17 of its centre
        for (double k : {f.c - 8.0 * f.a, f.c, f.c + 8.0 * f.a})
            if (k > 0.0) breaks.push_back(k);
    }
    if (r < ext) breaks.push_back(r);
    breaks.push_back(ext);
    std::sort(breaks.begin(), breaks.end());
    // The kernel's derivative is log-singular at x = r.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (!(hi > lo)) continue;
        sum += (lo == r || hi == r) ? quad::integrate_endpoint_singular(kernel, lo, hi, r, rel_tol, 12).value
                                    : quad::integrate(kernel, lo, hi, rel_tol, 12).value;
    }
    return sum;
}

// r -> 0 limit: \int x rho(x) (2/s) E1(x/s) dx.
inline double convolved_b_origin(const NuclearModel& model, double s, double rel_tol) {
    auto kernel = [&](double x) { return x * model.density(x) * 2.0 / s * specfun::expint(1, x / s); };
    std::vector<double> breaks{0.0, std::min(s, model.extent())};
    if (model.is_fermi()) {
        const auto& f = std::get<FermiShape>(model.shape());
        for (double k : {f.c - 8.0 * f.a, f.c, f.c + 8.0 * f.a})
            if (k > breaks.back()) breaks.push_back(k);
    }
    if (model.extent() > breaks.back()) breaks.push_back(model.extent());
    return quad::integrate_pieces(kernel, breaks, rel_tol).value;
}

}  // namespace detail

/// Real-space convolution of the point potential with the model's density:
/// -(4 pi Z alpha B1 sqrt(C1) / r) \int_0^\infty x rho(x) D^-_2(r, x) dx,
/// with D^-_2(r,x) = E2(|r-x|/sqrt(C1)) - E2((r+x)/sqrt(C1)).
inline double uehling_convolved(int z, const PolarizationParamSet& params, const NuclearModel& model, double r,
                                double rel_tol = 1e-11) {
    if (r < 0.0) throw DomainError("uehling_convolved: r must be non-negative");
    if (model.is_point()) throw DomainError("uehling_convolved: model has no radial density (point nucleus)");
    const auto& reg = params.first();
    const double za = z * constants::alpha;
    const double s = std::sqrt(reg.c);
    const double pref = -4.0 * constants::pi * za * reg.b * s;
    const double r0 = detail::small_r(model.size(), s);
    double v;
    if (r >= r0) {
        v = pref / r * detail::convolved_b_integral(model, s, r, rel_tol);
    } else {
        const double v0 = pref * detail::convolved_b_origin(model, s, rel_tol);
        const double v1 = pref / r0 * detail::convolved_b_integral(model, s, r0, rel_tol);
        const double t = r / r0;
        v = v0 + (v1 - v0) * t * t;
    }
    if (reg.a != 0.0) v -= za * reg.a * model.unit_potential(r);
    return v;
}

struct FullQuadratureOptions {
    double rel_tol = 1e-10;
    int max_direct_panels = 20000;
};

namespace detail {

// \int_lo^hi f for f = (slowly varying) x (oscillation of angular frequency w).
// Below a few periods the range is cut geometrically; beyond, Wynn-accelerated
// half-period tails are used.
template <class F>
double single_frequency_integral(F&& f, double w, double lo, double hi, double rel_tol, double abs_tol) {
    const double pi = constants::pi;
    const double switch_at = w > 0.0 ? std::max(lo, 4.0 * pi / w) : std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double q = lo;
    while (q < std::min(switch_at, hi)) {
        const double next = std::min({2.0 * q, switch_at, hi});
        const double piece = quad::integrate(f, q, next, 1e-13, 12).value;
        sum += piece;
        q = next;
        if (!std::isfinite(hi) && !std::isfinite(switch_at) && std::abs(piece) <= 1e-3 * abs_tol) return sum;
    }
    if (q >= hi) return sum;
    double part = quad::oscillatory_tail(f, q, pi / w, rel_tol, abs_tol).value;
    if (std::isfinite(hi)) part -= quad::oscillatory_tail(f, hi, pi / w, rel_tol, abs_tol).value;
    return sum + part;
}

// \int_0^kmax j0(qr) F(q) Pi(q) dq by half-period panels.
inline double full_momentum_integral(const PolarizationParamSet& params, const NuclearModel& model, double r,
                                     const FullQuadratureOptions& opt) {
    const double kmax = params.upper_edge();
    const double size = model.size();
    const double pi = constants::pi;

    auto integrand_for = [&](const PolarizationRegion& reg) {
        return [&, reg](double q) { return specfun::sph_bessel_j(0, q * r) * model.form_factor(q) * reg.re_pi(q); };
    };
    auto integrand = [&](double q) {
        return specfun::sph_bessel_j(0, q * r) * model.form_factor(q) * params.region(params.region_index(q)).re_pi(q);
    };

    // Panel width follows the dominant oscillation; Wynn acceleration is
    // reliable only when one frequency dominates.
    double h;
    bool accelerate;
    if (model.is_point()) {
        h = pi / r;
        accelerate = true;
    } else if (r > 10.0 * size) {
        h = pi / r;
        accelerate = true;
    } else if (r < 0.1 * size) {
        h = pi / size;
        accelerate = true;
    } else {
        h = pi / (r + size);
        accelerate = false;
    }
    const int direct_limit = (accelerate || model.is_sphere()) ? 60 : opt.max_direct_panels;

    // Tail bound for decaying form factors: |j0| <= min(1, 1/(qr)), and the
    // model's envelope decays at least as q^-2.
    auto tail_bound = [&](double q) {
        if (model.is_point()) return std::numeric_limits<double>::infinity();
        const double ff = model.form_factor_envelope(q);
        const double pi_est = std::abs(params.region(params.region_index(100.0 * q)).re_pi(100.0 * q));
        const bool j0_decays = q * r > 1.0;
        const double j0b = j0_decays ? 1.0 / (q * r) : 1.0;
        const double power = j0_decays ? 2.0 : 1.0;  // \int_q^\infty t^{-(power+1)} = q^{-power}/power
        return 2.0 * ff * j0b * pi_est * q / power;
    };

    double sum = 0.0;
    double l1 = 0.0;  // scale for the tolerance when the result is itself small
    double q = 0.0;
    int panels = 0;
    long edge = 1;  // next multiple of h
    while (q < kmax) {
        const std::size_t idx = params.region_index(q);
        const double next = std::min(static_cast<double>(edge) * h, params.region(idx).k_hi);
        if (next == static_cast<double>(edge) * h) ++edge;
        const double piece = quad::integrate(integrand, q, next, 1e-13, 6).value;
        sum += piece;
        l1 += std::abs(piece);
        q = next;
        ++panels;
        if (q >= kmax) return sum;
        if (!model.is_point() && q * std::max(size, 1e-300) > 50.0 &&
            tail_bound(q) <= opt.rel_tol * l1)
            return sum;
        if (panels >= direct_limit) break;
    }
    if (!accelerate && model.is_sphere()) {
        // j0(qr) F(q) = 3/(2 r R^3 q^4) {[cos(qd) - qR sin(qd)] - [cos(qs) + qR sin(qs)]}
        // with d = r - R, s = r + R: each part has a single frequency.
        const double radius = size;
        const double pre = 3.0 / (2.0 * r * radius * radius * radius);
        const double d = r - radius;
        const double s = r + radius;
        const double abs_tol = 1e-3 * opt.rel_tol * l1;
        for (std::size_t i = params.region_index(q); i < params.size(); ++i) {
            const auto& reg = params.region(i);
            const double lo = std::max(q, reg.k_lo);
            if (lo >= reg.k_hi) continue;
            auto diff = [&, reg](double k) {
                const double k2 = k * k;
                return pre * (std::cos(k * d) - k * radius * std::sin(k * d)) / (k2 * k2) * reg.re_pi(k);
            };
            auto plus = [&, reg](double k) {
                const double k2 = k * k;
                return -pre * (std::cos(k * s) + k * radius * std::sin(k * s)) / (k2 * k2) * reg.re_pi(k);
            };
            try {
                sum += single_frequency_integral(diff, std::abs(d), lo, reg.k_hi, opt.rel_tol, abs_tol);
                sum += single_frequency_integral(plus, s, lo, reg.k_hi, opt.rel_tol, abs_tol);
            } catch (const ConvergenceError& e) {
                throw ConvergenceError("uehling_full: region " + std::to_string(i + 1) + " at r = " +
                                       std::to_string(r) + ": " + e.what());
            }
        }
        return sum;
    }
    if (!accelerate) {
        throw ConvergenceError("uehling_full: direct panel summation not converged at r = " + std::to_string(r) +
                               " after " + std::to_string(panels) + " panels (q = " + std::to_string(q) +
                               ", tail bound " + std::to_string(tail_bound(q)) + ", partial sum " +
                               std::to_string(sum) + ")");
    }
    // Remaining part of each region as a difference of accelerated tails.
    const double abs_tol = 1e-3 * opt.rel_tol * l1;
    for (std::size_t i = params.region_index(q); i < params.size(); ++i) {
        const auto& reg = params.region(i);
        const double lo = std::max(q, reg.k_lo);
        if (lo >= reg.k_hi) continue;
        const auto f = integrand_for(reg);
        try {
            double part = quad::oscillatory_tail(f, lo, h, opt.rel_tol, abs_tol).value;
            if (std::isfinite(reg.k_hi)) part -= quad::oscillatory_tail(f, reg.k_hi, h, opt.rel_tol, abs_tol).value;
            sum += part;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("uehling_full: region " + std::to_string(i + 1) + " at r = " + std::to_string(r) +
                                   ": " + e.what());
        }
    }
    return sum;
}

}  // namespace detail

/// Full piecewise parameterization: -(2 Z alpha / pi) sum_i \int_{k_{i-1}}^{k_i}
/// j0(qr) F(q) [A_i + B_i ln(1 + C_i q^2)] dq, up to the last tabulated edge.
inline double uehling_full(int z, const PolarizationParamSet& params, const NuclearModel& model, double r,
                           const FullQuadratureOptions& opt = {}) {
    if (r < 0.0 || (model.is_point() && r == 0.0))
        throw DomainError("uehling_full: r must be positive (non-negative for extended nuclei)");
    const double za = z * constants::alpha;
    return -2.0 * za / constants::pi * detail::full_momentum_integral(params, model, r, opt);
}

/// One-loop leptonic Uehling potential of a point nucleus for a loop lepton
/// of mass `mass`:
/// -(2 Z alpha^2 / (3 pi r)) \int_1^\infty e^{-2 m r t} (1 + 1/(2t^2)) sqrt(t^2-1)/t^2 dt.
inline double uehling_leptonic_mass(double mass, int z, double r) {
    if (!(r > 0.0)) throw DomainError("uehling_leptonic: r must be positive");
    const double mr2 = 2.0 * mass * r;
    // t = cosh(u); the e^{-2mr} factor is pulled out of the integrand.
    auto f = [mr2](double u) {
        const double ch = std::cosh(u);
        const double th = std::tanh(u);
        return std::exp(-mr2 * (ch - 1.0)) * (1.0 + 0.5 / (ch * ch)) * th * th;
    };
    const double umax = std::acosh(1.0 + 800.0 / mr2);
    std::vector<double> breaks{0.0};
    for (double u : {0.25 * umax, 0.5 * umax, 0.75 * umax})
        if (u < 2.0) breaks.push_back(u);
    if (umax > 2.0) breaks.push_back(2.0);
    breaks.push_back(umax);
    const double integral = quad::integrate_pieces(f, breaks, 1e-13).value;
    return -2.0 * z * constants::alpha * constants::alpha / (3.0 * constants::pi * r) * std::exp(-mr2) * integral;
}

inline double uehling_leptonic(LoopSpecies species, int z, double r) {
    switch (species) {
        case LoopSpecies::electron_loop: return uehling_leptonic_mass(constants::m_e, z, r);
        case LoopSpecies::muon_loop: return uehling_leptonic_mass(constants::m_mu, z, r);
        case LoopSpecies::hadronic: break;
    }
    throw DomainError("uehling_leptonic: species must be a lepton loop");
}

struct PotentialSpec {
    LoopSpecies species = LoopSpecies::hadronic;
    PolarizationParamSet params = builtin_params();
    NuclearModel model = NuclearModel::point(1);
    PotentialMethod method = PotentialMethod::closed_form_approx;
    FullQuadratureOptions full{};
};

/// Builds a callable potential. Hadronic potentials are cut off where
/// exp(-r / sqrt(C1)) < 1e-35 relative to their short-distance scale.
inline RadialPotential make_potential(const PotentialSpec& spec) {
    const int z = spec.model.z();
    if (spec.species != LoopSpecies::hadronic) {
        if (!spec.model.is_point() || spec.method != PotentialMethod::closed_form_approx)
            throw DomainError("leptonic Uehling potentials are provided for point nuclei only");
        const auto species = spec.species;
        return {[species, z](double r) { return uehling_leptonic(species, z, r); }, to_string(species)};
    }
    const auto params = spec.params;
    const auto model = spec.model;
    const double cutoff = model.extent() + 80.0 * detail::range_of(params);
    switch (spec.method) {
        case PotentialMethod::closed_form_approx:
            if (model.is_point())
                return {[params, z](double r) { return uehling_point_approx(z, params, r); }, "closed-form-approx", cutoff};
            if (model.is_sphere()) {
                const double radius = model.sphere_radius();
                return {[params, z, radius](double r) { return uehling_sphere_closed(z, params, radius, r); },
                        "closed-form-approx", cutoff};
            }
            throw DomainError("closed-form-approx potential exists for point and sphere models only");
        case PotentialMethod::convolution_numeric:
            return {[params, model, z](double r) { return uehling_convolved(z, params, model, r); },
                    "convolution-numeric", cutoff};
        case PotentialMethod::full_quadrature:
            return {[params, model, z, opt = spec.full](double r) { return uehling_full(z, params, model, r, opt); },
                    "full-quadrature", cutoff};
    }
    throw DomainError("unknown potential method");
}

}  // namespace hvp
