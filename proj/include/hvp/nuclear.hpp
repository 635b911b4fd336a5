#pragma once

// Nuclear charge distributions: point charge, homogeneously charged sphere
// and two-parameter Fermi distribution. Lengths are natural (GeV^-1) unless
// a name says `_fm`. Densities are normalized to unit total charge, so the
// form factor is returned in units of Z e.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"
#include "hvp/quadrature.hpp"
#include "hvp/specfun.hpp"
#include "hvp/units.hpp"

namespace hvp {

inline double rms_to_sphere_radius(double r_rms) {
    if (!(r_rms > 0.0)) throw DomainError("rms_to_sphere_radius: radius must be positive");
    return std::sqrt(5.0 / 3.0) * r_rms;
}

inline double sphere_radius_to_rms(double radius) {
    if (!(radius > 0.0)) throw DomainError("sphere_radius_to_rms: radius must be positive");
    return std::sqrt(3.0 / 5.0) * radius;
}

/// Skin thickness t (10%-90% fall-off distance) to Fermi diffuseness a.
inline double fermi_diffuseness_from_skin(double t) { return t / (4.0 * std::log(3.0)); }

struct PointShape {};

struct SphereShape {
    double radius;
};

struct FermiShape {
    double c;     ///< half-density radius
    double a;     ///< diffuseness
    double rho0;  ///< central density for unit total charge
};

namespace detail {

inline double fermi_profile(double r, double c, double a) {
    const double x = (r - c) / a;
    if (x > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(x));
}

// Moments \int_0^\infty r^k / (1 + exp((r-c)/a)) dr.
inline double fermi_moment(int k, double c, double a) {
    auto f = [=](double r) { return std::pow(r, k) * fermi_profile(r, c, a); };
    return quad::integrate_pieces(f, {0.0, c, c + 10.0 * a, c + 80.0 * a}, 1e-14).value;
}

inline double fermi_rms(double c, double a) { return std::sqrt(fermi_moment(4, c, a) / fermi_moment(2, c, a)); }

}  // namespace detail

class NuclearModel {
public:
    using Shape = std::variant<PointShape, SphereShape, FermiShape>;

    static NuclearModel point(int z) { return NuclearModel(z, PointShape{}); }

    static NuclearModel sphere(int z, double radius) {
        if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
        return NuclearModel(z, SphereShape{radius});
    }

    static NuclearModel sphere_from_rms_fm(int z, double rms_fm) {
        return sphere(z, rms_to_sphere_radius(fm_to_natural(rms_fm)));
    }

    /// Fermi distribution from half-density radius c and diffuseness a.
    static NuclearModel fermi(int z, double c, double a) {
        if (!(c > 0.0) || !(a > 0.0)) throw DomainError("Fermi parameters c and a must be positive");
        const double norm = 4.0 * constants::pi * detail::fermi_moment(2, c, a);
        return NuclearModel(z, FermiShape{c, a, 1.0 / norm});
    }

    /// Fermi distribution with given rms radius and skin thickness t; c is
    /// found by bisection on the second moment.
    static NuclearModel fermi_from_rms_fm(int z, double rms_fm, double skin_fm = 2.3) {
        const double rms = fm_to_natural(rms_fm);
        const double a = fermi_diffuseness_from_skin(fm_to_natural(skin_fm));
        double lo = 1e-6 * a;
        double hi = 2.0 * rms;
        if (detail::fermi_rms(lo, a) >= rms)
            throw DomainError("Fermi model: rms radius too small for the requested skin thickness");
        for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (detail::fermi_rms(mid, a) < rms ? lo : hi) = mid;
        }
        return fermi(z, 0.5 * (lo + hi), a);
    }

    /// Same shape family rescaled to a new rms radius; Fermi keeps its skin
    /// thickness. Point models are returned unchanged.
    NuclearModel with_rms_fm(double rms_fm) const {
        if (is_sphere()) return sphere_from_rms_fm(z_, rms_fm);
        if (const auto* f = std::get_if<FermiShape>(&shape_))
            return fermi_from_rms_fm(z_, rms_fm, natural_to_fm(f->a) * 4.0 * std::log(3.0));
        return *this;
    }

    int z() const { return z_; }
    const Shape& shape() const { return shape_; }
    bool is_point() const { return std::holds_alternative<PointShape>(shape_); }
    bool is_sphere() const { return std::holds_alternative<SphereShape>(shape_); }
    bool is_fermi() const { return std::holds_alternative<FermiShape>(shape_); }

    std::string name() const {
        if (is_point()) return "point";
        if (is_sphere()) return "sphere";
        return "fermi";
    }

    /// Sphere radius R; throws for other shapes.
    double sphere_radius() const {
        if (const auto* s = std::get_if<SphereShape>(&shape_)) return s->radius;
        throw DomainError("sphere_radius: model is not a homogeneous sphere");
    }

    /// Length scale of the distribution: R (sphere), c (Fermi), 0 (point).
    double size() const {
        if (const auto* s = std::get_if<SphereShape>(&shape_)) return s->radius;
        if (const auto* f = std::get_if<FermiShape>(&shape_)) return f->c;
        return 0.0;
    }

    /// Radius beyond which the density vanishes (or is below 1e-30 of its peak).
    double extent() const {
        if (const auto* s = std::get_if<SphereShape>(&shape_)) return s->radius;
        if (const auto* f = std::get_if<FermiShape>(&shape_)) return f->c + 70.0 * f->a;
        return 0.0;
    }

    double rms_radius() const {
        if (const auto* s = std::get_if<SphereShape>(&shape_)) return sphere_radius_to_rms(s->radius);
        if (const auto* f = std::get_if<FermiShape>(&shape_)) return detail::fermi_rms(f->c, f->a);
        return 0.0;
    }

    /// Charge density normalized to \int rho d^3x = 1. Point: throws.
    double density(double r) const {
        if (const auto* s = std::get_if<SphereShape>(&shape_))
            return r <= s->radius ? 3.0 / (4.0 * constants::pi * s->radius * s->radius * s->radius) : 0.0;
        if (const auto* f = std::get_if<FermiShape>(&shape_)) return f->rho0 * detail::fermi_profile(r, f->c, f->a);
        throw DomainError("density: a point nucleus has no radial density");
    }

    /// Form factor rho~(q)/(Z e), equal to 1 at q = 0.
    double form_factor(double q) const {
        if (q < 0.0) throw DomainError("form_factor: momentum must be non-negative");
        if (std::holds_alternative<PointShape>(shape_)) return 1.0;
        if (const auto* s = std::get_if<SphereShape>(&shape_)) return specfun::sphere_form_factor(q * s->radius);
        const auto& f = std::get<FermiShape>(shape_);
        if (q * f.c < 1e-3) {
            const double r2 = detail::fermi_moment(4, f.c, f.a) / detail::fermi_moment(2, f.c, f.a);
            const double r4 = detail::fermi_moment(6, f.c, f.a) / detail::fermi_moment(2, f.c, f.a);
            return 1.0 - q * q * r2 / 6.0 + q * q * q * q * r4 / 120.0;
        }
        // \int_0^\infty r sin(qr) / (1 + e^{(r-c)/a}) dr in closed form: a
        // pole sum plus an exponentially small series in e^{-c/a}.
        const double x = constants::pi * q * f.a;
        double value = 0.0;
        if (x < 700.0)
            value = constants::pi * f.a / std::sinh(x) *
                    (constants::pi * f.a / std::tanh(x) * std::sin(q * f.c) - f.c * std::cos(q * f.c));
        const double qa = q * f.a;
        double series = 0.0;
        for (int n = 1; n < 400; ++n) {
            const double damp = std::exp(-n * f.c / f.a);
            const double den = n * n + qa * qa;
            const double term = n * damp * qa / (den * den);
            series += (n % 2 == 1) ? term : -term;
            if (damp < 1e-18) break;
        }
        value += 2.0 * f.a * f.a * series;
        return 4.0 * constants::pi * f.rho0 / q * value;
    }

    /// Upper bound of |form_factor(q')| for all q' >= q.
    double form_factor_envelope(double q) const {
        if (std::holds_alternative<PointShape>(shape_)) return 1.0;
        if (const auto* s = std::get_if<SphereShape>(&shape_)) {
            const double x = q * s->radius;
            return x <= 3.0 ? 1.0 : 3.0 * (1.0 + 1.0 / x) / (x * x);
        }
        const auto& f = std::get<FermiShape>(shape_);
        const double x = constants::pi * q * f.a;
        if (x < 1.0 || q * f.c < 3.0) return 1.0;
        const double qa = q * f.a;
        const double e = std::exp(-f.c / f.a);
        const double main =
            x < 700.0 ? constants::pi * f.a / std::sinh(x) * (constants::pi * f.a / std::tanh(x) + f.c) : 0.0;
        const double series = 2.0 * f.a * f.a / (qa * qa * qa) * e / ((1.0 - e) * (1.0 - e));
        return std::min(1.0, 4.0 * constants::pi * f.rho0 / q * (main + series));
    }

    /// Electrostatic potential of the normalized distribution: phi(r) with
    /// phi -> 1/r outside. The nuclear potential energy is -Z alpha phi(r).
    double unit_potential(double r) const {
        if (std::holds_alternative<PointShape>(shape_)) {
            if (!(r > 0.0)) throw DomainError("point-nucleus potential is singular at r = 0");
            return 1.0 / r;
        }
        if (const auto* s = std::get_if<SphereShape>(&shape_)) {
            const double rr = s->radius;
            return r >= rr ? 1.0 / r : (3.0 * rr * rr - r * r) / (2.0 * rr * rr * rr);
        }
        const auto& f = std::get<FermiShape>(shape_);
        const double rmax = f.c + 80.0 * f.a;
        auto inner = [&](double x) { return x * x * f.rho0 * detail::fermi_profile(x, f.c, f.a); };
        auto outer = [&](double x) { return x * f.rho0 * detail::fermi_profile(x, f.c, f.a); };
        auto pieces = [&](double lo, double hi) {
            std::vector<double> b{lo};
            for (double knot : {f.c - 10.0 * f.a, f.c, f.c + 10.0 * f.a})
                if (knot > lo && knot < hi) b.push_back(knot);
            b.push_back(hi);
            return b;
        };
        double enclosed = 0.0;
        double shell = 0.0;
        if (r > 0.0) enclosed = quad::integrate_pieces(inner, pieces(0.0, std::min(r, rmax)), 1e-13).value;
        if (r < rmax) shell = quad::integrate_pieces(outer, pieces(r, rmax), 1e-13).value;
        const double four_pi = 4.0 * constants::pi;
        if (r == 0.0) return four_pi * shell;
        return four_pi * (enclosed / r + shell);
    }

    /// Nuclear Coulomb potential energy of a unit-charge lepton [GeV].
    double coulomb_potential(double r) const { return -z_ * constants::alpha * unit_potential(r); }

private:
    NuclearModel(int z, Shape shape) : z_(z), shape_(shape) {
        if (z < 1) throw DomainError("nuclear charge Z must be >= 1");
        if (!(z * constants::alpha < 1.0)) throw DomainError("nuclear charge too large: Z alpha >= 1");
    }

    int z_;
    Shape shape_;
};

struct RadiusEntry {
    double rms_fm = 0.0;
    double uncertainty_fm = 0.0;
};

/// Z -> rms charge radius [fm] with its uncertainty.
class RadiusTable {
public:
    RadiusTable() = default;
    explicit RadiusTable(std::map<int, RadiusEntry> entries) : entries_(std::move(entries)) {}

    bool contains(int z) const { return entries_.count(z) != 0; }

    const RadiusEntry& at(int z) const {
        const auto it = entries_.find(z);
        if (it == entries_.end()) throw LookupError("no rms radius tabulated for Z = " + std::to_string(z));
        return it->second;
    }

    void set(int z, RadiusEntry e) { entries_[z] = e; }

    /// Entries of `other` override ours.
    void merge(const RadiusTable& other) {
        for (const auto& [z, e] : other.entries_) entries_[z] = e;
    }

    const std::map<int, RadiusEntry>& entries() const { return entries_; }

private:
    std::map<int, RadiusEntry> entries_;
};

/// Embedded radii for the tabulated ions (Z = 96 has no quoted uncertainty).
inline RadiusTable builtin_radii() {
    return RadiusTable({
        {1, {0.8783, 0.0086}},
        {14, {3.1224, 0.0024}},
        {20, {3.4776, 0.0019}},
        {36, {4.1884, 0.0022}},
        {54, {4.7859, 0.0048}},
        {74, {5.3658, 0.0023}},
        {82, {5.5012, 0.0013}},
        {96, {5.85, 0.0}},
    });
}

/// CSV with header `Z,R_rms_fm,uncertainty_fm`.
inline RadiusTable parse_radii_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool header = false;
    RadiusTable table;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) {
            const auto b = c.find_first_not_of(" \t");
            const auto e = c.find_last_not_of(" \t");
            cols.push_back(b == std::string::npos ? "" : c.substr(b, e - b + 1));
        }
        if (!header) {
            if (cols.size() != 3 || cols[0] != "Z" || cols[1] != "R_rms_fm" || cols[2] != "uncertainty_fm")
                throw ParseError("radius CSV: header must be 'Z,R_rms_fm,uncertainty_fm'");
            header = true;
            continue;
        }
        if (cols.size() != 3) throw ParseError("radius CSV line " + std::to_string(line_no) + ": expected 3 columns");
        try {
            const int z = std::stoi(cols[0]);
            const RadiusEntry e{std::stod(cols[1]), std::stod(cols[2])};
            if (z < 1 || !(e.rms_fm > 0.0) || !(e.uncertainty_fm >= 0.0))
                throw ParseError("radius CSV line " + std::to_string(line_no) + ": value out of range");
            table.set(z, e);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("radius CSV line " + std::to_string(line_no) + ": cannot parse numbers");
        }
    }
    if (!header) throw ParseError("radius CSV: empty file");
    return table;
}

inline RadiusTable load_radii_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open radius file '" + path + "'");
    return parse_radii_csv(in);
}

}  // namespace hvp
