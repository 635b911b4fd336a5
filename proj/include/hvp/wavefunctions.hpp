#pragma once

// Bound-state labels and analytic Dirac-Coulomb radial functions of a point
// nucleus. Radial functions follow psi = (g Omega_{kappa m}, i f Omega_{-kappa m}),
// normalized to \int (g^2 + f^2) r^2 dr = 1.

#include <cmath>
#include <cstdlib>
#include <string>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"

namespace hvp {

/// (n, kappa) of a hydrogenlike state bound to a nucleus of charge Z, for a
/// lepton of mass `mass` [GeV].
struct BoundStateLabel {
    int n = 1;
    int kappa = -1;
    double mass = constants::m_e;
    int z = 1;

    int l() const { return kappa > 0 ? kappa : -kappa - 1; }
    int radial_nodes() const { return n - l() - 1; }
    double gamma() const {
        const double za = z * constants::alpha;
        return std::sqrt(double(kappa) * kappa - za * za);
    }

    /// Throws DomainError unless (n, kappa) is a valid Dirac pair and Z alpha < |kappa|.
    void validate() const {
        if (n < 1) throw DomainError("principal quantum number must be >= 1");
        if (kappa == 0 || kappa < -n || kappa > n - 1)
            throw DomainError("invalid Dirac quantum numbers n = " + std::to_string(n) +
                              ", kappa = " + std::to_string(kappa));
        if (!(mass > 0.0)) throw DomainError("lepton mass must be positive");
        if (z < 1) throw DomainError("nuclear charge Z must be >= 1");
        if (!(z * constants::alpha < std::abs(kappa))) throw DomainError("Z alpha >= |kappa|: no real gamma");
    }

    /// Spectroscopic name, e.g. "2p1/2".
    std::string name() const {
        static const char* letters = "spdfghik";
        const int j2 = 2 * std::abs(kappa) - 1;
        return std::to_string(n) + letters[l()] + std::to_string(j2) + "/2";
    }
};

/// Parses "1s", "2s", "2p1/2", "2p3/2", ... (s states may omit "1/2").
inline BoundStateLabel parse_state(const std::string& s, int z, double mass) {
    std::size_t pos = 0;
    int n = 0;
    try {
        n = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("cannot parse state '" + s + "'");
    }
    if (pos >= s.size()) throw DomainError("cannot parse state '" + s + "'");
    static const std::string letters = "spdfghik";
    const auto l = static_cast<int>(letters.find(s[pos]));
    if (l < 0) throw DomainError("unknown orbital letter in '" + s + "'");
    const std::string rest = s.substr(pos + 1);
    int j2;
    if (rest.empty()) {
        if (l != 0) throw DomainError("state '" + s + "' needs j (e.g. 2p1/2)");
        j2 = 1;
    } else if (rest.size() >= 3 && rest.substr(rest.size() - 2) == "/2") {
        j2 = std::stoi(rest.substr(0, rest.size() - 2));
    } else {
        throw DomainError("cannot parse j in state '" + s + "'");
    }
    int kappa;
    if (j2 == 2 * l + 1) kappa = -(l + 1);
    else if (j2 == 2 * l - 1 && l > 0) kappa = l;
    else throw DomainError("j incompatible with l in state '" + s + "'");
    BoundStateLabel label{n, kappa, mass, z};
    label.validate();
    return label;
}

/// Sommerfeld fine-structure energy, including the rest mass [GeV].
inline double dirac_energy(const BoundStateLabel& s) {
    s.validate();
    const double za = s.z * constants::alpha;
    const double nr = s.n - std::abs(s.kappa);
    const double d = za / (nr + s.gamma());
    return s.mass / std::sqrt(1.0 + d * d);
}

/// Analytic point-nucleus Dirac-Coulomb state.
class DiracCoulombState {
public:
    explicit DiracCoulombState(const BoundStateLabel& label) : label_(label) {
        label.validate();
        const double m = label.mass;
        const double za = label.z * constants::alpha;
        const int ak = std::abs(label.kappa);
        nr_ = label.n - ak;
        gamma_ = label.gamma();
        energy_ = dirac_energy(label);
        // m^2 - E^2 = m^2 d^2 / (1 + d^2) avoids cancellation at small Z alpha.
        const double d = za / (nr_ + gamma_);
        lambda_ = m * d / std::sqrt(1.0 + d * d);
        const double big_n = std::sqrt(double(label.n) * label.n - 2.0 * nr_ * (ak - gamma_));
        n_minus_kappa_ = big_n - label.kappa;
        const double log_norm = 0.5 * std::log(2.0 * lambda_) - std::lgamma(2.0 * gamma_ + 1.0) +
                                0.5 * (std::lgamma(2.0 * gamma_ + nr_ + 1.0) -
                                       std::log(4.0 * big_n * n_minus_kappa_) - std::lgamma(nr_ + 1.0));
        // 1 +- E/m written without cancellation.
        const double one_minus = d * d / (std::sqrt(1.0 + d * d) * (std::sqrt(1.0 + d * d) + 1.0));
        log_large_ = log_norm + 0.5 * std::log(2.0 - one_minus);
        log_small_ = log_norm + 0.5 * std::log(one_minus);
    }

    const BoundStateLabel& label() const { return label_; }
    double energy() const { return energy_; }
    double binding_energy() const { return energy_ - label_.mass; }
    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }

    /// r g(r) and r f(r).
    double large_p(double r) const { return radial(r, true); }
    double small_q(double r) const { return radial(r, false); }

    double g(double r) const { return large_p(r) / r; }
    double f(double r) const { return small_q(r) / r; }

    /// (g^2 + f^2) r^2.
    double radial_density(double r) const {
        const double p = large_p(r);
        const double q = small_q(r);
        return p * p + q * q;
    }

private:
    // Terminating 1F1(-k; b; x).
    static double laguerre_like(int k, double b, double x) {
        double term = 1.0;
        double sum = 1.0;
        for (int i = 0; i < k; ++i) {
            term *= (-k + i) * x / ((b + i) * (i + 1.0));
            sum += term;
        }
        return sum;
    }

    double radial(double r, bool large) const {
        if (!(r > 0.0)) return 0.0;
        const double x = 2.0 * lambda_ * r;
        const double b = 2.0 * gamma_ + 1.0;
        const double f1 = nr_ > 0 ? laguerre_like(nr_ - 1, b, x) : 0.0;
        const double f0 = laguerre_like(nr_, b, x);
        const double envelope = std::exp((large ? log_large_ : log_small_) + gamma_ * std::log(x) - 0.5 * x);
        if (large) return envelope * (-nr_ * f1 + n_minus_kappa_ * f0);
        return -envelope * (nr_ * f1 + n_minus_kappa_ * f0);
    }

    BoundStateLabel label_;
    int nr_ = 0;
    double gamma_ = 1.0;
    double energy_ = 0.0;
    double lambda_ = 0.0;
    double n_minus_kappa_ = 0.0;
    double log_large_ = 0.0;
    double log_small_ = 0.0;
};

inline DiracCoulombState dirac_coulomb(const BoundStateLabel& label) { return DiracCoulombState(label); }

/// Non-relativistic |psi(0)|^2 = (Z alpha m)^3 / (pi n^3) for s states [GeV^3].
inline double nonrel_density_at_origin(const BoundStateLabel& s) {
    if (s.l() != 0) throw DomainError("nonrel_density_at_origin: only s states have a non-zero density at r = 0");
    const double lam = s.z * constants::alpha * s.mass;
    return lam * lam * lam / (constants::pi * s.n * s.n * s.n);
}

}  // namespace hvp
