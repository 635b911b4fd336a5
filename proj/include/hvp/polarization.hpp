#pragma once

// Piecewise-logarithmic parameterization of the real part of the hadronic
// photon polarization function, Re Pi(-q^2) = A_i + B_i ln(1 + C_i q^2) on
// momentum region i, plus the analytic one-loop leptonic polarization.

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"

namespace hvp {

/// One momentum region [k_lo, k_hi) of the parameterization. Momenta in GeV,
/// C in GeV^-2, A and B dimensionless.
struct PolarizationRegion {
    double k_lo = 0.0;
    double k_hi = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double re_pi(double q) const { return a + b * std::log1p(c * q * q); }
    bool operator==(const PolarizationRegion&) const = default;
};

enum class LoopSpecies { hadronic, electron_loop, muon_loop };

/// Validated, immutable parameter set.
class PolarizationParamSet {
public:
    PolarizationParamSet(std::vector<PolarizationRegion> regions, std::string label)
        : regions_(std::move(regions)), label_(std::move(label)) {
        validate();
    }

    const std::vector<PolarizationRegion>& regions() const { return regions_; }
    const PolarizationRegion& region(std::size_t i) const { return regions_.at(i); }
    const PolarizationRegion& first() const { return regions_.front(); }
    std::size_t size() const { return regions_.size(); }
    const std::string& label() const { return label_; }
    double upper_edge() const { return regions_.back().k_hi; }

    /// Index of the region containing q; above the last edge the last region.
    std::size_t region_index(double q) const {
        for (std::size_t i = 0; i < regions_.size(); ++i)
            if (q < regions_[i].k_hi) return i;
        return regions_.size() - 1;
    }

    /// Same set with the first region extended over all momenta.
    PolarizationParamSet first_region_only() const {
        PolarizationRegion r = regions_.front();
        r.k_hi = std::numeric_limits<double>::infinity();
        return PolarizationParamSet({r}, label_ + "/first-region");
    }

    bool operator==(const PolarizationParamSet& o) const { return regions_ == o.regions_; }

private:
    void validate() const {
        if (regions_.empty()) throw InvariantError("polarization parameter set has no regions");
        auto fail = [](std::size_t i, const std::string& what) {
            throw InvariantError("polarization region " + std::to_string(i + 1) + ": " + what);
        };
        if (regions_.front().k_lo != 0.0) fail(0, "first region must start at k = 0");
        for (std::size_t i = 0; i < regions_.size(); ++i) {
            const auto& r = regions_[i];
            if (!(r.k_hi > r.k_lo)) fail(i, "k_hi must exceed k_lo");
            if (!(r.c > 0.0)) fail(i, "C must be positive");
            if (!(r.b >= 0.0)) fail(i, "B must be non-negative");
            if (!std::isfinite(r.a) || !std::isfinite(r.b) || !std::isfinite(r.c)) fail(i, "non-finite coefficient");
            if (i + 1 < regions_.size() && regions_[i + 1].k_lo != r.k_hi)
                fail(i, "regions must be sorted and contiguous (k_hi != next k_lo)");
            if (i + 1 < regions_.size() && std::isinf(r.k_hi)) fail(i, "only the last region may extend to infinity");
        }
    }

    std::vector<PolarizationRegion> regions_;
    std::string label_;
};

/// Seven-region parameterization with edges {0, 0.7, 2, 4, 10, m_Z, 1e4, 1e5} GeV.
inline PolarizationParamSet builtin_params() {
    const double mz = constants::m_Z;
    return PolarizationParamSet(
        {
            {0.0, 0.7, 0.0, 0.0023092, 3.9925370},
            {0.7, 2.0, 0.0, 0.0022333, 4.2191779},
            {2.0, 4.0, 0.0, 0.0024402, 3.2496684},
            {4.0, 10.0, 0.0, 0.0027340, 2.0995092},
            {10.0, mz, 0.0010485, 0.0029431, 1.0},
            {mz, 1e4, 0.0012234, 0.0029237, 1.0},
            {1e4, 1e5, 0.0016894, 0.0028984, 1.0},
        },
        "burkhardt-2001");
}

/// Older six-region set, used only to estimate the parameterization
/// uncertainty as the spread between the two sets.
inline PolarizationParamSet alternate_params() {
    const double mz = constants::m_Z;
    return PolarizationParamSet(
        {
            {0.0, 1.0, 0.0, 0.0022877, 4.08041425},
            {1.0, 2.0, 0.0, 0.0025151, 3.09624946},
            {2.0, 4.0, 0.0, 0.0027933, 2.0746351},
            {4.0, 10.0, 0.0012227, 0.0029669, 1.0},
            {10.0, mz, 0.0016418, 0.0029205, 1.0},
            {mz, 1e5, 0.0022709, 0.0022366, 1.0},
        },
        "burkhardt-1995");
}

/// Piecewise Re Pi_had(-q^2); clamps to the last region above the last edge.
inline double re_pi_hadronic(double q, const PolarizationParamSet& params) {
    if (q < 0.0) throw DomainError("re_pi_hadronic: momentum must be non-negative");
    return params.region(params.region_index(q)).re_pi(q);
}

/// First-region parameters extended to all momenta.
inline double re_pi_first_region(double q, const PolarizationParamSet& params) {
    if (q < 0.0) throw DomainError("re_pi_first_region: momentum must be non-negative");
    return params.first().re_pi(q);
}

/// One-loop Re Pi(-q^2) of a lepton of mass m in the same sign convention as
/// the hadronic parameterization (positive, ~ alpha q^2/(15 pi m^2) at small q).
inline double re_pi_leptonic(double q, double mass) {
    if (q < 0.0) throw DomainError("re_pi_leptonic: momentum must be non-negative");
    const double x = q * q / (mass * mass);
    if (x < 0.1) {
        // Taylor series; the closed form below cancels badly at small x.
        constexpr double coef[] = {1.0 / 15.0,     -1.0 / 140.0,    1.0 / 945.0,     -1.0 / 5544.0,
                                   1.0 / 30030.0,  -1.0 / 154440.0, 1.0 / 765765.0,  -1.0 / 3695120.0};
        double sum = 0.0;
        for (int i = 7; i >= 0; --i) sum = sum * x + coef[i];
        return constants::alpha / constants::pi * x * sum;
    }
    const double beta = std::sqrt(1.0 + 4.0 / x);
    const double l = std::log((beta + 1.0) / (beta - 1.0));
    return constants::alpha / (3.0 * constants::pi) * (-5.0 / 3.0 + 4.0 / x + (1.0 - 2.0 / x) * beta * l);
}

namespace detail {

inline double parse_edge(const std::string& tok, int line_no) {
    if (tok == "mZ" || tok == "m_Z") return constants::m_Z;
    if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" + tok + "'");
    }
}

}  // namespace detail

inline constexpr const char* params_header = "# hvp-polarization-params v1";

/// Parses the text parameter format:
///
///     # hvp-polarization-params v1
///     label burkhardt-2001
///     # k_lo   k_hi   A        B          C
///     0.0      0.7    0.0      0.0023092  3.9925370
///     ...
///     10.0     mZ     0.0010485 0.0029431 1.0
///
/// Edges accept `mZ` and `inf`; `#` starts a comment. The header line is
/// mandatory. Without a `label` line the fallback label is used.
inline PolarizationParamSet parse_params(std::istream& in, const std::string& fallback_label = "custom") {
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::string label = fallback_label;
    std::vector<PolarizationRegion> regions;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            if (line.rfind(params_header, 0) != 0)
                throw ParseError("line " + std::to_string(line_no) + ": missing header '" + params_header + "'");
            header_seen = true;
            continue;
        }
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "label") {
            if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'label <name>'");
            label = tok[1];
            continue;
        }
        if (tok.size() != 5)
            throw ParseError("line " + std::to_string(line_no) + ": expected 5 columns (k_lo k_hi A B C), got " +
                             std::to_string(tok.size()));
        PolarizationRegion r;
        r.k_lo = detail::parse_edge(tok[0], line_no);
        r.k_hi = detail::parse_edge(tok[1], line_no);
        r.a = detail::parse_edge(tok[2], line_no);
        r.b = detail::parse_edge(tok[3], line_no);
        r.c = detail::parse_edge(tok[4], line_no);
        regions.push_back(r);
    }
    if (!header_seen) throw ParseError("empty parameter file");
    return PolarizationParamSet(std::move(regions), label);
}

inline PolarizationParamSet load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open parameter file '" + path + "'");
    return parse_params(in, path);
}

/// Writes a set in the format read by parse_params.
inline void write_params(std::ostream& out, const PolarizationParamSet& p) {
    out << params_header << '\n' << "label " << p.label() << '\n' << "# k_lo k_hi A B C\n";
    out.precision(17);
    for (const auto& r : p.regions()) out << r.k_lo << ' ' << r.k_hi << ' ' << r.a << ' ' << r.b << ' ' << r.c << '\n';
}

}  // namespace hvp
