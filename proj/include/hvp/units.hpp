#pragma once

#include <string>
#include <string_view>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"

namespace hvp {

enum class LengthUnit {
    inverse_gev,       ///< natural units, GeV^-1
    fm,                ///< femtometre
    electron_compton,  ///< reduced electron Compton wavelength, 1/m_e
};

enum class EnergyUnit { gev, ev, mev };

namespace detail {

// Size of one unit expressed in GeV^-1.
constexpr double length_in_inverse_gev(LengthUnit u) {
    switch (u) {
        case LengthUnit::inverse_gev: return 1.0;
        case LengthUnit::fm: return 1.0 / constants::hbar_c;
        case LengthUnit::electron_compton: return 1.0 / constants::m_e;
    }
    return 1.0;
}

constexpr double energy_in_gev(EnergyUnit u) {
    switch (u) {
        case EnergyUnit::gev: return 1.0;
        case EnergyUnit::ev: return 1e-9;
        case EnergyUnit::mev: return 1e-12;
    }
    return 1.0;
}

}  // namespace detail

constexpr double convert_length(double x, LengthUnit from, LengthUnit to) {
    if (from == to) return x;
    return x * (detail::length_in_inverse_gev(from) / detail::length_in_inverse_gev(to));
}

constexpr double convert_energy(double x, EnergyUnit from, EnergyUnit to) {
    if (from == to) return x;
    return x * (detail::energy_in_gev(from) / detail::energy_in_gev(to));
}

constexpr double fm_to_natural(double x_fm) { return convert_length(x_fm, LengthUnit::fm, LengthUnit::inverse_gev); }
constexpr double natural_to_fm(double x) { return convert_length(x, LengthUnit::inverse_gev, LengthUnit::fm); }
constexpr double gev_to_ev(double e) { return convert_energy(e, EnergyUnit::gev, EnergyUnit::ev); }

inline LengthUnit parse_length_unit(std::string_view s) {
    if (s == "gev-1" || s == "natural") return LengthUnit::inverse_gev;
    if (s == "fm") return LengthUnit::fm;
    if (s == "compton" || s == "lambda_c") return LengthUnit::electron_compton;
    throw DomainError("unknown length unit '" + std::string(s) + "' (expected gev-1, fm or compton)");
}

inline EnergyUnit parse_energy_unit(std::string_view s) {
    if (s == "gev" || s == "GeV") return EnergyUnit::gev;
    if (s == "ev" || s == "eV") return EnergyUnit::ev;
    if (s == "mev" || s == "meV") return EnergyUnit::mev;
    throw DomainError("unknown energy unit '" + std::string(s) + "' (expected gev, ev or mev)");
}

}  // namespace hvp
