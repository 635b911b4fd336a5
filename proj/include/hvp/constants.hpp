#pragma once

// Physical constants in natural units (hbar = c = 1, energies in GeV).
//
// Values are pinned to CODATA 2018 / PDG so that every table produced by the
// library is reproducible bit-for-bit.

namespace hvp::constants {

/// Fine-structure constant.
inline constexpr double alpha = 7.2973525693e-3;
/// Electron mass [GeV].
inline constexpr double m_e = 0.51099895000e-3;
/// Muon mass [GeV].
inline constexpr double m_mu = 0.1056583755;
/// Proton mass [GeV]; only used for the reduced-mass display mode.
inline constexpr double m_p = 0.93827208816;
/// Z boson mass [GeV].
inline constexpr double m_Z = 91.1876;
/// hbar * c [GeV fm].
inline constexpr double hbar_c = 0.1973269804;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

static_assert(m_mu / m_e > 206.0 && m_mu / m_e < 208.0);

}  // namespace hvp::constants
