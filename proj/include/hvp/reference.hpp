#pragma once

// Published hadronic-VP shifts and Lamb-shift totals used for the diff
// columns of `hvp table`, plus the "mantissa(unc)[exponent]" formatter.
//
// Every cell is stored as printed (central value and parenthetical
// uncertainty). Lamb-shift totals are display strings only.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hvp/error.hpp"

namespace hvp::reference {

struct Cell {
    double value;
    double uncertainty;
};

// 1s shifts [eV]; radii [fm].
struct GroundRow {
    int z;
    Cell rms_fm;
    Cell nonrel_point;
    Cell rel_point;
    Cell rel_fns;
    const char* lamb_shift;
};

inline const std::array<GroundRow, 7>& ground_state_table() {
    static const std::array<GroundRow, 7> rows{{
        {1, {0.8783, 0.0086}, {-1.395e-11, 0.017e-11}, {-1.396e-11, 0.017e-11}, {-1.396e-11, 0.017e-11},
         "3.3800262(7)(57)[-5]"},
        {14, {3.1224, 0.0024}, {-5.361e-7, 0.067e-7}, {-5.918e-7, 0.073e-7}, {-5.756e-7, 0.072e-7},
         "4.80447(18)(4)[-1]"},
        {20, {3.4776, 0.0019}, {-2.233e-6, 0.028e-6}, {-2.713e-6, 0.033e-6}, {-2.560e-6, 0.032e-6},
         "1.63263(6)(2)[0]"},
        {36, {4.1884, 0.0022}, {-2.344e-5, 0.029e-5}, {-4.270e-5, 0.050e-5}, {-3.485e-5, 0.043e-5},
         "1.18259(16)(3)[1]"},
        {54, {4.7859, 0.0048}, {-1.187e-4, 0.015e-4}, {-4.445e-4, 0.048e-4}, {-2.706e-4, 0.034e-4},
         "4.6920(18)(6)[1]"},
        {74, {5.3658, 0.0023}, {-4.184e-4, 0.052e-4}, {-5.098e-3, 0.046e-3}, {-1.801e-3, 0.022e-3},
         "1.5422(13)(2)[2]"},
        {82, {5.5012, 0.0013}, {-6.309e-4, 0.079e-4}, {-1.413e-2, 0.011e-2}, {-3.693e-3, 0.046e-3},
         "2.4440(26)(3)[2]"},
    }};
    return rows;
}

// n = 2 shifts [eV], finite-size wavefunctions with the closed-form sphere potential.
struct ExcitedRow {
    int z;
    Cell s_half;
    const char* lamb_s_half;
    Cell p_half;
    const char* lamb_p_half;
    Cell p_three_half;
    const char* lamb_p_three_half;
};

inline const std::array<ExcitedRow, 7>& excited_state_table() {
    static const std::array<ExcitedRow, 7> rows{{
        {1, {-1.745e-12, 0.022e-12}, "4.3218005(8)(72)[-6]", {-1.743e-17, 0.022e-17}, "-5.30919(4)(0)[-8]",
         {-6.427e-23, 0.080e-23}, "5.177459[-8]"},
        {14, {-7.262e-8, 0.091e-8}, "6.40329(23)(5)[-2]", {-1.431e-10, 0.019e-10}, "-1.7316(4)(0)[-3]",
         {-4.168e-15, 0.052e-15}, "2.1808(4)(0)[-3]"},
        {20, {-3.260e-7, 0.041e-7}, "2.21409(9)(2)[-1]", {-1.321e-9, 0.017e-9}, "-6.2940(35)(0)[-3]",
         {-4.535e-14, 0.057e-14}, "9.6566(34)(0)[-3]"},
        {36, {-4.631e-6, 0.058e-6}, "1.68814(25)(4)[0]", {-6.261e-8, 0.078e-8}, "-3.4426(62)(1)[-2]",
         {-2.602e-12, 0.033e-12}, "1.2089(9)(0)[-1]"},
        {54, {-3.887e-5, 0.049e-5}, "7.1723(27)(9)[0]", {-1.251e-6, 0.016e-6}, "6.0317(72)(36)[-1]",
         {-5.036e-11, 0.063e-11}, "7.413(10)(0)[-1]"},
        {74, {-2.932e-4, 0.037e-4}, "2.5876(20)(4)[1]", {-1.957e-5, 0.024e-5}, "1.6390(33)(3)[0]",
         {-6.217e-10, 0.078e-10}, "3.1615(30)(0)[0]"},
        {82, {-6.403e-4, 0.080e-4}, "4.2924(44)(4)[1]", {-5.541e-5, 0.069e-5}, "3.9045(72)(4)[0]",
         {-1.462e-9, 0.018e-9}, "5.1088(57)(0)[0]"},
    }};
    return rows;
}

// Muonic hydrogen [meV], no recoil.
struct MuonicRow {
    int n;
    int kappa;
    Cell nonrel_point;
    Cell rel_fns_full;
};

inline const std::array<MuonicRow, 3>& muonic_hydrogen_table() {
    static const std::array<MuonicRow, 3> rows{{
        {1, -1, {-1.234e-1, 0.015e-1}, {-1.229e-1, 0.015e-1}},
        {2, -1, {-1.542e-2, 0.019e-2}, {-1.53e-2, 0.05e-2}},
        {2, 1, {-1.631e-7, 0.022e-7}, {-1.8e-7, 0.1e-7}},
    }};
    return rows;
}

/// Hydrogen non-relativistic 1s shift [eV] and its ratio to the muonic VP shift.
inline constexpr Cell hydrogen_nonrel_1s{-1.395e-11, 0.017e-11};
inline constexpr Cell hydrogen_vp_ratio{0.6647, 0.0081};
/// Z = 96 (rms 5.85 fm) 1s shift [eV], approximate and full potentials alike.
inline constexpr double curium_1s = -1.2637e-2;
/// Z = 82 1s shift [eV] for a Fermi distribution with 2.3 fm skin thickness.
inline constexpr double lead_fermi_1s = -3.646e-3;
/// Muonic-hydrogen 2s shift with reduced-mass recoil [meV].
inline constexpr double muonic_2s_reduced_mass = -0.0112;

}  // namespace hvp::reference

namespace hvp {

/// "mantissa(unc)[exponent]" with the uncertainty shown to two significant
/// digits, e.g. format_bracket(-1.39625e-11, 1.7e-13) == "-1.396(17)[-11]".
/// A zero uncertainty prints six significant digits and no parentheses.
inline std::string format_bracket(double value, double uncertainty) {
    if (!std::isfinite(value) || !std::isfinite(uncertainty) || !(uncertainty >= 0.0))
        throw DomainError("format_bracket: value must be finite and uncertainty finite and >= 0");
    if (value == 0.0 && uncertainty == 0.0) return "0[0]";
    // Formats with a fixed exponent; returns the mantissa magnitude actually printed.
    auto render = [&](int exponent, double& printed) {
        const double scale = std::pow(10.0, exponent);
        const double mant = value / scale;
        char buf[96];
        if (uncertainty == 0.0) {
            std::snprintf(buf, sizeof buf, "%.5f[%d]", mant, exponent);
        } else {
            const double u = uncertainty / scale;
            const int decimals = std::max(0, std::min(12, 1 - static_cast<int>(std::floor(std::log10(u)))));
            std::snprintf(buf, sizeof buf, "%.*f(%.0f)[%d]", decimals, mant, std::round(u * std::pow(10.0, decimals)),
                          exponent);
        }
        printed = std::abs(std::stod(buf));
        return std::string(buf);
    };
    const double ref = value != 0.0 ? std::abs(value) : uncertainty;
    const int exponent = static_cast<int>(std::floor(std::log10(ref)));
    double printed = 0.0;
    std::string out = render(exponent, printed);
    if (printed >= 10.0) out = render(exponent + 1, printed);  // rounding carried into a new digit
    return out;
}

}  // namespace hvp
