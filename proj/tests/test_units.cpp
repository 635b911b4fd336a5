#include <cmath>

#include <gtest/gtest.h>

#include "hvp/units.hpp"

using namespace hvp;

namespace {
constexpr LengthUnit lengths[] = {LengthUnit::inverse_gev, LengthUnit::fm, LengthUnit::electron_compton};
constexpr EnergyUnit energies[] = {EnergyUnit::gev, EnergyUnit::ev, EnergyUnit::mev};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(Constants, Invariants) {
    EXPECT_LT(rel(constants::alpha, 1.0 / 137.036), 1e-6);
    EXPECT_GT(constants::m_e, 0.0);
    EXPECT_GT(constants::m_Z, 0.0);
    const double ratio = constants::m_mu / constants::m_e;
    EXPECT_GT(ratio, 206.0);
    EXPECT_LT(ratio, 208.0);
}

TEST(Units, LengthExamples) {
    EXPECT_NEAR(convert_length(1.0, LengthUnit::inverse_gev, LengthUnit::fm), 0.1973269804, 1e-15);
    EXPECT_NEAR(convert_length(1.0, LengthUnit::fm, LengthUnit::inverse_gev), 5.0677, 1e-4);
    EXPECT_EQ(convert_length(3.25, LengthUnit::fm, LengthUnit::fm), 3.25);
    EXPECT_NEAR(convert_length(1.0, LengthUnit::electron_compton, LengthUnit::fm), 386.15926796, 1e-6);
}

TEST(Units, EnergyExamples) {
    EXPECT_NEAR(convert_energy(1.0, EnergyUnit::gev, EnergyUnit::ev), 1e9, 1e-6);
    EXPECT_NEAR(convert_energy(1.0, EnergyUnit::ev, EnergyUnit::mev), 1000.0, 1e-12);
    EXPECT_NEAR(gev_to_ev(1.3953e-20), 1.3953e-11, 1e-24);
}

TEST(Units, RoundTripAndComposition) {
    const double x = 0.731;
    for (auto a : lengths)
        for (auto b : lengths) {
            EXPECT_LT(rel(convert_length(convert_length(x, a, b), b, a), x), 1e-12);
            for (auto c : lengths)
                EXPECT_LT(rel(convert_length(convert_length(x, a, b), b, c), convert_length(x, a, c)), 1e-12);
        }
    for (auto a : energies)
        for (auto b : energies) {
            EXPECT_LT(rel(convert_energy(convert_energy(x, a, b), b, a), x), 1e-12);
            for (auto c : energies)
                EXPECT_LT(rel(convert_energy(convert_energy(x, a, b), b, c), convert_energy(x, a, c)), 1e-12);
        }
}

TEST(Units, Parsing) {
    EXPECT_EQ(parse_length_unit("fm"), LengthUnit::fm);
    EXPECT_EQ(parse_length_unit("compton"), LengthUnit::electron_compton);
    EXPECT_EQ(parse_energy_unit("meV"), EnergyUnit::mev);
    EXPECT_THROW(parse_length_unit("angstrom"), DomainError);
    EXPECT_THROW(parse_energy_unit("keV"), DomainError);
}
