#include <cmath>

#include <gtest/gtest.h>

#include "hvp/quadrature.hpp"
#include "hvp/wavefunctions.hpp"

using namespace hvp;

namespace {

template <class F>
double radial_integral(F&& f, double lambda) {
    const double a = 1.0 / lambda;
    return quad::integrate_pieces(f, {0.0, 1e-6 * a, 1e-3 * a, 0.1 * a, a, 5.0 * a, 20.0 * a, 80.0 * a, 300.0 * a}, 1e-13)
        .value;
}

BoundStateLabel state(int n, int kappa, int z, double mass = constants::m_e) { return {n, kappa, mass, z}; }

const std::pair<int, int> states[] = {{1, -1}, {2, -1}, {2, 1}, {2, -2}, {3, -1}, {3, 2}, {3, -3}};

}  // namespace

TEST(Label, ParsingAndNames) {
    const auto s = parse_state("2p1/2", 20, constants::m_e);
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.kappa, 1);
    EXPECT_EQ(s.name(), "2p1/2");
    EXPECT_EQ(parse_state("1s", 1, constants::m_e).kappa, -1);
    EXPECT_EQ(parse_state("2p3/2", 1, constants::m_e).kappa, -2);
    EXPECT_EQ(parse_state("3d5/2", 1, constants::m_e).kappa, -3);
    EXPECT_THROW(parse_state("2p", 1, constants::m_e), DomainError);
    EXPECT_THROW(parse_state("1p1/2", 1, constants::m_e), DomainError);
    EXPECT_THROW(parse_state("2s3/2", 1, constants::m_e), DomainError);
    EXPECT_THROW(parse_state("x", 1, constants::m_e), DomainError);
}

TEST(Label, Validation) {
    EXPECT_THROW(state(1, 1, 1).validate(), DomainError);
    EXPECT_THROW(state(2, 0, 1).validate(), DomainError);
    EXPECT_THROW(state(2, -3, 1).validate(), DomainError);
    EXPECT_THROW(state(1, -1, 138).validate(), DomainError);
    EXPECT_NO_THROW(state(2, -2, 138).validate());
}

TEST(DiracCoulomb, Normalization) {
    for (int z : {1, 20, 82})
        for (auto [n, kappa] : states) {
            const DiracCoulombState st(state(n, kappa, z));
            const double norm = radial_integral([&](double r) { return st.radial_density(r); }, st.lambda());
            EXPECT_NEAR(norm, 1.0, 1e-8) << "Z=" << z << " " << st.label().name();
        }
}

TEST(DiracCoulomb, Orthogonality) {
    for (int z : {1, 82})
        for (int kappa : {-1, 1}) {
            const int n0 = kappa < 0 ? 1 : 2;
            const DiracCoulombState a(state(n0, kappa, z));
            const DiracCoulombState b(state(n0 + 1, kappa, z));
            const double ov = radial_integral(
                [&](double r) { return a.large_p(r) * b.large_p(r) + a.small_q(r) * b.small_q(r); }, b.lambda());
            EXPECT_LT(std::abs(ov), 1e-7) << "Z=" << z << " kappa=" << kappa;
        }
}

TEST(DiracCoulomb, SommerfeldEnergy) {
    for (int z : {1, 40, 92})
        for (auto [n, kappa] : states) {
            const auto lb = state(n, kappa, z);
            const double za = z * constants::alpha;
            const double nr = n - std::abs(kappa);
            const double g = std::sqrt(kappa * kappa - za * za);
            const double e = constants::m_e / std::sqrt(1.0 + std::pow(za / (nr + g), 2));
            EXPECT_NEAR(dirac_energy(lb) / e, 1.0, 1e-12);
            EXPECT_NEAR(DiracCoulombState(lb).energy() / e, 1.0, 1e-12);
        }
}

// With P = r g, Q = r f: P' + kappa P / r = (E + m - V) Q and
// Q' - kappa Q / r = -(E - m - V) P for V = -Z alpha / r.
TEST(DiracCoulomb, SatisfiesRadialEquations) {
    for (int z : {1, 82})
        for (auto [n, kappa] : states) {
            const DiracCoulombState st(state(n, kappa, z));
            const double m = constants::m_e;
            const double e = st.energy();
            for (double x : {0.3, 1.0, 4.0}) {
                const double r = x / st.lambda();
                const double h = 1e-5 * r;
                const double p = st.large_p(r);
                const double q = st.small_q(r);
                const double dp = (st.large_p(r + h) - st.large_p(r - h)) / (2.0 * h);
                const double dq = (st.small_q(r + h) - st.small_q(r - h)) / (2.0 * h);
                const double v = -z * constants::alpha / r;
                const double scale = std::abs(dp) + std::abs(kappa * p / r) + 1e-300;
                EXPECT_NEAR((dp + kappa * p / r - (e + m - v) * q) / scale, 0.0, 1e-7);
                EXPECT_NEAR((dq - kappa * q / r + (e - m - v) * p) / scale, 0.0, 1e-7);
            }
        }
}

TEST(DiracCoulomb, GroundStateShape) {
    for (int z : {1, 82}) {
        const DiracCoulombState st(state(1, -1, z));
        const double lam = z * constants::alpha * constants::m_e;
        EXPECT_NEAR(st.lambda() / lam, 1.0, 1e-14);
        const double r1 = 0.3 / lam;
        const double r2 = 2.1 / lam;
        const double expected = std::pow(r2 / r1, st.gamma() - 1.0) * std::exp(-lam * (r2 - r1));
        EXPECT_NEAR(st.g(r2) / st.g(r1) / expected, 1.0, 1e-12);
        EXPECT_NEAR(st.f(r2) / st.f(r1) / expected, 1.0, 1e-12);
    }
}

TEST(DiracCoulomb, TwoPHalfSmallCouplingLimit) {
    const int z = 1;
    const double za = z * constants::alpha;
    const double m = constants::m_e;
    const DiracCoulombState st(state(2, 1, z));
    for (double x : {0.2, 1.0, 2.0, 6.0}) {
        const double r = x / (za * m);
        const double approx = std::sqrt(za / 2.0) * za * za * m * m * r / (2.0 * std::sqrt(3.0)) * std::sqrt(m) *
                              std::exp(-za * m * r / 2.0);
        EXPECT_NEAR(std::abs(st.g(r)) / approx, 1.0, 10.0 * za * za) << "x=" << x;
    }
}

TEST(DiracCoulomb, SmallComponentSuppression) {
    auto ratio = [](int z) {
        const DiracCoulombState st(state(1, -1, z));
        const double big = radial_integral([&](double r) { return st.large_p(r) * st.large_p(r); }, st.lambda());
        const double small = radial_integral([&](double r) { return st.small_q(r) * st.small_q(r); }, st.lambda());
        return small / big;
    };
    const double za1 = constants::alpha;
    EXPECT_NEAR(ratio(1) / (za1 * za1 / 4.0), 1.0, 1e-3);
    EXPECT_GT(ratio(82), 100.0 * ratio(1));
    EXPECT_LT(ratio(82), 1.0);
}

TEST(NonrelDensity, Scaling) {
    const double am = constants::alpha * constants::m_e;
    EXPECT_NEAR(nonrel_density_at_origin(state(1, -1, 1)) / (am * am * am / constants::pi), 1.0, 1e-15);
    EXPECT_NEAR(nonrel_density_at_origin(state(1, -1, 1)) / nonrel_density_at_origin(state(2, -1, 1)), 8.0, 1e-13);
    EXPECT_NEAR(nonrel_density_at_origin(state(1, -1, 7)) / nonrel_density_at_origin(state(1, -1, 1)), 343.0, 1e-11);
    EXPECT_THROW(nonrel_density_at_origin(state(2, 1, 1)), DomainError);
}
