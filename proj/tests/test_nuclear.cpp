#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hvp/nuclear.hpp"

using namespace hvp;

TEST(Radius, SphereConversion) {
    EXPECT_NEAR(rms_to_sphere_radius(0.8783), 1.1338804243246581, 1e-14);
    EXPECT_DOUBLE_EQ(rms_to_sphere_radius(3.0), std::sqrt(5.0 / 3.0) * 3.0);
    for (double x : {0.1, 0.8783, 5.5012}) EXPECT_NEAR(sphere_radius_to_rms(rms_to_sphere_radius(x)), x, 1e-15);
    EXPECT_THROW(rms_to_sphere_radius(0.0), DomainError);
    EXPECT_THROW(sphere_radius_to_rms(-1.0), DomainError);
}

TEST(Radius, BuiltinTable) {
    const auto t = builtin_radii();
    for (int z : {1, 14, 20, 36, 54, 74, 82, 96}) EXPECT_TRUE(t.contains(z)) << z;
    EXPECT_DOUBLE_EQ(t.at(1).rms_fm, 0.8783);
    EXPECT_DOUBLE_EQ(t.at(1).uncertainty_fm, 0.0086);
    EXPECT_DOUBLE_EQ(t.at(82).rms_fm, 5.5012);
    EXPECT_DOUBLE_EQ(t.at(82).uncertainty_fm, 0.0013);
    EXPECT_DOUBLE_EQ(t.at(96).rms_fm, 5.85);
    EXPECT_THROW(t.at(50), LookupError);
}

TEST(Radius, CsvIngestion) {
    std::istringstream in("Z,R_rms_fm,uncertainty_fm\n50, 4.6519, 0.0021\n82,5.5,0.01\n");
    auto t = builtin_radii();
    t.merge(parse_radii_csv(in));
    EXPECT_DOUBLE_EQ(t.at(50).rms_fm, 4.6519);
    EXPECT_DOUBLE_EQ(t.at(82).rms_fm, 5.5);
    EXPECT_DOUBLE_EQ(t.at(1).rms_fm, 0.8783);

    std::istringstream no_header("50,4.6,0.1\n");
    EXPECT_THROW(parse_radii_csv(no_header), ParseError);
    std::istringstream bad("Z,R_rms_fm,uncertainty_fm\n50,abc,0.1\n");
    EXPECT_THROW(parse_radii_csv(bad), ParseError);
    std::istringstream negative("Z,R_rms_fm,uncertainty_fm\n50,-4.6,0.1\n");
    EXPECT_THROW(parse_radii_csv(negative), ParseError);
}

TEST(Radius, ShippedCsvMatchesBuiltin) {
    const auto file = load_radii_csv(std::string(HVP_DATA_DIR) + "/radii.csv");
    const auto builtin = builtin_radii();
    ASSERT_EQ(file.entries().size(), builtin.entries().size());
    for (const auto& [z, e] : builtin.entries()) {
        EXPECT_DOUBLE_EQ(file.at(z).rms_fm, e.rms_fm);
        EXPECT_DOUBLE_EQ(file.at(z).uncertainty_fm, e.uncertainty_fm);
    }
}

TEST(Model, ChargeLimits) {
    EXPECT_THROW(NuclearModel::point(0), DomainError);
    EXPECT_THROW(NuclearModel::point(140), DomainError);
    EXPECT_NO_THROW(NuclearModel::point(137));
    EXPECT_THROW(NuclearModel::sphere(20, -1.0), DomainError);
    EXPECT_THROW(NuclearModel::fermi(20, 1.0, 0.0), DomainError);
}

TEST(FormFactor, PointAndSphere) {
    const auto p = NuclearModel::point(20);
    for (double q : {0.0, 1.0, 100.0}) EXPECT_EQ(p.form_factor(q), 1.0);
    const auto s = NuclearModel::sphere_from_rms_fm(20, 3.4776);
    const double radius = s.sphere_radius();
    EXPECT_NEAR(s.form_factor(0.0), 1.0, 1e-15);
    EXPECT_NEAR(s.form_factor(4.4934094579090642 / radius), 0.0, 1e-14);
    for (double x = 0.0; x < 200.0; x += 0.173) EXPECT_LE(std::abs(s.form_factor(x / radius)), 1.0 + 1e-15);
    EXPECT_THROW(s.form_factor(-1.0), DomainError);
}

TEST(FormFactor, FermiNormalization) {
    const auto f = NuclearModel::fermi_from_rms_fm(82, 5.5012, 2.3);
    EXPECT_NEAR(f.form_factor(0.0), 1.0, 1e-8);
    const auto& sh = std::get<FermiShape>(f.shape());
    auto shell = [&](double r) { return 4.0 * constants::pi * r * r * f.density(r); };
    const double total = quad::integrate_pieces(shell, {0.0, sh.c, sh.c + 10.0 * sh.a, sh.c + 80.0 * sh.a}, 1e-14).value;
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_NEAR(natural_to_fm(f.rms_radius()), 5.5012, 1e-10);
    EXPECT_NEAR(natural_to_fm(sh.a) * 4.0 * std::log(3.0), 2.3, 1e-12);
}

// Closed-form Fermi transform against direct quadrature of 4 pi/q \int r sin(qr) rho dr.
TEST(FormFactor, FermiClosedFormMatchesQuadrature) {
    const auto f = NuclearModel::fermi_from_rms_fm(82, 5.5012, 2.3);
    const auto& sh = std::get<FermiShape>(f.shape());
    for (double qfm : {0.01, 0.2, 0.5, 1.0, 2.0, 3.5}) {
        const double q = qfm * constants::hbar_c;  // fm^-1 -> GeV
        auto g = [&](double r) { return 4.0 * constants::pi * r * std::sin(q * r) * f.density(r) / q; };
        std::vector<double> br{0.0};
        const double rmax = sh.c + 80.0 * sh.a;
        for (int k = 1; k <= 400; ++k) br.push_back(rmax * k / 400.0);
        const double numeric = quad::integrate_pieces(g, br, 1e-13).value;
        EXPECT_NEAR(f.form_factor(q), numeric, 1e-11) << "q = " << qfm << " fm^-1";
    }
}

TEST(FormFactor, SphereAndFermiAgreeToSecondOrder) {
    const auto s = NuclearModel::sphere_from_rms_fm(82, 5.5012);
    const auto f = NuclearModel::fermi_from_rms_fm(82, 5.5012, 2.3);
    const double rms = s.rms_radius();
    double prev_ratio = 0.0;
    for (double x : {0.02, 0.04, 0.08}) {
        const double q = x / rms;
        const double diff = std::abs(s.form_factor(q) - f.form_factor(q));
        const double scale = std::pow(q * rms, 4);
        EXPECT_LT(diff, 0.05 * scale) << "q rms = " << x;
        if (prev_ratio > 0.0) {
            EXPECT_NEAR(diff / scale / prev_ratio, 1.0, 0.05);
        }
        prev_ratio = diff / scale;
    }
}

TEST(FormFactor, EnvelopeBoundsFermi) {
    const auto f = NuclearModel::fermi_from_rms_fm(54, 4.7859, 2.3);
    for (double q = 0.01; q < 20.0; q *= 1.05) {
        const double env = f.form_factor_envelope(q);
        for (double t = q; t < 1.2 * q; t += 0.01 * q) EXPECT_LE(std::abs(f.form_factor(t)), env * (1.0 + 1e-9));
    }
}

TEST(Model, SmallRadiusFermiRejected) {
    EXPECT_THROW(NuclearModel::fermi_from_rms_fm(1, 0.8783, 2.3), DomainError);
}

TEST(Model, WithRmsKeepsFamily) {
    const auto f = NuclearModel::fermi_from_rms_fm(82, 5.5012, 2.3);
    const auto g = f.with_rms_fm(5.6);
    ASSERT_TRUE(g.is_fermi());
    EXPECT_NEAR(natural_to_fm(g.rms_radius()), 5.6, 1e-10);
    EXPECT_NEAR(std::get<FermiShape>(g.shape()).a, std::get<FermiShape>(f.shape()).a, 1e-14);
    const auto s = NuclearModel::sphere_from_rms_fm(20, 3.4776).with_rms_fm(3.5);
    EXPECT_NEAR(natural_to_fm(s.rms_radius()), 3.5, 1e-12);
}

TEST(Model, UnitPotentialOutsideIsCoulomb) {
    const auto s = NuclearModel::sphere_from_rms_fm(20, 3.4776);
    const double radius = s.sphere_radius();
    EXPECT_DOUBLE_EQ(s.unit_potential(2.0 * radius), 0.5 / radius);
    EXPECT_DOUBLE_EQ(s.unit_potential(0.0), 1.5 / radius);
    const auto f = NuclearModel::fermi_from_rms_fm(82, 5.5012, 2.3);
    const double far = f.extent() * 1.5;
    EXPECT_NEAR(f.unit_potential(far) * far, 1.0, 1e-10);
}
