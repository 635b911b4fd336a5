#include <cmath>

#include <gtest/gtest.h>

#include "hvp/reference.hpp"
#include "hvp/shifts.hpp"

using namespace hvp;

namespace {

const PolarizationParamSet params = builtin_params();

BoundStateLabel state(int n, int kappa, int z, double mass = constants::m_e) { return {n, kappa, mass, z}; }

NuclearModel table_sphere(int z) { return NuclearModel::sphere_from_rms_fm(z, builtin_radii().at(z).rms_fm); }

ShiftRequest request(const BoundStateLabel& label, const NuclearModel& model, ShiftMethod method) {
    ShiftRequest req;
    req.label = label;
    req.model = model;
    req.method = method;
    req.grid_refinement = false;
    return req;
}

double fns(int n, int kappa, int z) {
    return shift_perturbative(request(state(n, kappa, z), table_sphere(z), ShiftMethod::rel_fns_approx)).value;
}

}  // namespace

TEST(Method, NamesRoundTrip) {
    for (auto m : {ShiftMethod::nonrel_point, ShiftMethod::rel_point_analytic, ShiftMethod::rel_point_numeric,
                   ShiftMethod::rel_fns_approx, ShiftMethod::rel_fns_full})
        EXPECT_EQ(parse_shift_method(to_string(m)), m);
    EXPECT_THROW(parse_shift_method("rel-fns"), DomainError);
}

TEST(Nonrel, HydrogenValueAndScaling) {
    const double h = shift_nonrel(state(1, -1, 1), params);
    EXPECT_NEAR(h / -1.3953e-11, 1.0, 5e-4);
    EXPECT_NEAR(h / shift_nonrel(state(2, -1, 1), params), 8.0, 1e-12);
    const double ratio = constants::m_mu / constants::m_e;
    EXPECT_NEAR(shift_nonrel(state(1, -1, 1, constants::m_mu), params) / h / (ratio * ratio * ratio), 1.0, 1e-12);
    EXPECT_NEAR(shift_nonrel(state(1, -1, 2), params) / h, 16.0, 1e-12);
    const double mr = constants::m_mu * constants::m_p / (constants::m_mu + constants::m_p);
    EXPECT_NEAR(shift_nonrel(state(2, -1, 1, constants::m_mu), params, constants::m_p) /
                    shift_nonrel(state(2, -1, 1, constants::m_mu), params),
                std::pow(mr / constants::m_mu, 3), 1e-12);
    EXPECT_THROW(shift_nonrel(state(2, 1, 1), params), DomainError);
    EXPECT_THROW(shift_nonrel(state(1, -1, 1), params, 0.0), DomainError);
}

TEST(Expansion, LeadingTermsAndOrders) {
    const auto& reg = params.first();
    const double a = constants::alpha * 20;
    const double m = constants::m_e;
    const double lead = -reg.b * reg.c * reg.c * std::pow(m, 5) * std::pow(a, 6) / 8.0;
    EXPECT_NEAR(shift_expansion(state(2, -2, 20), 6, params) / gev_to_ev(lead), 1.0, 1e-13);
    EXPECT_NEAR(shift_expansion(state(1, -1, 20), 4, params) / shift_nonrel(state(1, -1, 20), params), 1.0, 1e-13);
    EXPECT_NEAR(shift_expansion(state(2, -1, 20), 4, params) / shift_nonrel(state(2, -1, 20), params), 1.0, 1e-13);
    EXPECT_EQ(expansion_orders(state(2, 1, 1)), std::make_pair(6, 7));
    EXPECT_THROW(shift_expansion(state(1, -1, 1), 7, params), DomainError);
    EXPECT_THROW(shift_expansion(state(2, -1, 1), 6, params), DomainError);
    EXPECT_THROW(shift_expansion(state(3, -1, 1), 4, params), DomainError);
}

TEST(Expansion, ConvergesToClosedFormAtLowZ) {
    const auto lb = state(1, -1, 1);
    const double exact = shift_1s_closed_form(1, constants::m_e, params);
    // The (Z alpha)^6 term carries ln(Z alpha m s) and outweighs the fifth order.
    const double err4 = std::abs(shift_expansion(lb, 4, params) / exact - 1.0);
    const double err6 = std::abs(shift_expansion(lb, 6, params) / exact - 1.0);
    EXPECT_LT(err6, 1e-6);
    EXPECT_LT(err6, 1e-2 * err4);
    auto err = [](int z) {
        return std::abs(shift_expansion(state(1, -1, z), 6, params) / shift_1s_closed_form(z, constants::m_e, params) - 1.0);
    };
    const double err20 = err(20);
    const double err82 = err(82);
    EXPECT_LT(err20, 2e-2);
    EXPECT_GT(err82, err20);
}

TEST(ClosedForm, DomainAndSign) {
    for (int z : {1, 20, 82, 137}) EXPECT_LT(shift_1s_closed_form(z, constants::m_e, params), 0.0) << z;
    EXPECT_THROW(shift_1s_closed_form(0, constants::m_e, params), DomainError);
    EXPECT_THROW(shift_1s_closed_form(138, constants::m_e, params), DomainError);
    EXPECT_THROW(shift_1s_closed_form(1, 0.0, params), DomainError);
}

// The numerical point-Coulomb expectation value reproduces the closed form.
TEST(PointNumeric, MatchesClosedForm) {
    for (int z : {1, 20, 82}) {
        auto req = request(state(1, -1, z), NuclearModel::point(z), ShiftMethod::rel_point_numeric);
        req.alternate.reset();
        const auto r = shift_perturbative(req);
        EXPECT_NEAR(r.value / shift_1s_closed_form(z, constants::m_e, params), 1.0, 1e-8) << z;
        EXPECT_LT(r.unc_numeric, 1e-8 * std::abs(r.value));
    }
}

TEST(PointNumeric, ExcitedStatesMatchSeriesAtLowZ) {
    const std::pair<int, int> states[] = {{2, -1}, {2, 1}, {2, -2}};
    for (auto [n, kappa] : states) {
        const auto lb = state(n, kappa, 1);
        auto req = request(lb, NuclearModel::point(1), ShiftMethod::rel_point_numeric);
        req.alternate.reset();
        const double v = shift_perturbative(req).value;
        EXPECT_NEAR(v / shift_expansion(lb, expansion_orders(lb).second, params), 1.0, 1e-3) << lb.name();
    }
}

TEST(FiniteSize, SignsAndHierarchy) {
    for (int z : {20, 82}) {
        const double s1 = fns(1, -1, z);
        const double s2 = fns(2, -1, z);
        const double p1 = fns(2, 1, z);
        const double p3 = fns(2, -2, z);
        for (double v : {s1, s2, p1, p3}) EXPECT_LT(v, 0.0);
        EXPECT_GT(std::abs(s1), std::abs(s2)) << z;
        EXPECT_GT(std::abs(s2), std::abs(p1)) << z;
        EXPECT_GT(std::abs(p1), std::abs(p3)) << z;
        EXPECT_LT(std::abs(s1), std::abs(shift_1s_closed_form(z, constants::m_e, params))) << z;
    }
}

TEST(FiniteSize, HydrogenAgreesWithPointNucleus) {
    EXPECT_NEAR(fns(1, -1, 1) / shift_1s_closed_form(1, constants::m_e, params), 1.0, 1e-2);
}

TEST(FiniteSize, UncertaintyBudget) {
    auto req = request(state(1, -1, 54), table_sphere(54), ShiftMethod::rel_fns_approx);
    req.radius_uncertainty_fm = 0.0048;
    req.grid_refinement = true;
    const auto r = shift_perturbative(req);
    EXPECT_GT(r.unc_param, 5e-3 * std::abs(r.value));
    EXPECT_LT(r.unc_param, 3e-2 * std::abs(r.value));
    EXPECT_GT(r.unc_radius, 0.0);
    EXPECT_LT(r.unc_radius, 1e-2 * std::abs(r.value));
    EXPECT_LT(r.unc_numeric, 1e-6 * std::abs(r.value));
    EXPECT_NEAR(r.uncertainty(), std::hypot(r.unc_param, r.unc_radius, r.unc_numeric), 1e-30);
    req.alternate.reset();
    req.radius_uncertainty_fm = 0.0;
    req.grid_refinement = false;
    const auto bare = shift_perturbative(req);
    EXPECT_EQ(bare.uncertainty(), 0.0);
    EXPECT_EQ(bare.value, r.value);
}

TEST(Request, Validation) {
    auto ok = request(state(1, -1, 20), table_sphere(20), ShiftMethod::rel_fns_approx);
    EXPECT_NO_THROW(ok.validate());
    auto mismatch = ok;
    mismatch.model = table_sphere(82);
    EXPECT_THROW(mismatch.validate(), DomainError);
    auto point_fns = ok;
    point_fns.model = NuclearModel::point(20);
    EXPECT_THROW(point_fns.validate(), DomainError);
    auto sphere_point = ok;
    sphere_point.method = ShiftMethod::nonrel_point;
    EXPECT_THROW(sphere_point.validate(), DomainError);
    auto analytic_2s = request(state(2, -1, 20), NuclearModel::point(20), ShiftMethod::rel_point_analytic);
    EXPECT_THROW(analytic_2s.validate(), DomainError);
    auto nonrel_3d = request(state(3, -2, 20), NuclearModel::point(20), ShiftMethod::nonrel_point);
    EXPECT_THROW(nonrel_3d.validate(), DomainError);
    auto negative = ok;
    negative.radius_uncertainty_fm = -0.1;
    EXPECT_THROW(negative.validate(), DomainError);
}

TEST(Batch, OrderErrorsAndDeterminism) {
    std::vector<ShiftRequest> reqs;
    for (int z : {1, 14, 20, 36})
        reqs.push_back(request(state(1, -1, z), NuclearModel::point(z), ShiftMethod::rel_point_analytic));
    reqs.push_back(request(state(2, -1, 5), NuclearModel::point(5), ShiftMethod::rel_point_analytic));
    reqs.push_back(request(state(2, -1, 20), table_sphere(20), ShiftMethod::rel_fns_approx));
    const auto one = run_batch(reqs, 1);
    const auto many = run_batch(reqs, 3);
    ASSERT_EQ(one.size(), reqs.size());
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        ASSERT_EQ(one[i].result.has_value(), many[i].result.has_value()) << i;
        if (!one[i].result) continue;
        EXPECT_EQ(one[i].result->label.z, reqs[i].label.z);
        EXPECT_EQ(one[i].result->value, many[i].result->value);
        EXPECT_EQ(one[i].result->unc_param, many[i].result->unc_param);
    }
    EXPECT_FALSE(one[4].result.has_value());
    EXPECT_NE(one[4].error.find("1s"), std::string::npos);
    EXPECT_TRUE(run_batch({}, 4).empty());
}

// Lowest-order muon-loop shift against |psi(0)|^2 \int d^3r V_mu(r) done numerically.
TEST(Muonic, RatioMatchesNumericalUehlingIntegral) {
    const double r1 = muonic_vp_ratio(1);
    EXPECT_NEAR(r1 / 0.6647, 1.0, 1.5e-2);
    EXPECT_NEAR(muonic_vp_ratio(20) / r1, 1.0, 1e-12);
    const double mm = constants::m_mu;
    auto f = [&](double r) { return r > 0.0 ? r * r * uehling_leptonic_mass(mm, 1, r) : 0.0; };
    const auto integral = quad::integrate_pieces(f, {0.0, 1e-2 / mm, 0.3 / mm, 3.0 / mm, 30.0 / mm}, 1e-9).value;
    const auto lb = state(1, -1, 1);
    const double muonic = gev_to_ev(nonrel_density_at_origin(lb) * 4.0 * constants::pi * integral);
    EXPECT_NEAR(shift_nonrel(lb, params) / muonic / r1, 1.0, 1e-7);
}

TEST(Bracket, Formatting) {
    EXPECT_EQ(format_bracket(-1.39625e-11, 1.7e-13), "-1.396(17)[-11]");
    EXPECT_EQ(format_bracket(-1.53e-2, 5.0e-4), "-1.530(50)[-2]");
    EXPECT_EQ(format_bracket(-9.9996e-3, 0.0), "-9.99960[-3]");
    EXPECT_EQ(format_bracket(-3.6932e-3, 4.6e-5), "-3.693(46)[-3]");
    EXPECT_EQ(format_bracket(-9.9996e-3, 4.6e-5), "-1.0000(46)[-2]");
    EXPECT_EQ(format_bracket(0.0, 0.0), "0[0]");
    EXPECT_THROW(format_bracket(1.0, -1.0), DomainError);
    EXPECT_THROW(format_bracket(std::nan(""), 1.0), DomainError);
    for (const auto& row : reference::ground_state_table())
        EXPECT_EQ(format_bracket(row.rel_fns.value, row.rel_fns.uncertainty).find('('), 6u) << row.z;
}
