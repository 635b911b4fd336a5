#include <sstream>

#include <gtest/gtest.h>

#include "hvp/polarization.hpp"

using namespace hvp;

namespace {
const std::string data_dir = HVP_DATA_DIR;
}

TEST(Params, BuiltinShape) {
    const auto p = builtin_params();
    EXPECT_EQ(p.size(), 7u);
    EXPECT_EQ(p.label(), "burkhardt-2001");
    EXPECT_DOUBLE_EQ(p.first().b, 0.0023092);
    EXPECT_DOUBLE_EQ(p.first().c, 3.9925370);
    EXPECT_DOUBLE_EQ(p.region(4).k_hi, constants::m_Z);
    EXPECT_DOUBLE_EQ(p.upper_edge(), 1e5);
}

TEST(Params, FileRestatingBuiltinMatches) {
    const auto p = load_params(data_dir + "/params/burkhardt-2001.txt");
    EXPECT_EQ(p, builtin_params());
    EXPECT_EQ(p.label(), "burkhardt-2001");
}

TEST(Params, AlternateFileLoads) {
    const auto p = load_params(data_dir + "/params/burkhardt-1995.txt");
    EXPECT_EQ(p.label(), "burkhardt-1995");
    EXPECT_EQ(p, alternate_params());
}

TEST(Params, WriteParseRoundTrip) {
    std::stringstream ss;
    write_params(ss, builtin_params());
    const auto p = parse_params(ss);
    EXPECT_EQ(p, builtin_params());
    EXPECT_EQ(p.label(), builtin_params().label());
}

TEST(Params, UnsortedRegionsRejected) {
    std::istringstream in(std::string(params_header) +
                          "\n0.0 2.0 0 0.002 4.0\n0.7 2.0 0 0.002 4.0\n");
    try {
        parse_params(in);
        FAIL() << "expected InvariantError";
    } catch (const InvariantError& e) {
        EXPECT_NE(std::string(e.what()).find("region 1"), std::string::npos);
    }
}

TEST(Params, MalformedInputs) {
    std::istringstream no_header("0.0 0.7 0 0.002 4.0\n");
    EXPECT_THROW(parse_params(no_header), ParseError);
    std::istringstream short_line(std::string(params_header) + "\n0.0 0.7 0 0.002\n");
    EXPECT_THROW(parse_params(short_line), ParseError);
    std::istringstream bad_number(std::string(params_header) + "\n0.0 x 0 0.002 4.0\n");
    EXPECT_THROW(parse_params(bad_number), ParseError);
    std::istringstream negative_c(std::string(params_header) + "\n0.0 inf 0 0.002 -4.0\n");
    EXPECT_THROW(parse_params(negative_c), InvariantError);
    EXPECT_THROW(load_params(data_dir + "/params/does-not-exist.txt"), ParseError);
}

TEST(Params, MzAndInfinityEdges) {
    std::istringstream in(std::string(params_header) + "\nlabel two\n0 mZ 0 0.002 4\nmZ inf 0.001 0.003 1\n");
    const auto p = parse_params(in);
    EXPECT_EQ(p.label(), "two");
    EXPECT_DOUBLE_EQ(p.region(0).k_hi, constants::m_Z);
    EXPECT_TRUE(std::isinf(p.upper_edge()));
}

TEST(RePi, MonotoneWithinRegions) {
    for (const auto& p : {builtin_params(), alternate_params()})
        for (const auto& reg : p.regions()) {
            const double hi = std::isinf(reg.k_hi) ? 1e6 : reg.k_hi;
            double prev = re_pi_hadronic(reg.k_lo, p);
            for (int i = 1; i < 100; ++i) {
                const double q = reg.k_lo + (hi - reg.k_lo) * i / 100.0;
                const double v = re_pi_hadronic(q, p);
                EXPECT_GE(v, prev);
                prev = v;
            }
        }
}

TEST(RePi, FirstRegionAgreesBelowFirstEdge) {
    const auto p = builtin_params();
    for (double q = 0.0; q < 0.7; q += 0.01) EXPECT_EQ(re_pi_first_region(q, p), re_pi_hadronic(q, p));
    EXPECT_THROW(re_pi_hadronic(-1.0, p), DomainError);
}

TEST(RePi, ClampsAboveLastEdge) {
    const auto p = builtin_params();
    EXPECT_DOUBLE_EQ(re_pi_hadronic(2e5, p), p.regions().back().re_pi(2e5));
}

TEST(RePi, LeptonicSmallMomentum) {
    const double m = constants::m_mu;
    const double q = 1e-3 * m;
    const double leading = constants::alpha * q * q / (15.0 * constants::pi * m * m);
    EXPECT_NEAR(re_pi_leptonic(q, m) / leading, 1.0, 1e-5);
    EXPECT_GT(re_pi_leptonic(10.0 * m, m), re_pi_leptonic(m, m));
}
