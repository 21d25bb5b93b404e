#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "support.hpp"

using namespace qrmeans;
using qt::poly;
using qt::z_pow;

TEST(MeanP, ConstantSamples)
{
    const std::vector<cplx> v(64, cplx(-3.0, 4.0));
    for (double p : {0.25, 1.0, 2.0, 7.5, p_infinity}) {
        EXPECT_NEAR(mean_p(std::span<const cplx>(v), p), 5.0, 1e-14) << p;
    }
}

TEST(MeanP, RejectsBadInput)
{
    const std::vector<double> v(64, 1.0);
    EXPECT_THROW((void)mean_p(std::span<const double>(v), 0.0), std::invalid_argument);
    EXPECT_THROW((void)mean_p(std::span<const double>(v), -1.0), std::invalid_argument);
    const std::vector<double> empty;
    EXPECT_THROW((void)mean_p(std::span<const double>(empty), 2.0), std::invalid_argument);
}

TEST(MeanP, IdentityAtRadius)
{
    const harmonic_map m(z_pow(1), analytic_series{});
    for (double r : {0.1, 0.5, 0.9, 0.999}) {
        for (double p : {0.5, 1.0, 3.0, p_infinity}) {
            EXPECT_NEAR(integral_mean(m, component::f, r, p).value, r, 1e-12);
        }
    }
}

TEST(MeanP, GeometricKernelL2)
{
    const double r = 0.9;
    const std::size_t n = 4096;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 / (1.0 - std::polar(r, 2.0 * pi * static_cast<double>(i) / static_cast<double>(n)));
    }
    EXPECT_NEAR(mean_p(std::span<const cplx>(v), 2.0), 1.0 / std::sqrt(1.0 - r * r), 1e-10);
}

TEST(MeanP, AdaptiveMatchesClosedFormForAtom)
{
    const harmonic_map m(analytic_series::inv_power(1.0), analytic_series{});
    for (double r : {0.9, 0.99, 0.999}) {
        EXPECT_NEAR(integral_mean(m, component::f, r, 2.0).value / (1.0 / std::sqrt(1.0 - r * r)), 1.0, 1e-8);
    }
}

TEST(MeanP, NondecreasingInExponent)
{
    const harmonic_map m(poly({0.3, 1.0, cplx(0.0, -0.7), 0.2}), poly({0.0, 0.2, 0.1}));
    double prev = 0;
    for (double p : {0.5, 1.0, 1.5, 2.0, 4.0, 8.0, p_infinity}) {
        const double v = integral_mean(m, component::u, 0.8, p).value;
        EXPECT_GE(v, prev * (1.0 - 1e-12));
        prev = v;
    }
}

TEST(MeansTable, MonotoneInRadius)
{
    const harmonic_map m(poly({0.0, 1.0, 0.5, cplx(0.0, 0.3)}), analytic_series{});
    const auto t = make_means_table(m, component::f, radius_ladder(1, 4), {1.0, 2.0, 3.0}, "f");
    EXPECT_TRUE(t.monotone);
    ASSERT_EQ(t.values.size(), 4u);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 1; i < 4; ++i) {
            EXPECT_GE(t.values[i][j], t.values[i - 1][j]);
        }
    }
}

TEST(HardyNorm, IdentityApproachesOne)
{
    const harmonic_map m(z_pow(1), analytic_series{});
    const auto ladder = radius_ladder(1, 4);
    for (double p : {1.0, 2.0, p_infinity}) {
        const auto res = hardy_norm(m, component::f, p, ladder);
        EXPECT_LE(std::abs(res.value - 1.0), 1.0 - ladder.back() + 1e-12);
        EXPECT_FALSE(res.divergence_suspected);
        ASSERT_TRUE(res.trend.has_value());
        EXPECT_TRUE(res.trend->bounded);
    }
}

TEST(HardyNorm, GeometricKernelDiverges)
{
    const harmonic_map m(analytic_series::inv_power(1.0), analytic_series{});
    const std::vector<double> grid{0.9, 0.99, 0.999};
    const auto res = hardy_norm(m, component::f, 2.0, grid);
    EXPECT_TRUE(res.divergence_suspected);
    ASSERT_TRUE(res.trend.has_value());
    EXPECT_FALSE(res.trend->bounded);
}

TEST(HardyNorm, BoundaryCoefficientSum)
{
    const std::vector<cplx> c{0.5, cplx(1.0, -1.0), 0.0, 0.25, cplx(0.0, 0.75)};
    double s = 0;
    for (auto a : c) {
        s += std::norm(a);
    }
    const harmonic_map m(analytic_series(c), analytic_series{});
    EXPECT_NEAR(boundary_norm(m, component::f, 2.0), std::sqrt(s), 1e-10);
    const auto res = hardy_norm(m, component::f, 2.0, radius_ladder(1, 6));
    EXPECT_LE(res.value, std::sqrt(s));
    EXPECT_NEAR(res.value, std::sqrt(s), 1e-4);
}

TEST(HardyNorm, RejectsBadGrid)
{
    const harmonic_map m(z_pow(1), analytic_series{});
    const std::vector<double> bad{0.5, 0.4};
    EXPECT_THROW((void)hardy_norm(m, component::f, 2.0, bad), std::invalid_argument);
    const std::vector<double> edge{0.5, 1.0};
    EXPECT_THROW((void)hardy_norm(m, component::f, 2.0, edge), std::invalid_argument);
}

TEST(Zygmund, ZeroAndConstant)
{
    const harmonic_map zero(analytic_series{}, analytic_series{});
    EXPECT_EQ(zygmund_integral(zero, 0.5, 256), 0.0);
    const harmonic_map e(analytic_series::constant(std::exp(1.0)), analytic_series{});
    EXPECT_NEAR(zygmund_integral(e, 0.5, 256), 2.0 * pi * std::exp(1.0), 1e-12);
}

TEST(Zygmund, PoissonKernelAgainstAdaptiveQuadrature)
{
    const double r = 0.9;
    auto integrand = [r](double t) {
        const double u = std::abs((1.0 - r * std::cos(t)) / (1.0 - 2.0 * r * std::cos(t) + r * r));
        return u > 1.0 ? u * std::log(u) : 0.0;
    };
    const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 2.0 * pi, 20,
                                                                                         1e-13);
    const harmonic_map m(analytic_series::inv_power(1.0), analytic_series{});
    const double graded = zygmund_integral(m, r);
    EXPECT_GT(graded, 0.0);
    EXPECT_NEAR(graded / oracle, 1.0, 1e-6);
    EXPECT_NEAR(zygmund_integral(qt::analytic(analytic_series::inv_power_truncated(1.0, 600)), r, 1u << 14) / oracle,
                1.0, 1e-6);
}

TEST(GrowthExponent, LogPowerModel)
{
    const auto radii = radius_ladder(1, 6);
    std::vector<double> v;
    for (double r : radii) {
        v.push_back(std::pow(std::log(1.0 / (1.0 - r)), 2.0));
    }
    const auto fit = growth_exponent(radii, v, growth_model::log_power);
    EXPECT_NEAR(fit.slope, 2.0, 1e-6);
    EXPECT_LT(fit.max_residual, 1e-10);
}

TEST(GrowthExponent, InvPowerModel)
{
    const auto radii = radius_ladder(1, 6);
    std::vector<double> v;
    for (double r : radii) {
        v.push_back(std::pow(1.0 - r, -1.5));
    }
    EXPECT_NEAR(growth_exponent(radii, v, growth_model::inv_power).slope, 1.5, 1e-6);
}

TEST(GrowthExponent, ConjugateKernelGrowsLikeLog)
{
    const auto m = build_extremal({extremal_family::hl_growth, 0, 1.0, 0.5, 0.05, std::nullopt});
    const auto t = make_means_table(m, component::v, radius_ladder(1, 4), {1.0}, "v");
    const auto fit = growth_exponent(t, 0, growth_model::log_power);
    EXPECT_GE(fit.slope, 0.85);
    EXPECT_LE(fit.slope, 1.15);
    EXPECT_GE(fit.max_residual, 0.0);
}

TEST(GrowthExponent, RejectsShortInput)
{
    const std::vector<double> r{0.9, 0.99, 0.999};
    const std::vector<double> v{1.0, 2.0, 3.0};
    EXPECT_THROW((void)growth_exponent(r, v, growth_model::log_power), std::invalid_argument);
}

TEST(MeansTable, CsvHeader)
{
    const harmonic_map m(z_pow(1), analytic_series{});
    const auto t = make_means_table(m, component::f, {0.5}, {2.0, p_infinity}, "f");
    std::ostringstream os;
    write_csv(os, t);
    const auto s = os.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "r,p,value,n_theta");
    EXPECT_NE(s.find(",inf,"), std::string::npos);
}
