#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace qrmeans;
using qt::poly;
using qt::z_pow;

TEST(PhiAngle, QuadraticCase)
{
    for (int i = -50; i <= 50; ++i) {
        const double t = pi * i / 50.0;
        EXPECT_NEAR(phi_angle(2.0, t), std::cos(2.0 * t), 1e-14) << t;
    }
    const cplx z = std::polar(0.7, 0.4);
    EXPECT_NEAR(sector_phi(2.0, z), (z * z).real(), 1e-15);
}

TEST(PhiAngle, ZeroOfOuterBranch)
{
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 9.0}) {
        EXPECT_NEAR(phi_angle(p, 0.5 * pi - 0.5 * pi / p), 0.0, 1e-14) << p;
    }
}

TEST(PhiAngle, MiddleBranchAtZero)
{
    EXPECT_NEAR(phi_angle(4.0, 0.0), 1.0, 1e-15);
}

TEST(PhiAngle, EvenSymmetricAndContinuous)
{
    for (double p : {2.5, 3.0, 4.0, 5.5}) {
        double prev = phi_angle(p, -pi);
        for (int i = -2000; i <= 2000; ++i) {
            const double t = pi * i / 2000.0;
            const double v = phi_angle(p, t);
            EXPECT_NEAR(v, phi_angle(p, -t), 1e-14);
            EXPECT_NEAR(v, phi_angle(p, pi - t), 1e-13);
            EXPECT_LE(std::abs(v - prev), p * pi / 2000.0 + 1e-12);
            prev = v;
        }
    }
}

TEST(PhiAngle, RejectsSmallExponent)
{
    EXPECT_THROW((void)phi_angle(1.5, 0.0), std::invalid_argument);
}

TEST(SectorPhi, SubharmonicProbe)
{
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0}) {
        for (double t : {0.0, 0.3, 1.2, 1.5707, 2.2, -0.9, -1.5}) {
            EXPECT_GE(phi_subharmonic_probe(p, std::polar(1.0, t)), -1e-12) << p << ' ' << t;
        }
    }
}

TEST(EvenInteger, Snapping)
{
    EXPECT_TRUE(even_integer_check(4.0).even);
    EXPECT_FALSE(even_integer_check(4.0).snapped);
    const auto near = even_integer_check(4.0 + 1e-13);
    EXPECT_TRUE(near.even);
    EXPECT_TRUE(near.snapped);
    EXPECT_FALSE(even_integer_check(3.0).even);
    EXPECT_FALSE(even_integer_check(4.0 + 1e-9).even);
}

TEST(LemmaAngleSet, ExcludedArc)
{
    const auto a = lemma_angle_set(3.0);
    EXPECT_NEAR(a.lo, -pi / 2.0 + pi / 3.0, 1e-15);
    EXPECT_NEAR(a.hi, 1.5 * pi - pi / 3.0, 1e-15);
    EXPECT_NEAR(2.0 * pi - (a.hi - a.lo), 2.0 * pi / 3.0, 1e-14);
    const auto full = lemma_angle_set(4.0);
    EXPECT_EQ(full.lo, -pi);
    EXPECT_EQ(full.hi, pi);
}

TEST(FpEval, QuadraticIsRealPartOfSquare)
{
    const harmonic_map m(poly({0.3, cplx(0.4, 0.2)}), poly({0.0, 0.1}));
    for (cplx z : {cplx(0.1, 0.5), cplx(-0.7, 0.2)}) {
        const cplx w = m(z);
        EXPECT_NEAR(F_p_eval(m, 2.0, z), w.real() * w.real() - w.imag() * w.imag(), 1e-15);
    }
}

TEST(FpEval, UnitConstant)
{
    const harmonic_map one(analytic_series::constant(1.0), analytic_series{});
    EXPECT_NEAR(F_p_eval(one, 2.0, 0.3), 1.0, 1e-15);
    EXPECT_NEAR(F_p_eval(one, 4.0, 0.3), -1.0, 1e-15);
    EXPECT_NEAR(F_p_eval(one, 6.0, 0.3), 1.0, 1e-14);
}

TEST(FpEval, OriginValueUnderOriginCondition)
{
    for (double p : {2.0, 3.0, 4.0, 2.5}) {
        const cplx f0 = std::polar(0.8, 0.5 * pi + pi / p);
        const harmonic_map m(analytic_series::constant(f0), analytic_series{});
        const auto fl = sector_hypotheses(m, p);
        ASSERT_TRUE(fl.origin_condition.value_or(false));
        const double oracle = std::pow(0.8, p) * -std::cos(p * (std::arg(f0) - 0.5 * pi));
        EXPECT_NEAR(F_p_eval(m, p, 0.0), oracle, 1e-14);
        EXPECT_GE(F_p_eval(m, p, 0.0), 0.0);
    }
}

TEST(FpEval, BranchCutReported)
{
    // -i f = -1 at z = 0
    const harmonic_map m(analytic_series::constant(cplx(0.0, -1.0)), analytic_series{});
    EXPECT_THROW((void)F_p_eval(m, 3.5, 0.0), std::domain_error);
    EXPECT_NO_THROW((void)F_p_eval(m, 3.0, 0.0));
}

TEST(LemmaDeficit, EqualityWitnesses)
{
    const auto L = lemma_constants(2.0);
    EXPECT_LE(std::abs(lemma_deficit(2.0, 1, 1.0, pi / 4.0, L)), 1e-12);
    EXPECT_LE(std::abs(lemma_deficit(2.0, 3, 1.0, pi / 2.0, L)), 1e-12);
    for (int which = 1; which <= 4; ++which) {
        EXPECT_EQ(lemma_deficit(2.0, which, 0.0, 0.7, L), 0.0);
    }
}

TEST(LemmaCheck, SweepHolds)
{
    lemma_grid grid;
    grid.n_angles = 2000;
    for (double p : {2.0, 2.5, 3.0, 4.0, 5.0, 6.0}) {
        for (int which = 1; which <= 4; ++which) {
            const auto rep = lemma_check(p, which, grid);
            EXPECT_LE(rep.max_scaled_deficit, 1e-11) << "p " << p << " ineq " << which;
        }
    }
}

TEST(LemmaCheck, WiderArgumentSetForNonEvenExponents)
{
    // Inequalities 2 and 4 also hold on the complement of an arc of width pi/p around -pi/2.
    for (double p : {2.5, 3.0, 5.0}) {
        const auto L = lemma_constants(p);
        for (int i = 0; i <= 4000; ++i) {
            const double t = -0.5 * pi + 0.5 * pi / p + (2.0 * pi - pi / p) * i / 4000.0;
            EXPECT_LE(lemma_deficit(p, 2, 1.0, t, L), 1e-11);
            EXPECT_LE(lemma_deficit(p, 4, 1.0, t, L), 1e-11);
        }
    }
}

TEST(LemmaCheck, RejectsBadIndex)
{
    EXPECT_THROW((void)lemma_check(2.0, 5), std::invalid_argument);
    EXPECT_THROW((void)lemma_check(1.0, 1), std::invalid_argument);
}

TEST(Green, SquaredModulus)
{
    const auto rep = green_identity_residual([](cplx z) { return std::norm(z); }, [](cplx) { return 4.0; });
    EXPECT_NEAR(rep.center, 0.0, 1e-15);
    EXPECT_NEAR(rep.boundary_mean, 1.0, 1e-13);
    EXPECT_NEAR(rep.correction, 1.0, 1e-10);
    EXPECT_LT(rep.residual, 1e-10);
    EXPECT_TRUE(rep.converged);
}

TEST(Green, HarmonicCubic)
{
    const auto rep = green_identity_residual([](cplx z) { return (z * z * z).real(); }, [](cplx) { return 0.0; });
    EXPECT_LT(rep.residual, 1e-12);
    EXPECT_EQ(rep.correction, 0.0);
}

TEST(Green, QuadraticFpOfConstantDilatation)
{
    green_spec spec;
    spec.n_angles = 512;
    spec.n_radial = 256;
    const harmonic_map m(z_pow(1), z_pow(1, 0.4));
    EXPECT_LT(green_identity_residual(m, 2.0, spec).residual, 1e-8);
}

TEST(Green, RejectsNonPolynomial)
{
    const harmonic_map m(analytic_series::inv_power(0.5), analytic_series{});
    EXPECT_THROW((void)green_identity_residual(m, 2.0), std::invalid_argument);
}

TEST(Laplacian, AnalyticMapIsHarmonic)
{
    const harmonic_map m(poly({0.2, cplx(0.0, 0.5), 0.3}), analytic_series{});
    for (double p : {2.0, 3.0, 4.0}) {
        const auto rep = laplacian_F_p(m, p, cplx(0.1, 0.3));
        EXPECT_EQ(rep.value, 0.0);
        EXPECT_EQ(rep.fut_bound, 0.0);
    }
}

TEST(Laplacian, QuadraticMatchesFiniteDifference)
{
    const harmonic_map m(z_pow(1), z_pow(2, 0.3));
    const double h = 1e-4;
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.5, 0.4), cplx(0.0, -0.7)}) {
        auto F = [&](cplx w) { return F_p_eval(m, 2.0, w); };
        const double fd = (F(z + h) + F(z - h) + F(z + cplx(0, h)) + F(z - cplx(0, h)) - 4.0 * F(z)) / (h * h);
        const auto rep = laplacian_F_p(m, 2.0, z);
        EXPECT_NEAR(rep.value, fd, 1e-6);
        EXPECT_LE(rep.exact, rep.fut_bound * (1.0 + 1e-14));
        EXPECT_NEAR(rep.fut_bound, 8.0 * std::abs(m.dg()(z) * m.dh()(z)), 1e-15);
    }
}

TEST(Laplacian, GeneralExponentMatchesFiniteDifference)
{
    const harmonic_map m(poly({cplx(-0.3, 0.6), 1.0}), poly({0.0, 0.0, 0.2}));
    const double h = 1e-4;
    const cplx z(0.1, 0.2);
    for (double p : {3.0, 4.0, 2.5}) {
        auto F = [&](cplx w) { return F_p_eval(m, p, w); };
        const double fd = (F(z + h) + F(z - h) + F(z + cplx(0, h)) + F(z - cplx(0, h)) - 4.0 * F(z)) / (h * h);
        EXPECT_NEAR(laplacian_F_p(m, p, z).value, fd, 1e-5) << p;
    }
}

TEST(Laplacian, ComparisonChainOnSynthesizedMaps)
{
    qr_corpus_options o;
    o.base.seed = 11;
    o.base.count = 6;
    o.base.max_degree = 10;
    o.K = 1.3;
    o.grid = {16, 128, 0.99};
    const qr_grid probe{12, 64, 0.95};
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        for (const auto &nm : qr_corpus(o)) {
            probe.for_each([&](double r, double t) {
                const auto rep = laplacian_F_p(nm.map, p, std::polar(r, t), nm.K);
                if (rep.degenerate) {
                    return;
                }
                const double s = std::max(1.0, rep.majorant) * 1e-10;
                EXPECT_LE(rep.exact, rep.fut_bound + s);
                EXPECT_LE(rep.fut_bound, rep.dilatation_bound + s);
                EXPECT_LE(rep.dilatation_bound, rep.split_bound + s);
                EXPECT_LE(rep.split_bound, rep.majorant + s);
            });
        }
    }
}

TEST(MeanValue, QuadraticAnalyticEquality)
{
    const harmonic_map m(poly({cplx(0.3, -0.2), 0.5, cplx(0.0, 0.2)}), analytic_series{});
    const auto rep = meanvalue_hypothesis(m, 2.0, 0.9);
    EXPECT_NEAR(rep.slack, 0.0, 1e-12);
    EXPECT_TRUE(rep.holds);
}

TEST(MeanValue, ConstantEquality)
{
    const harmonic_map m(analytic_series::constant(cplx(0.1, 0.6)), analytic_series{});
    for (double p : {2.0, 3.0, 4.5}) {
        EXPECT_NEAR(meanvalue_hypothesis(m, p, 0.5).slack, 0.0, 1e-12);
    }
}

TEST(MeanValue, AnalyticCorpus)
{
    corpus_options o;
    o.seed = 3;
    o.count = 6;
    o.max_degree = 8;
    o.origin = origin_rule::free;
    for (const auto &nm : analytic_corpus(o)) {
        for (double p : {2.0, 3.0, 4.0}) {
            EXPECT_TRUE(meanvalue_hypothesis(nm.map, p, 0.9, 1e-9, detail::kinked_options()).holds) << nm.name;
        }
    }
}
