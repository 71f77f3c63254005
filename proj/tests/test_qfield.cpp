#include <gtest/gtest.h>

#include "qgw/qfield.hpp"
#include "support.hpp"

using namespace qgw;
using namespace qgw::testing_support;

TEST(QField, RingAxiomsOnRandomElements)
{
    Rng g(20240601);
    for (int it = 0; it < 200; ++it) {
        CoeffElem a = random_coeff(g), b = random_coeff(g), c = random_coeff(g);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + CoeffElem(), a);
        EXPECT_EQ(a * CoeffElem(1), a);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(QField, FractionFieldAxioms)
{
    Rng g(7);
    for (int it = 0; it < 60; ++it) {
        FracElem a = random_frac(g), b = random_frac(g), c = random_frac(g);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (!a.is_zero())
            EXPECT_EQ(a * a.inv(), FracElem(1));
    }
}

TEST(QField, RadicalsSquareToQuantumIntegers)
{
    EXPECT_EQ(CoeffElem::r2() * CoeffElem::r2(), qint(2));
    EXPECT_EQ(CoeffElem::r3() * CoeffElem::r3(), qint(3));
    CoeffElem r6 = CoeffElem::r2() * CoeffElem::r3();
    EXPECT_EQ(r6 * r6, qint(2) * qint(3));
}

TEST(QField, InverseOfRadicalExpression)
{
    CoeffElem x = CoeffElem(1) + CoeffElem::r3() * CoeffElem::qpow(1);
    FracElem inv = coeff_inv(x);
    EXPECT_EQ(FracElem(x) * inv, FracElem(1));
    EXPECT_THROW(coeff_inv(CoeffElem()), DivisionByZero);
}

TEST(QField, QuantumIntegers)
{
    EXPECT_EQ(qint(1), CoeffElem(1));
    EXPECT_EQ(qint(2), CoeffElem::qpow(1) + CoeffElem::qpow(-1));
    EXPECT_EQ(qint(3), CoeffElem::qpow(2) + CoeffElem(1) + CoeffElem::qpow(-2));
    EXPECT_EQ(qfactorial(3), qint(2) * qint(3));
    EXPECT_EQ(qbinomial(4, 2), CoeffElem::qpow(4) + CoeffElem::qpow(2) + CoeffElem(2) + CoeffElem::qpow(-2) +
                                   CoeffElem::qpow(-4));
    for (int n = 1; n < 7; ++n)
        for (int k = 1; k < n; ++k)
            EXPECT_EQ(qbinomial(n, k), qbinomial(n, n - k));
}

TEST(QField, QuarterPowerRendering)
{
    EXPECT_EQ(qpow_str(-21), "q^{-21/4}");
    EXPECT_EQ(qpow_str(2), "q^{1/2}");
    EXPECT_EQ(qpow_str(4), "q");
    EXPECT_EQ(qpow_str(0), "1");
    EXPECT_EQ(qpow_str(-8), "q^{-2}");
}

TEST(QField, SpecializationAtOne)
{
    EXPECT_EQ(qint(5).at_one(), Rational(5));
    EXPECT_EQ(qbinomial(5, 2).at_one(), Rational(10));
}

TEST(QField, JsonRoundTrip)
{
    Rng g(99);
    for (int it = 0; it < 100; ++it) {
        CoeffElem c = random_coeff(g);
        EXPECT_EQ(coeff_from_json(to_json(c)), c);
        FracElem f = random_frac(g);
        EXPECT_EQ(frac_from_json(to_json(f)), f);
        EXPECT_EQ(to_json(frac_from_json(to_json(f))).dump(), to_json(f).dump());
    }
}

TEST(QField, RationalParsing)
{
    EXPECT_EQ(parse_rational("-21/4"), Rational(-21, 4));
    EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
    EXPECT_EQ(rational_str(Rational(-3, 4)), "-3/4");
}
