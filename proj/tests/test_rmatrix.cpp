#include <gtest/gtest.h>

#include "bundles.hpp"
#include "golden.hpp"
#include "support.hpp"
#include "qgw/rmatrix.hpp"

using namespace qgw;
using namespace qgw::testing_support;

TEST(RMatrix, QybeHoldsForShippedBundles)
{
    for (const char* name : {"a1-vector", "a1-spin32", "b3-spin"}) {
        const RMatrixBundle& b = bundle(name);
        EXPECT_TRUE(qybe_residual(b.r_paper).m.is_zero()) << name;
        BundleChecks c = verify_bundle(b);
        EXPECT_TRUE(c.all()) << name << ": " << c.detail;
    }
}

TEST(RMatrix, NonzeroCounts)
{
    EXPECT_EQ(bundle("a1-vector").r_paper.m.nnz(), 5u);
    EXPECT_EQ(bundle("a1-spin32").r_paper.m.nnz(), 30u);
    EXPECT_EQ(bundle("b3-spin").r_paper.m.nnz(), 139u);
}

TEST(RMatrix, VectorModuleMatchesTextbookMatrix)
{
    CoeffElem q = CoeffElem::qpow(1), qi = CoeffElem::qpow(-1);
    TensorMatrix R(2);
    R.set(1, 1, 1, 1, q);
    R.set(2, 2, 2, 2, q);
    R.set(1, 2, 1, 2, 1);
    R.set(2, 1, 2, 1, 1);
    R.set(1, 2, 2, 1, q - qi);
    EXPECT_EQ(bundle("a1-vector").r_paper, R);
}

TEST(RMatrix, SpinThreeHalvesMatchesPrintedMatrix)
{
    EXPECT_EQ(bundle("a1-spin32").r_paper, golden::spin32_printed());
}

TEST(RMatrix, ConventionsDifferByFlip)
{
    for (const char* name : {"a1-vector", "a1-spin32", "b3-spin"}) {
        const RMatrixBundle& b = bundle(name);
        EXPECT_EQ(conjugate_p(b.r_std), b.r_paper) << name;
    }
}

TEST(RMatrix, BraidingIsSymmetric)
{
    EXPECT_TRUE(symmetry_check(bundle("b3-spin")).symmetric);
    EXPECT_TRUE(symmetry_check(bundle("a1-spin32")).symmetric);
}

TEST(RMatrix, B3EntriesNearTheGoldenPositions)
{
    const RMatrixBundle& b = bundle("b3-spin");
    const Rational h(1, 2);
    CoeffElem expect = (CoeffElem::qpow(h) - CoeffElem::qpow(-h)) * CoeffElem::qpow(Rational(-1, 4));
    EXPECT_EQ(b.r_paper.at(5, 3, 7, 1), expect);
    EXPECT_EQ(b.r_paper.at(1, 7, 3, 5), expect);
    EXPECT_EQ(b.r_paper.at(8, 8, 8, 8), CoeffElem::qpow(Rational(3, 4)));
}

TEST(RMatrix, PrintedFSideFailsQybe)
{
    EXPECT_THROW(build_rvv(builtin_b3_spin(), builtin_roots("b3-spin", "comp1-printed")), BuildError);
    const RMatrixBundle& b = bundle("b3-spin", "comp1-printed");
    EXPECT_FALSE(qybe_residual(b.r_std).m.is_zero());
    EXPECT_FALSE(symmetry_check(b).symmetric);
}

TEST(RMatrix, LusztigVariantIsAsymmetricElsewhere)
{
    const RMatrixBundle& b = bundle("b3-spin", "lusztig");
    SymmetryReport s = symmetry_check(b);
    EXPECT_FALSE(s.symmetric);
    EXPECT_EQ(s.asymmetric_entries, 18u);
    EXPECT_TRUE(pr_symmetric_at(b, 3, 5, 7, 1));
}

TEST(RMatrix, QExponentialOfNilpotent)
{
    ModuleData m = builtin_a1_vector();
    SMat x = m.E[0];
    SMat e = qexp_truncated(x, 1);
    EXPECT_EQ(e, SMat::identity(2) + x.scaled(CoeffElem::qpow(1)));
}

TEST(RMatrix, RootDataRoundTrip)
{
    for (const char* variant : {"default", "comp1-printed", "lusztig"}) {
        auto roots = builtin_roots("b3-spin", variant);
        json j = roots_to_json(roots);
        EXPECT_EQ(roots_to_json(roots_from_json(j)).dump(), j.dump()) << variant;
    }
}

TEST(RMatrix, LetterParsing)
{
    Letter l = parse_letter("E2^3");
    EXPECT_EQ(l.kind, 'E');
    EXPECT_EQ(l.index, 2);
    EXPECT_EQ(l.power, 3);
    EXPECT_THROW(parse_letter("X1"), std::invalid_argument);
}
