#include <gtest/gtest.h>

#include "bundles.hpp"
#include "golden.hpp"
#include "qgw/dbos.hpp"

using namespace qgw;
using namespace qgw::testing_support;

namespace {

CoeffElem q(const Rational& e, const Rational& c = 1) { return CoeffElem::qpow(e, c); }

}  // namespace

TEST(DBos, NormalizationConstants)
{
    EXPECT_EQ(stage("b3-spin").nd.lambda, q(Rational(-1, 4)));
    EXPECT_EQ(stage("a1-spin32").nd.lambda, q(Rational(-3, 2)));
    EXPECT_EQ(stage("a1-vector").nd.lambda, q(-1));
    EXPECT_EQ(normalization_lambda(Rational(3, 4), 1), q(Rational(-1, 4)));
    EXPECT_THROW(quarter_vexp(Rational(1, 3)), DomainError);
}

TEST(DBos, NormalizedSpectrumContainsMinusOne)
{
    for (const char* name : {"a1-vector", "a1-spin32", "b3-spin"}) {
        const RPrimePair& p = stage(name).rp;
        ASSERT_GE(p.minus_one_index, 0) << name;
        EXPECT_EQ(p.eigenvalues_normalized[p.minus_one_index], CoeffElem(-1)) << name;
        EXPECT_TRUE(annihilates_roots(braiding(p.R).m, p.eigenvalues_normalized)) << name;
    }
}

TEST(DBos, PartnerMatrixIdentities)
{
    for (const char* name : {"a1-vector", "a1-spin32", "b3-spin"}) {
        RPrimeChecks c = check_rprime(stage(name).rp);
        EXPECT_TRUE(c.all()) << name << ": " << c.first_failure();
    }
}

TEST(DBos, ExpansionMatchesElementarySymmetricFunctions)
{
    const RPrimePair& p = stage("b3-spin").rp;
    std::vector<CoeffElem> others;
    for (size_t k = 0; k < p.eigenvalues_normalized.size(); ++k)
        if (static_cast<int>(k) != p.minus_one_index)
            others.push_back(p.eigenvalues_normalized[k]);
    ASSERT_EQ(others.size(), 3u);
    const CoeffElem& x = others[0];
    const CoeffElem& y = others[1];
    const CoeffElem& z = others[2];
    std::vector<CoeffElem> expect = {1, -(x + y + z), x * y + x * z + y * z, CoeffElem(1) - x * y * z};
    EXPECT_EQ(p.expansion, expect);
    EXPECT_EQ(p.expansion[1], q(-2) - q(1) - q(-5));
    EXPECT_EQ(p.expansion[3], CoeffElem(1) + q(-6));
    EXPECT_EQ(rprime_expanded(p.R, p.expansion), p.Rprime);
}

TEST(DBos, PrintedExpansionDiffersFromProduct)
{
    const RPrimePair& p = stage("b3-spin").rp;
    EXPECT_NE(rprime_expanded(p.R, golden::f4_expansion_printed()), p.Rprime);
}

TEST(DBos, BraidedTopRelations)
{
    auto rels = braided_relations(stage("b3-spin").rp);
    const BraidedRelation* r87 = find_relation(rels, 8, 7);
    ASSERT_NE(r87, nullptr);
    ASSERT_TRUE(r87->binomial.has_value());
    EXPECT_EQ(*r87->binomial, FracElem(q(Rational(1, 2))));

    auto spin = braided_relations(stage("a1-spin32").rp);
    const BraidedRelation* r43 = find_relation(spin, 4, 3);
    ASSERT_NE(r43, nullptr);
    ASSERT_TRUE(r43->binomial.has_value());
    EXPECT_EQ(*r43->binomial, FracElem(q(3)));

    auto vec = braided_relations(stage("a1-vector").rp);
    const BraidedRelation* r21 = find_relation(vec, 2, 1);
    ASSERT_NE(r21, nullptr);
    ASSERT_TRUE(r21->binomial.has_value());
    EXPECT_EQ(*r21->binomial, FracElem(q(1)));
}

TEST(DBos, CartanMatrices)
{
    EXPECT_EQ(stage("b3-spin").rep.cartan_matrix, golden::f4_cartan());
    EXPECT_EQ(stage("a1-spin32").rep.cartan_matrix, golden::g2_cartan());
    EXPECT_EQ(stage("a1-vector").rep.cartan_matrix, golden::a2_cartan());
    EXPECT_EQ(stage("b3-spin").rep.theta.at(2), Rational(-1, 2));
    EXPECT_EQ(stage("a1-spin32").rep.theta.at(0), Rational(-3));
    EXPECT_TRUE(stage("b3-spin").rep.theta_consistent);
}

TEST(DBos, SerreChains)
{
    for (const char* name : {"a1-vector", "a1-spin32", "b3-spin"}) {
        const DBosReport& rep = stage(name).rep;
        EXPECT_TRUE(rep.serre_ok()) << name;
    }
    const DBosReport& g2 = stage("a1-spin32").rep;
    ASSERT_EQ(g2.serre.size(), 1u);
    EXPECT_EQ(g2.serre[0].degree, 4);
    EXPECT_TRUE(g2.serre[0].reverse_applicable);
    EXPECT_TRUE(g2.serre[0].reverse_ok);
    const DBosReport& f4 = stage("b3-spin").rep;
    EXPECT_EQ(f4.serre.at(2).degree, 2);
}

TEST(DBos, LFunctionalsB3)
{
    LFunctionalReport r = lfunctional_check(bundle("b3-spin"), builtin_lclaim("b3-spin"));
    EXPECT_TRUE(r.diagonal_ok);
    size_t plus_bad = 0;
    for (const auto& e : r.entries) {
        if (e.sign == '+')
            plus_bad += !e.match;
        if (e.sign == '-' && e.i != e.j) {
            EXPECT_FALSE(e.match);
            ASSERT_TRUE(e.ratio.has_value());
            EXPECT_EQ(*e.ratio, FracElem(q(-1)));
        }
    }
    EXPECT_EQ(plus_bad, 0u);
    EXPECT_EQ(r.mismatches(), 3u);
}

TEST(DBos, LFunctionalsSpinThreeHalves)
{
    LFunctionalReport r = lfunctional_check(bundle("a1-spin32"), builtin_lclaim("a1-spin32"));
    EXPECT_TRUE(r.diagonal_ok);
    for (const auto& e : r.entries)
        if (e.i == e.j)
            EXPECT_TRUE(e.match);
    EXPECT_EQ(r.mismatches(), 12u);
}

TEST(DBos, CovectorCounts)
{
    EXPECT_EQ(covector_check(stage("a1-vector").rp).failures, 2);
    EXPECT_EQ(covector_check(stage("a1-vector").rp, -1).failures, 0);
    CovectorReport spin = covector_check(stage("a1-spin32").rp);
    EXPECT_EQ(spin.pairs, 16);
    EXPECT_EQ(spin.failures, 14);
    EXPECT_EQ(covector_check(stage("a1-spin32").rp, -1).failures, 10);
    EXPECT_EQ(covector_check(stage("b3-spin").rp).failures, 56);
}

TEST(DBos, ReportJsonIsStable)
{
    const Stage& s = stage("a1-spin32");
    DBosReport rep = s.rep;
    relation_report(rep, bundle("a1-spin32"), s.rp);
    EXPECT_FALSE(rep.relations.empty());
    DBosReport again = s.rep;
    relation_report(again, bundle("a1-spin32"), s.rp);
    EXPECT_EQ(to_json(rep).dump(), to_json(again).dump());
}
