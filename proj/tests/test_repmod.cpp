#include <gtest/gtest.h>

#include "support.hpp"
#include "qgw/repmod.hpp"

using namespace qgw;

TEST(RepMod, BuiltinModulesValidate)
{
    for (const auto& name : builtin_module_names()) {
        ModuleData m = builtin_module(name);
        ModuleReport rep = validate_module(m);
        EXPECT_TRUE(rep.ok) << name << ": " << (rep.violations.empty() ? "" : rep.violations[0].detail);
    }
}

TEST(RepMod, Dimensions)
{
    EXPECT_EQ(builtin_b3_spin().dim, 8);
    EXPECT_EQ(builtin_a1_spin32().dim, 4);
    EXPECT_EQ(builtin_a1_vector().dim, 2);
    EXPECT_EQ(builtin_b3_spin().cartan.rank, 3);
}

TEST(RepMod, MinusculeGeneratorsSquareToZero)
{
    ModuleReport rep = validate_module(builtin_b3_spin());
    for (int k : rep.nilpotency_E)
        EXPECT_EQ(k, 2);
    for (int k : rep.nilpotency_F)
        EXPECT_EQ(k, 2);
    ModuleReport spin = validate_module(builtin_a1_spin32());
    EXPECT_EQ(spin.nilpotency_E.at(0), 4);
}

TEST(RepMod, SpinWeightsPairings)
{
    ModuleData m = builtin_a1_spin32();
    EXPECT_EQ(m.weight_pairing(4, 4), Rational(9, 2));
    EXPECT_EQ(m.weight_pairing(1, 4), Rational(-9, 2));
    ModuleData b = builtin_b3_spin();
    EXPECT_EQ(b.weight_pairing(8, 8), Rational(3, 4));
    EXPECT_EQ(b.cartan.d[2], Rational(1, 2));
}

TEST(RepMod, WeightLemmaHoldsForMinusculeModules)
{
    for (const char* name : {"b3-spin", "a1-vector"}) {
        LemmaReport rep = lemma_weight_check(builtin_module(name));
        EXPECT_TRUE(rep.ok) << name;
        EXPECT_GT(rep.quadruples, 0u);
    }
}

TEST(RepMod, WeightLemmaFailsForSpinThreeHalves)
{
    LemmaReport rep = lemma_weight_check(builtin_a1_spin32());
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.failures.size(), 8u);
}

TEST(RepMod, BrokenGradingIsReported)
{
    ModuleData m = builtin_a1_vector();
    m.E[0].set(0, 0, CoeffElem(1));
    ModuleReport rep = validate_module(m);
    EXPECT_FALSE(rep.ok);
    bool grading = false;
    for (const auto& v : rep.violations)
        grading = grading || v.kind == "grading";
    EXPECT_TRUE(grading);
}

TEST(RepMod, JsonRoundTripIsByteIdentical)
{
    for (const auto& name : builtin_module_names()) {
        json j = to_json(builtin_module(name));
        ModuleData back = module_from_json(j);
        EXPECT_EQ(to_json(back).dump(), j.dump()) << name;
        EXPECT_TRUE(validate_module(back).ok);
    }
}
