#include <gtest/gtest.h>

#include "kloo/moments.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

/// sum over a != 0 of K_m(a)^h using only oracle arithmetic.
BigInt oracle_moment(const GaloisField& f, int m, unsigned h) {
    BigInt s = 0;
    for (std::uint32_t a = 1; a < f.order(); ++a)
        s += ipow(BigInt(oracle::kloosterman(a, m, f.modulus(), f.degree())), h);
    return s;
}

void expect_report(const Report& rep) {
    for (const auto& c : rep.checks)
        EXPECT_TRUE(c.pass) << c.name << " [" << c.parameters << "] expected " << c.expected << " got " << c.actual;
}

}  // namespace

TEST(Admissibility, Regimes) {
    EXPECT_TRUE(recursion_admissible(DoubleCosetFamily(1, Sign::plus, 2, GaloisField(1))));
    EXPECT_FALSE(recursion_admissible(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(2))));
    EXPECT_TRUE(recursion_admissible(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(3))));
    EXPECT_TRUE(recursion_admissible(DoubleCosetFamily(1, Sign::minus, 3, GaloisField(1))));
    EXPECT_FALSE(recursion_admissible(DoubleCosetFamily(2, Sign::plus, 2, GaloisField(1))));
    EXPECT_FALSE(recursion_admissible(DoubleCosetFamily(2, Sign::minus, 3, GaloisField(1))));
    EXPECT_THROW(RecursionInstance::make(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(2)), 4), ParameterError);
    EXPECT_THROW(RecursionInstance::make(DoubleCosetFamily(2, Sign::plus, 2, GaloisField(1)), 4), ParameterError);
}

TEST(Recursion, FrozenValues) {
    const auto inst = RecursionInstance::make(DoubleCosetFamily(1, Sign::plus, 2, GaloisField(2)), 4);
    EXPECT_EQ(recursive_moments(inst, MomentKind::kloosterman), (std::vector<BigInt>{3, 1, 11, 25, 83}));
    EXPECT_EQ(mk_recursive(inst, 2), BigInt(11));
    EXPECT_THROW(mk_recursive(inst, 5), ParameterError);
    EXPECT_THROW(mk2_recursive(inst, 1), ParameterError);
    const auto inst8 = RecursionInstance::make(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(3)), 2);
    EXPECT_EQ(mk_recursive(inst8, 1), BigInt(1));
    EXPECT_EQ(mk_recursive(inst8, 2), BigInt(55));
}

TEST(Recursion, FirstMomentsOfEveryInstantiation) {
    for (int r : {2, 3, 4}) {
        const GaloisField f(r);
        const BigInt q = f.order();
        for (const auto& fam : {DoubleCosetFamily(1, Sign::plus, 2, f), DoubleCosetFamily(1, Sign::minus, 3, f)}) {
            const auto inst = RecursionInstance::make(fam, 2);
            EXPECT_EQ(mk_recursive(inst, 0), q - 1);
            EXPECT_EQ(mk_recursive(inst, 1), BigInt(1));
            EXPECT_EQ(mk_recursive(inst, 2), q * q - q - 1);
        }
    }
}

TEST(Recursion, KloostermanMomentsMatchOracle) {
    for (int r : {1, 2, 3, 4}) {
        const GaloisField f(r);
        std::vector<BigInt> expected;
        for (unsigned h = 0; h <= 10; ++h) expected.push_back(oracle_moment(f, 1, h));
        std::vector<DoubleCosetFamily> fams{DoubleCosetFamily(1, Sign::plus, 2, f), DoubleCosetFamily(1, Sign::minus, 3, f),
                                            DoubleCosetFamily(1, Sign::plus, 4, f)};
        if (f.order() >= 8) fams.emplace_back(1, Sign::minus, 1, f);
        for (const auto& fam : fams)
            EXPECT_EQ(recursive_moments(RecursionInstance::make(fam, 10), MomentKind::kloosterman), expected) << fam.label();
    }
}

TEST(Recursion, TwoDimensionalAndEvenMomentsMatchOracle) {
    for (int r : {2, 3, 4}) {
        const GaloisField f(r);
        std::vector<BigInt> mk2, even;
        for (unsigned h = 0; h <= 10; ++h) {
            mk2.push_back(r <= 3 ? oracle_moment(f, 2, h) : moment(f, 2, h));
            even.push_back(oracle_moment(f, 1, 2 * h));
        }
        for (const auto& fam : {DoubleCosetFamily(2, Sign::plus, 2, f), DoubleCosetFamily(2, Sign::minus, 3, f)}) {
            const auto inst = RecursionInstance::make(fam, 10);
            EXPECT_EQ(recursive_moments(inst, MomentKind::kloosterman2), mk2) << fam.label();
            EXPECT_EQ(recursive_moments(inst, MomentKind::kloosterman_even), even) << fam.label();
            EXPECT_EQ(mk2_recursive(inst, 3), mk2[3]);
            EXPECT_EQ(mk_even_recursive(inst, 3), even[3]);
        }
    }
}

TEST(Recursion, CarlitzLinksTheTwoFamilies) {
    // MK_2^1 = MK^2 - q (q - 1) follows from K_2 = K^2 - q.
    for (int r : {2, 3, 4, 5}) {
        const GaloisField f(r);
        const BigInt q = f.order();
        const auto i1 = RecursionInstance::make(DoubleCosetFamily(1, Sign::plus, 2, f), 2);
        const auto i2 = RecursionInstance::make(DoubleCosetFamily(2, Sign::plus, 2, f), 2);
        EXPECT_EQ(mk2_recursive(i2, 1), mk_recursive(i1, 2) - q * (q - 1));
    }
}

TEST(Recursion, EvenMomentsNonNegative) {
    for (int r : {2, 3, 4, 5}) {
        const auto inst = RecursionInstance::make(DoubleCosetFamily(2, Sign::plus, 2, GaloisField(r)), 8);
        for (const auto& v : recursive_moments(inst, MomentKind::kloosterman_even)) EXPECT_GE(v, 0);
    }
}

TEST(Recursion, CorruptedDistributionIsDetected) {
    auto inst = RecursionInstance::make(DoubleCosetFamily(1, Sign::plus, 2, GaloisField(2)), 6);
    inst.weight_dist.coefficients[3] += 1;
    EXPECT_THROW(recursive_moments(inst, MomentKind::kloosterman), ConsistencyError);
}

TEST(Recursion, PlessSumAtZero) {
    // T_0 = C_0 = 1.
    const auto inst = RecursionInstance::make(DoubleCosetFamily(1, Sign::plus, 2, GaloisField(3)), 3);
    EXPECT_EQ(pless_sum(inst, 0), BigInt(1));
}

TEST(Expansion, WeightPowerSums) {
    for (int r : {2, 3, 4}) {
        const GaloisField f(r);
        for (unsigned h = 0; h <= 5; ++h) {
            expect_report(verify_lhs_expansion(DoubleCosetFamily(1, Sign::plus, 2, f), h));
            expect_report(verify_lhs_expansion(DoubleCosetFamily(1, Sign::minus, 3, f), h));
            expect_report(verify_lhs_expansion(DoubleCosetFamily(2, Sign::plus, 2, f), h));
            expect_report(verify_lhs_expansion(DoubleCosetFamily(2, Sign::minus, 3, f), h));
        }
    }
    expect_report(verify_lhs_expansion(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(3)), 3));
}
