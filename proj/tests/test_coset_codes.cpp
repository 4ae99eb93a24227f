#include <gtest/gtest.h>

#include <algorithm>

#include "kloo/coset_codes.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

std::vector<DoubleCosetFamily> enumerable_families() {
    std::vector<DoubleCosetFamily> out;
    for (int r = 1; r <= 8; ++r) out.emplace_back(1, Sign::minus, 1, GaloisField(r));
    for (int r = 1; r <= 2; ++r) {
        out.emplace_back(1, Sign::plus, 2, GaloisField(r));
        out.emplace_back(2, Sign::plus, 2, GaloisField(r));
    }
    out.emplace_back(1, Sign::minus, 3, GaloisField(1));
    out.emplace_back(2, Sign::minus, 3, GaloisField(1));
    return out;
}

std::vector<BigInt> big(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

void expect_report(const Report& rep) {
    for (const auto& c : rep.checks)
        EXPECT_TRUE(c.pass) << c.name << " [" << c.parameters << "] expected " << c.expected << " got " << c.actual;
}

}  // namespace

TEST(Families, ParityRules) {
    const GaloisField f(2);
    EXPECT_NO_THROW(DoubleCosetFamily(1, Sign::plus, 2, f));
    EXPECT_NO_THROW(DoubleCosetFamily(1, Sign::minus, 1, f));
    EXPECT_NO_THROW(DoubleCosetFamily(2, Sign::minus, 3, f));
    EXPECT_THROW(DoubleCosetFamily(1, Sign::plus, 3, f), ParameterError);
    EXPECT_THROW(DoubleCosetFamily(2, Sign::minus, 1, f), ParameterError);
    EXPECT_THROW(DoubleCosetFamily(1, Sign::minus, 2, f), ParameterError);
    EXPECT_THROW(DoubleCosetFamily(3, Sign::plus, 2, f), ParameterError);
    EXPECT_THROW(DoubleCosetFamily::parse("dc3+", 2, f), ParameterError);
    EXPECT_EQ(DoubleCosetFamily::parse("dc2-", 3, f).label(), "dc2-(n=3,q=4)");
}

TEST(Constants, PrintedSpecializations) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        const BigInt q = f.order();
        const auto p = family_constants(DoubleCosetFamily(1, Sign::plus, 2, f));
        EXPECT_EQ(p.a, q * q * (q * q - 1));
        EXPECT_EQ(p.n, q * q * (q * q - 1) * (q * q - 1));
        EXPECT_EQ(p.b, Rational(q * q - 1));
        const auto m = family_constants(DoubleCosetFamily(1, Sign::minus, 1, f));
        EXPECT_EQ(m.a, BigInt(1));
        EXPECT_EQ(m.n, q - 1);
    }
}

TEST(Constants, NonIntegralShift) {
    const GaloisField f(2);
    const BigInt q = 4;
    const auto k = family_constants(DoubleCosetFamily(1, Sign::minus, 3, f));
    EXPECT_EQ(k.b, Rational(q * q - 1) * Rational(q * q * q - 1) / Rational(q));
}

TEST(Constants, LengthIsCellSize) {
    for (int r = 1; r <= 4; ++r) {
        const GaloisField f(r);
        for (int n = 1; n <= 7; ++n) {
            std::vector<DoubleCosetFamily> fams;
            if (n % 2 == 0) {
                fams.emplace_back(1, Sign::plus, n, f);
                fams.emplace_back(2, Sign::plus, n, f);
            } else {
                fams.emplace_back(1, Sign::minus, n, f);
                if (n >= 3) fams.emplace_back(2, Sign::minus, n, f);
            }
            for (const auto& fam : fams) {
                const auto k = family_constants(fam);
                EXPECT_EQ(k.n, cell_order(f.order(), n, fam.sigma_index())) << fam.label();
                EXPECT_EQ(Rational(k.n), Rational(k.a) * k.b) << fam.label();
            }
        }
    }
}

TEST(TraceMultiplicities, FrozenValues) {
    for (int r = 1; r <= 6; ++r) {
        const GaloisField f(r);
        const auto m = trace_multiplicities_formula(DoubleCosetFamily(1, Sign::minus, 1, f));
        for (auto beta : f.elements()) {
            const long expected = beta.is_zero() ? 1 : (f.trace(f.inv(beta)) == 0 ? 2 : 0);
            EXPECT_EQ(m.counts[beta.bits()], BigInt(expected));
        }
    }
    const GaloisField f2(1);
    EXPECT_EQ(trace_multiplicities_formula(DoubleCosetFamily(2, Sign::plus, 2, f2)).counts, big({12, 0}));
    EXPECT_EQ(trace_multiplicities_formula(DoubleCosetFamily(1, Sign::plus, 2, f2)).counts, big({24, 12}));
}

TEST(TraceMultiplicities, FormulaMatchesEnumeration) {
    for (const auto& fam : enumerable_families()) {
        const auto cell = materialize(fam);
        EXPECT_EQ(trace_multiplicities(cell), trace_multiplicities_formula(fam)) << fam.label();
        EXPECT_EQ(trace_multiplicities(fam, CountMode::brute_force), trace_multiplicities(fam, CountMode::formula));
        expect_report(verify_trace_count_bridge(cell));
    }
}

TEST(TraceMultiplicities, SumsAndPositivity) {
    for (int r = 1; r <= 4; ++r) {
        const GaloisField f(r);
        for (int n = 1; n <= 5; ++n) {
            std::vector<DoubleCosetFamily> fams;
            if (n % 2 == 0) {
                fams.emplace_back(1, Sign::plus, n, f);
                fams.emplace_back(2, Sign::plus, n, f);
            } else {
                fams.emplace_back(1, Sign::minus, n, f);
                if (n >= 3) fams.emplace_back(2, Sign::minus, n, f);
            }
            for (const auto& fam : fams) {
                const auto m = trace_multiplicities_formula(fam);
                EXPECT_EQ(m.total(), family_constants(fam).n);
                EXPECT_EQ(m.weighted_sum(), 0) << fam.label();
                // Every beta occurs except in the small exceptional instances.
                const bool exceptional = (fam.index() == 1 && fam.sign() == Sign::minus && n == 1) ||
                                         (fam.index() == 2 && fam.sign() == Sign::plus && n == 2 && f.order() == 2);
                if (!exceptional)
                    for (const auto& c : m.counts) EXPECT_GT(c, 0) << fam.label();
            }
        }
    }
}

TEST(DualCode, WeightsDirectVersusClosedForm) {
    const GaloisField f2(1);
    EXPECT_EQ(dual_weight_formula(DoubleCosetFamily(1, Sign::plus, 2, f2), f2.one()), BigInt(12));
    for (const auto& fam : enumerable_families()) {
        const auto cell = materialize(fam);
        for (auto a : fam.field().nonzero_elements()) {
            const BigInt direct = hamming_weight(dual_codeword(cell, a));
            EXPECT_EQ(direct, dual_weight_formula(fam, a)) << fam.label() << " a=" << a.hex();
            EXPECT_EQ(direct, dual_weight(fam, a, WeightMode::direct));
            if (fam.index() == 2) EXPECT_EQ(direct, dual_weight_formula(fam, a, WeightMode::formula_k2));
        }
    }
    EXPECT_THROW(dual_weight_formula(DoubleCosetFamily(1, Sign::plus, 2, f2), f2.zero()), DomainError);
    EXPECT_THROW(dual_weight_formula(DoubleCosetFamily(1, Sign::plus, 2, f2), f2.one(), WeightMode::formula_k2),
                 ParameterError);
}

TEST(DualCode, TwoWeightFormsAgreeFormulaOnly) {
    for (int r = 2; r <= 5; ++r) {
        const GaloisField f(r);
        for (const auto& fam : {DoubleCosetFamily(2, Sign::plus, 2, f), DoubleCosetFamily(2, Sign::minus, 3, f),
                                DoubleCosetFamily(2, Sign::plus, 4, f)})
            for (auto a : f.nonzero_elements())
                EXPECT_EQ(dual_weight_formula(fam, a), dual_weight_formula(fam, a, WeightMode::formula_k2));
    }
}

TEST(DualCode, Additivity) {
    for (const auto& fam : enumerable_families()) {
        const auto cell = materialize(fam);
        const GaloisField& f = fam.field();
        EXPECT_EQ(hamming_weight(dual_codeword(cell, f.zero())), BigInt(0));
        for (auto a : f.elements())
            for (auto b : f.elements()) {
                auto ca = dual_codeword(cell, a);
                const auto cb = dual_codeword(cell, b);
                for (std::size_t i = 0; i < ca.size(); ++i) ca[i] ^= cb[i];
                ASSERT_EQ(ca, dual_codeword(cell, f.add(a, b)));
            }
    }
}

TEST(DualCode, Injectivity) {
    for (const auto& fam : enumerable_families()) {
        const auto kernel = dual_kernel(materialize(fam));
        EXPECT_EQ(kernel.size() == 1, injective_expected(fam)) << fam.label();
        EXPECT_EQ(kernel.size(), dual_kernel(trace_multiplicities_formula(fam)).size());
        if (!injective_expected(fam)) {
            ASSERT_EQ(kernel.size(), 2u) << fam.label();
            EXPECT_EQ(kernel[1], fam.field().one());
        }
    }
    EXPECT_FALSE(injective_expected(DoubleCosetFamily(2, Sign::plus, 2, GaloisField(1))));
    EXPECT_FALSE(injective_expected(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(2))));
    EXPECT_TRUE(injective_expected(DoubleCosetFamily(1, Sign::minus, 1, GaloisField(3))));
    for (int r = 1; r <= 6; ++r)
        for (const auto& fam : {DoubleCosetFamily(1, Sign::plus, 2, GaloisField(r)), DoubleCosetFamily(2, Sign::plus, 4, GaloisField(r)),
                                DoubleCosetFamily(1, Sign::minus, 3, GaloisField(r)), DoubleCosetFamily(2, Sign::minus, 3, GaloisField(r))})
            EXPECT_EQ(dual_kernel(trace_multiplicities_formula(fam)).size() == 1, injective_expected(fam)) << fam.label();
}

TEST(Distribution, ToyAndFrozen) {
    const GaloisField f2(1);
    const TraceMultiplicityMap single{f2, big({1, 0})};
    EXPECT_EQ(weight_distribution(single).coefficients, big({1, 1}));
    const TraceMultiplicityMap one_one{f2, big({0, 2})};
    EXPECT_EQ(weight_distribution(one_one).coefficients, big({1, 0, 1}));
    const auto d = weight_distribution(trace_multiplicities_formula(DoubleCosetFamily(1, Sign::plus, 2, f2)));
    EXPECT_EQ(d.total(), ipow(BigInt(2), 35));
    EXPECT_EQ(d.coefficients[0], BigInt(1));
    EXPECT_EQ(weight_coefficient(trace_multiplicities_formula(DoubleCosetFamily(1, Sign::plus, 2, f2)), 12), d.coefficients[12]);
    EXPECT_EQ(weight_coefficient(single, 5), BigInt(0));
}

TEST(Distribution, SymmetryAndTotal) {
    for (const auto& fam : enumerable_families()) {
        if (family_constants(fam).n > 2000) continue;
        const auto m = trace_multiplicities_formula(fam);
        const auto d = weight_distribution(m);
        ASSERT_TRUE(d.complete());
        auto rev = d.coefficients;
        std::reverse(rev.begin(), rev.end());
        EXPECT_EQ(rev, d.coefficients) << fam.label();
        const int dim = dual_dimension(fam.field(), dual_kernel(m).size());
        EXPECT_EQ(d.total(), ipow(BigInt(2), static_cast<unsigned>(family_constants(fam).n - dim))) << fam.label();
    }
}

TEST(Distribution, MatchesConstrainedEnumeration) {
    auto gen = oracle::rng(3);
    std::size_t checked = 0;
    for (const auto& fam : enumerable_families()) {
        if (family_constants(fam).n > 20) continue;
        const auto cell = materialize(fam);
        std::vector<std::uint32_t> traces;
        for (Bits t : cell.traces()) traces.push_back(t);
        const auto dp = weight_distribution(trace_multiplicities(cell));
        const auto direct = oracle::subset_distribution(traces);
        std::shuffle(traces.begin(), traces.end(), gen);
        EXPECT_EQ(oracle::subset_distribution(traces), direct) << "ordering changed the distribution";
        ASSERT_EQ(dp.coefficients.size(), direct.size());
        for (std::size_t j = 0; j < direct.size(); ++j) EXPECT_EQ(dp.coefficients[j], BigInt(direct[j])) << fam.label();
        ++checked;
    }
    EXPECT_EQ(checked, 5u);
}

TEST(Distribution, MatchesMacWilliams) {
    for (const auto& fam : enumerable_families()) {
        if (family_constants(fam).n > 2000) continue;
        EXPECT_EQ(weight_distribution_macwilliams(fam), weight_distribution(trace_multiplicities_formula(fam))) << fam.label();
    }
    EXPECT_EQ(krawtchouk(2, 2, 1), BigInt(-2));
    EXPECT_EQ(macwilliams_transform({0, 2}, 2).coefficients, big({1, 0, 1}));
}

TEST(Distribution, TruncationAgrees) {
    const auto m = trace_multiplicities_formula(DoubleCosetFamily(1, Sign::plus, 2, GaloisField(1)));
    const auto full = weight_distribution(m);
    const auto cut = weight_distribution(m, 10);
    ASSERT_EQ(cut.coefficients.size(), 11u);
    for (std::size_t j = 0; j <= 10; ++j) EXPECT_EQ(cut.coefficients[j], full.coefficients[j]);
    EXPECT_THROW(weight_distribution(m, -1), ParameterError);
    const auto huge = trace_multiplicities_formula(DoubleCosetFamily(2, Sign::minus, 3, GaloisField(4)));
    EXPECT_THROW(weight_distribution(huge), ResourceError);
}

TEST(Combinatorics, Stirling) {
    EXPECT_EQ(stirling2(4, 2), BigInt(7));
    EXPECT_EQ(stirling2(0, 0), BigInt(1));
    EXPECT_EQ(stirling2(5, 0), BigInt(0));
    for (unsigned h = 1; h <= 30; ++h) {
        EXPECT_EQ(stirling2(h, h), BigInt(1));
        EXPECT_EQ(stirling2(h, 1), BigInt(1));
        for (unsigned t = 1; t < h; ++t) EXPECT_EQ(stirling2(h, t), BigInt(t) * stirling2(h - 1, t) + stirling2(h - 1, t - 1));
    }
    EXPECT_EQ(binomial(BigInt(24), 12), BigInt(2704156));
    EXPECT_EQ(binomial(BigInt(5), 7), BigInt(0));
}

TEST(Pless, ToyCode) {
    const WeightDistribution toy{2, big({1, 0, 1})};
    const auto rep = pless_check(toy, toy, 1, 1);
    ASSERT_EQ(rep.checks.size(), 1u);
    EXPECT_EQ(rep.checks[0].expected, "2");
    for (unsigned h = 0; h <= 10; ++h) expect_report(pless_check(toy, toy, 1, h));
}

TEST(Pless, DoubleCosetCodes) {
    for (const auto& fam : enumerable_families()) {
        if (!injective_expected(fam) || family_constants(fam).n > 2000) continue;
        const auto m = trace_multiplicities_formula(fam);
        const auto code = weight_distribution(m);
        const auto dual = dual_distribution(fam, 1);
        for (unsigned h = 0; h <= 10; ++h) expect_report(pless_check(dual, code, fam.field().degree(), h));
    }
}
