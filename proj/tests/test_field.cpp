#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kloo/charsums.hpp"
#include "kloo/field.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

const std::uint32_t kModuli[] = {0, 0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b};

}  // namespace

TEST(Field, PinnedModuliAreIrreducible) {
    for (int r = 1; r <= 8; ++r) {
        EXPECT_EQ(GaloisField::default_modulus(r), kModuli[r]);
        EXPECT_TRUE(GaloisField::is_irreducible(kModuli[r]));
        EXPECT_EQ(GaloisField(r).order(), 1u << r);
    }
}

TEST(Field, RejectsDegreeOutOfRange) {
    EXPECT_THROW(GaloisField(0), ParameterError);
    try {
        GaloisField f(9);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find("r out of supported range"), std::string::npos);
    }
}

TEST(Field, RejectsReducibleModulus) {
    EXPECT_THROW(GaloisField(2, 0x5), ParameterError);   // (x+1)^2
    EXPECT_THROW(GaloisField(4, 0x15), ParameterError);  // (x^2+x+1)^2
    EXPECT_THROW(GaloisField(3, 0x7), ParameterError);   // wrong degree
}

TEST(Field, SmallExamples) {
    const GaloisField f(2);
    const auto w = f.element(2);
    EXPECT_EQ(f.add(w, w), f.zero());
    EXPECT_EQ(f.mul(w, w).bits(), 3u);
    EXPECT_EQ(f.inv(f.one()), f.one());
    EXPECT_EQ(f.trace(w), 1);
    EXPECT_EQ(f.trace(f.one()), 0);
    EXPECT_EQ(f.lambda(f.zero()), 1);
    EXPECT_EQ(f.lambda(w), -1);
    EXPECT_THROW(f.inv(f.zero()), DomainError);
    EXPECT_THROW(f.element(4), ParameterError);
    EXPECT_EQ(f.parse("0x3").bits(), 3u);
    EXPECT_THROW(f.parse("zz"), ParameterError);
    EXPECT_EQ(GaloisField(3).inv(GaloisField(3).one()).bits(), 1u);
}

TEST(Field, MixedFieldOperandsRejected) {
    const GaloisField f2(2), f3(3);
    EXPECT_THROW(f2.add(f2.one(), f3.one()), ParameterError);
    EXPECT_THROW(f3.mul(f2.one(), f3.one()), ParameterError);
}

TEST(Field, MultiplicationMatchesShiftAndAdd) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b)
                ASSERT_EQ(f.mul(f.element(a), f.element(b)).bits(), oracle::gf_mul(a, b, kModuli[r], r))
                    << "r=" << r << " a=" << a << " b=" << b;
    }
}

TEST(Field, InverseAndTraceMatchOracle) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        for (FieldElement x : f.nonzero_elements()) {
            EXPECT_EQ(f.inv(x).bits(), oracle::gf_inv(x.bits(), kModuli[r], r));
            EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
            EXPECT_EQ(f.pow(x, f.order() - 1), f.one());
        }
        for (FieldElement x : f.elements()) EXPECT_EQ(f.trace(x), oracle::gf_trace(x.bits(), kModuli[r], r));
    }
}

TEST(Field, TraceIsLinearAndFrobeniusInvariant) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        for (FieldElement x : f.elements()) {
            EXPECT_EQ(f.trace(f.mul(x, x)), f.trace(x));
            for (FieldElement y : f.elements()) ASSERT_EQ(f.trace(f.add(x, y)), f.trace(x) ^ f.trace(y));
        }
    }
}

TEST(Field, TraceIsBalanced) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        std::uint32_t ones = 0;
        for (FieldElement x : f.elements()) ones += static_cast<std::uint32_t>(f.trace(x));
        EXPECT_EQ(ones, f.order() / 2);
    }
}

TEST(Field, LambdaOrthogonality) {
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        for (FieldElement c : f.elements()) {
            long s = 0;
            for (FieldElement x : f.elements()) s += f.lambda(f.mul(c, x));
            EXPECT_EQ(s, c.is_zero() ? static_cast<long>(f.order()) : 0L) << "r=" << r;
        }
    }
}

TEST(Field, ArtinSchreierImageIsTraceZeroHyperplane) {
    EXPECT_EQ(GaloisField(1).artin_schreier_image().size(), 1u);
    const GaloisField f2(2);
    const auto img2 = f2.artin_schreier_image();
    EXPECT_EQ(std::set<std::uint32_t>({img2[0].bits(), img2[1].bits()}), std::set<std::uint32_t>({0, 1}));
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        std::set<std::uint32_t> direct;
        for (FieldElement x : f.elements()) direct.insert(f.add(f.mul(x, x), x).bits());
        std::set<std::uint32_t> img;
        for (FieldElement x : f.artin_schreier_image()) img.insert(x.bits());
        EXPECT_EQ(img, direct);
        EXPECT_EQ(img.size(), f.order() / 2);
        for (auto b : img) EXPECT_EQ(f.trace(f.element(b)), 0);
    }
}

TEST(Field, AxiomsOnRandomTriples) {
    auto gen = oracle::rng();
    for (int r = 1; r <= 8; ++r) {
        const GaloisField f(r);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
        for (int i = 0; i < 2000; ++i) {
            const auto a = f.element(pick(gen)), b = f.element(pick(gen)), c = f.element(pick(gen));
            ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            ASSERT_EQ(f.mul(a, b), f.mul(b, a));
        }
    }
}

TEST(Field, RepresentationIndependence) {
    // Same field, other irreducible moduli: the Kloosterman value multisets and
    // the moments agree because they depend only on the abstract field.
    const std::pair<int, std::uint32_t> alternates[] = {{3, 0xd}, {4, 0x19}, {5, 0x29}, {8, 0x11d}};
    for (auto [r, mod] : alternates) {
        const GaloisField a(r), b(r, mod);
        auto ta = kloosterman_table(a), tb = kloosterman_table(b);
        std::sort(ta.begin() + 1, ta.end());
        std::sort(tb.begin() + 1, tb.end());
        EXPECT_EQ(ta, tb) << "r=" << r;
        EXPECT_EQ(moments(a, 1, 6), moments(b, 1, 6));
        if (r <= 5) {
            EXPECT_EQ(moments(a, 2, 4), moments(b, 2, 4));
        }
        std::uint32_t ones_a = 0, ones_b = 0;
        for (auto x : a.elements()) ones_a += static_cast<std::uint32_t>(a.trace(x));
        for (auto x : b.elements()) ones_b += static_cast<std::uint32_t>(b.trace(x));
        EXPECT_EQ(ones_a, ones_b);
    }
}
