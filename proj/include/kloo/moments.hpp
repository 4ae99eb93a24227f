#pragma once

// Recursions for power moments of Kloosterman sums driven by the weight
// distributions of the double-coset codes.
//
// For an admissible family the dual code is {c(a) : a in F_q} with dimension r and
// weights w(c(a)) = A (s - X_a) / 2, where
//   i = 1:           s = B,             X_a = K(a)      -> moments MK^l
//   i = 2 (MK_2):    s = B - q^2,       X_a = K_2(a)    -> moments MK_2^l
//   i = 2 (MK^{2l}): s = B - q^2 + q,   X_a = K(a)^2    -> moments MK^{2l}
// Applying the binary Pless identity to the dual code and multiplying through by 2^h:
//
//   A^h sum_{l<=h} (-1)^l C(h,l) s^{h-l} M_l = q T_h,
//   T_h = sum_{j<=min(N,h)} (-1)^j C_j sum_{t=j}^{h} t! S(h,t) 2^{h-t} binom(N-j, N-t).
//
// Separating l = h and using A s (an integer even when s is not):
//
//   A^h M_h = sum_{l<h} (-1)^{h+l+1} C(h,l) (A s)^{h-l} A^l M_l + (-1)^h q T_h,
//
// and M_h follows by one exact division by A^h. A nonzero remainder means the
// inputs are wrong, so it raises instead of rounding.

#include <string>
#include <vector>

#include "kloo/bigint.hpp"
#include "kloo/charsums.hpp"
#include "kloo/coset_codes.hpp"
#include "kloo/errors.hpp"
#include "kloo/report.hpp"

namespace kloo {

enum class MomentKind {
    kloosterman,       ///< MK^h from an i = 1 family
    kloosterman2,      ///< MK_2^h from an i = 2 family
    kloosterman_even,  ///< MK^{2h} from an i = 2 family
};

/// Families whose dual code has dimension r, so the recursion is valid:
/// dc1+ (n >= 2 even, all q), dc1- (n >= 3 odd, all q; n = 1 with q >= 8),
/// dc2+ (n >= 2 even, q >= 4), dc2- (n >= 3 odd, q >= 4).
inline bool recursion_admissible(const DoubleCosetFamily& fam) {
    if (fam.index() == 1) return fam.sign() == Sign::plus || fam.n() >= 3 || fam.q() >= 8;
    return fam.q() >= 4;
}

struct RecursionInstance {
    DoubleCosetFamily family;
    unsigned h_max;
    WeightDistribution weight_dist;  ///< C_j for j <= min(N, h_max)
    FamilyConstants constants;

    /// Builds the instance from formula-mode trace multiplicities, querying only
    /// the coefficients the recursion consumes.
    static RecursionInstance make(const DoubleCosetFamily& fam, unsigned h_max) {
        if (!recursion_admissible(fam)) {
            throw ParameterError("no moment recursion for " + fam.label() +
                                 ": the dual code does not have dimension r there");
        }
        auto counts = trace_multiplicities_formula(fam);
        auto dist = weight_distribution(counts, static_cast<long>(h_max));
        return RecursionInstance{fam, h_max, std::move(dist), family_constants(fam)};
    }

    BigInt coefficient(long j) const {
        if (j < 0 || BigInt(j) > weight_dist.length) return 0;
        if (static_cast<std::size_t>(j) >= weight_dist.coefficients.size()) {
            throw ParameterError("weight coefficient C_" + std::to_string(j) + " was not computed (h_max too small)");
        }
        return weight_dist.coefficients[static_cast<std::size_t>(j)];
    }
};

/// T_h = sum_{j <= min(N,h)} (-1)^j C_j sum_{t=j}^{h} t! S(h,t) 2^{h-t} binom(N-j, N-t).
inline BigInt pless_sum(const RecursionInstance& inst, unsigned h) {
    const BigInt& n = inst.constants.n;
    BigInt total = 0;
    for (unsigned j = 0; j <= h && BigInt(j) <= n; ++j) {
        BigInt inner = 0;
        for (unsigned t = j; t <= h; ++t) {
            inner += factorial(t) * stirling2(h, t) * ipow(BigInt(2), h - t) * binomial(n - j, static_cast<long>(t - j));
        }
        const BigInt term = inst.coefficient(j) * inner;
        if (j % 2) total -= term;
        else total += term;
    }
    return total;
}

namespace detail {

inline void require_kind(const RecursionInstance& inst, MomentKind kind) {
    const int want = kind == MomentKind::kloosterman ? 1 : 2;
    if (inst.family.index() != want) {
        throw ParameterError("moment kind needs an i = " + std::to_string(want) + " family, got " + inst.family.label());
    }
}

/// A * s as an integer, per moment kind.
inline BigInt scaled_shift(const RecursionInstance& inst, MomentKind kind) {
    const BigInt q = inst.family.q();
    const BigInt& a = inst.constants.a;
    switch (kind) {
        case MomentKind::kloosterman: return inst.constants.n;
        case MomentKind::kloosterman2: return inst.constants.n - a * q * q;
        case MomentKind::kloosterman_even: return inst.constants.n - a * q * q + a * q;
    }
    throw ParameterError("unknown moment kind");
}

}  // namespace detail

/// M_0..M_{h_max} from the recursion, seeded by M_0 = q - 1.
inline std::vector<BigInt> recursive_moments(const RecursionInstance& inst, MomentKind kind) {
    detail::require_kind(inst, kind);
    const BigInt q = inst.family.q();
    const BigInt& a = inst.constants.a;
    const BigInt as = detail::scaled_shift(inst, kind);

    std::vector<BigInt> m{q - 1};
    for (unsigned h = 1; h <= inst.h_max; ++h) {
        BigInt num = 0;
        for (unsigned l = 0; l < h; ++l) {
            const BigInt term = binomial(BigInt(h), l) * ipow(as, h - l) * ipow(a, l) * m[l];
            if ((h + l + 1) % 2) num -= term;
            else num += term;
        }
        const BigInt t = pless_sum(inst, h);
        num += (h % 2 ? -1 : 1) * q * t;
        const BigInt den = ipow(a, h);
        BigInt quot, rem;
        boost::multiprecision::divide_qr(num, den, quot, rem);
        if (rem != 0) {
            throw ConsistencyError("moment recursion for " + inst.family.label() + " at h = " + std::to_string(h) +
                                   ": numerator " + num.str() + " not divisible by A^h = " + den.str() +
                                   " (Pless sum T_h = " + t.str() + ")");
        }
        m.push_back(std::move(quot));
    }
    return m;
}

/// MK^h through an i = 1 family.
inline BigInt mk_recursive(const RecursionInstance& inst, unsigned h) {
    if (h > inst.h_max) throw ParameterError("h exceeds the instance's h_max");
    return recursive_moments(inst, MomentKind::kloosterman).at(h);
}

/// MK_2^h through an i = 2 family.
inline BigInt mk2_recursive(const RecursionInstance& inst, unsigned h) {
    if (h > inst.h_max) throw ParameterError("h exceeds the instance's h_max");
    return recursive_moments(inst, MomentKind::kloosterman2).at(h);
}

/// MK^{2h} through an i = 2 family.
inline BigInt mk_even_recursive(const RecursionInstance& inst, unsigned h) {
    if (h > inst.h_max) throw ParameterError("h exceeds the instance's h_max");
    return recursive_moments(inst, MomentKind::kloosterman_even).at(h);
}

/// sum_{a != 0} w(c(a))^h against its binomial expansion in the moments:
///   i = 1: 2^{-h} A^h sum_l (-1)^l C(h,l) B^{h-l} MK^l
///   i = 2: 2^{-h} A^h sum_l (-1)^l C(h,l) (B - q^2 + q)^{h-l} MK^{2l}
///        = 2^{-h} A^h sum_l (-1)^l C(h,l) (B - q^2)^{h-l} MK_2^l
/// with weights from the closed forms and moments from direct summation.
inline Report verify_lhs_expansion(const DoubleCosetFamily& fam, unsigned h) {
    const GaloisField& f = fam.field();
    const auto k = family_constants(fam);
    const Rational q = Rational(BigInt(f.order()));
    const std::string params = fam.label() + ",h=" + std::to_string(h);

    Rational lhs = 0;
    for (FieldElement a : f.nonzero_elements()) lhs += Rational(ipow(dual_weight_formula(fam, a), h));

    auto expansion = [&](const Rational& shift, const std::vector<BigInt>& mk, unsigned stride) {
        Rational s = 0;
        for (unsigned l = 0; l <= h; ++l) {
            s += (l % 2 ? -1 : 1) * Rational(binomial(BigInt(h), l)) * rpow(shift, h - l) * Rational(mk[l * stride]);
        }
        return s * Rational(ipow(k.a, h)) / Rational(ipow(BigInt(2), h));
    };

    Report rep;
    if (fam.index() == 1) {
        rep.expect_eq("moments.lhs_expansion", params, expansion(k.b, moments(f, 1, h), 1), lhs);
    } else {
        rep.expect_eq("moments.lhs_expansion_even", params, expansion(k.b - q * q + q, moments(f, 1, 2 * h), 2), lhs);
        rep.expect_eq("moments.lhs_expansion_k2", params, expansion(k.b - q * q, moments(f, 2, h), 1), lhs);
    }
    return rep;
}

}  // namespace kloo
