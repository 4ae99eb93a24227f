#pragma once

// Kloosterman sums over GF(2^r) by direct summation, their power moments,
// Kloosterman sums for GL(t, q), and exhaustive checks of the classical
// identities they satisfy.
//
// A nontrivial additive character is always psi(x) = lambda(c x) for a
// "character scale" c != 0, with lambda(x) = (-1)^tr(x).

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"
#include "kloo/errors.hpp"
#include "kloo/field.hpp"
#include "kloo/matrix.hpp"
#include "kloo/report.hpp"

namespace kloo {

/// Hard cap on the number of terms in one m-dimensional Kloosterman sum.
inline constexpr std::uint64_t kKloostermanBudget = std::uint64_t{1} << 24;
/// Hard cap on |GL(t, q)| for brute-force GL Kloosterman sums.
inline constexpr std::uint64_t kGlBudget = 1'000'000;

namespace detail {

inline void require_nonzero(FieldElement x, const char* what) {
    if (x.is_zero()) throw DomainError(std::string(what) + " must be nonzero");
}

inline std::uint64_t checked_power(std::uint64_t q, int m, std::uint64_t budget) {
    std::uint64_t terms = 1;
    for (int i = 0; i < m; ++i) {
        terms *= q;
        if (terms > budget) {
            throw ResourceError("q^m exceeds the Kloosterman enumeration budget of " + std::to_string(budget) + " terms");
        }
    }
    return terms;
}

}  // namespace detail

/// K_m(psi; a) = sum over (alpha_1..alpha_m) in (F_q^*)^m of
/// psi(alpha_1 + ... + alpha_m + a (alpha_1 ... alpha_m)^{-1}).
/// Bounded by q^m <= 2^24 in absolute value, so a 64-bit accumulator is exact.
inline std::int64_t kloosterman(const GaloisField& f, FieldElement a, int m = 1, FieldElement c = {}) {
    if (c == FieldElement{}) c = f.one();
    if (!f.contains(a) || !f.contains(c)) throw ParameterError("kloosterman: operand from a different field");
    detail::require_nonzero(a, "kloosterman parameter a");
    detail::require_nonzero(c, "character scale c");
    if (m < 1) throw ParameterError("kloosterman dimension m must be >= 1");
    detail::checked_power(f.order(), m, kKloostermanBudget);

    const Bits ab = static_cast<Bits>(a.bits());
    const Bits cb = static_cast<Bits>(c.bits());
    const Bits qm1 = static_cast<Bits>(f.order() - 1);

    // Odometer over alpha in (F_q^*)^m, digits 1..q-1.
    std::vector<Bits> alpha(static_cast<std::size_t>(m), 1);
    std::int64_t sum = 0;
    while (true) {
        Bits s = 0, p = 1;
        for (Bits x : alpha) {
            s ^= x;
            p = f.mul_raw(p, x);
        }
        const Bits arg = s ^ f.mul_raw(ab, f.inv_raw(p));
        sum += f.lambda_raw(f.mul_raw(cb, arg));
        std::size_t pos = alpha.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (alpha[pos] < qm1) {
                ++alpha[pos];
                done = false;
                break;
            }
            alpha[pos] = 1;
        }
        if (done) break;
    }
    return sum;
}

/// K_m(lambda(c.); a) for every a in F_q^*, indexed by a's bits (index 0 unused).
inline std::vector<std::int64_t> kloosterman_table(const GaloisField& f, int m = 1, FieldElement c = {}) {
    std::vector<std::int64_t> out(f.order(), 0);
    for (FieldElement a : f.nonzero_elements()) out[a.bits()] = kloosterman(f, a, m, c);
    return out;
}

/// MK_m(psi)^h for h = 0..h_max from one pass over a.
inline std::vector<BigInt> moments(const GaloisField& f, int m, unsigned h_max, FieldElement c = {}) {
    const auto table = kloosterman_table(f, m, c);
    std::vector<BigInt> out(h_max + 1, 0);
    for (std::uint32_t a = 1; a < f.order(); ++a) {
        BigInt pw = 1;
        for (unsigned h = 0; h <= h_max; ++h) {
            out[h] += pw;
            pw *= table[a];
        }
    }
    return out;
}

/// MK_m(psi)^h = sum over a in F_q^* of K_m(psi; a)^h.
inline BigInt moment(const GaloisField& f, int m, unsigned h, FieldElement c = {}) {
    return moments(f, m, h, c).back();
}

// ---------------------------------------------------------------------------
// Kloosterman sums for GL(t, q)

enum class GlMethod { recursion, closed_form, brute_force };

/// K_{GL(t,q)}(psi; a) = q^{t-1} K_{GL(t-1)} K + q^{2t-2}(q^{t-1} - 1) K_{GL(t-2)},
/// seeded by K_{GL(0)} = 1 and K_{GL(1)} = K(psi; a).
inline BigInt kloosterman_gl_recursive(const GaloisField& f, int t, FieldElement a, FieldElement c = {}) {
    if (t < 0) throw ParameterError("GL size t must be >= 0");
    if (t == 0) return 1;
    const BigInt k = kloosterman(f, a, 1, c);
    const BigInt q = f.order();
    BigInt prev = 1, cur = k;
    for (int s = 2; s <= t; ++s) {
        BigInt next = ipow(q, static_cast<unsigned>(s - 1)) * cur * k +
                      ipow(q, static_cast<unsigned>(2 * s - 2)) * (ipow(q, static_cast<unsigned>(s - 1)) - 1) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Closed form: q^{(t-2)(t+1)/2} sum_{l=1}^{floor((t+2)/2)} q^l K^{t+2-2l}
/// sum over t+1 >= j_1 >= ... >= j_{l-1} >= 2l-1 of prod_nu (q^{j_nu - 2 nu} - 1).
/// The leading power is negative for t <= 1 and is applied as an exact division.
inline BigInt kloosterman_gl_closed_form(const GaloisField& f, int t, FieldElement a, FieldElement c = {}) {
    if (t < 0) throw ParameterError("GL size t must be >= 0");
    const BigInt k = kloosterman(f, a, 1, c);
    const BigInt q = f.order();

    // inner(l): sum over weakly decreasing (j_1..j_{l-1}) in [2l-1, t+1].
    auto inner = [&](int l) {
        BigInt total = 0;
        const int len = l - 1;
        if (len == 0) return BigInt(1);
        const int lo = 2 * l - 1, hi = t + 1;
        if (lo > hi) return BigInt(0);
        std::vector<int> j(static_cast<std::size_t>(len), hi);
        while (true) {
            BigInt prod = 1;
            for (int nu = 1; nu <= len; ++nu) prod *= ipow(q, static_cast<unsigned>(j[nu - 1] - 2 * nu)) - 1;
            total += prod;
            // Next tuple in reverse-lexicographic order, keeping j_1 >= ... >= j_len >= lo.
            int pos = len - 1;
            while (pos >= 0 && j[pos] == lo) --pos;
            if (pos < 0) break;
            --j[pos];
            for (int p = pos + 1; p < len; ++p) j[p] = j[pos];
        }
        return total;
    };

    BigInt sum = 0;
    for (int l = 1; l <= (t + 2) / 2; ++l) {
        sum += ipow(q, static_cast<unsigned>(l)) * ipow(k, static_cast<unsigned>(t + 2 - 2 * l)) * inner(l);
    }
    const long lead = static_cast<long>(t - 2) * (t + 1) / 2;
    if (lead >= 0) return sum * ipow(q, static_cast<unsigned>(lead));
    return exact_div(sum, ipow(q, static_cast<unsigned>(-lead)), "GL Kloosterman closed form");
}

/// sum over w in GL(t,q) of psi(Tr w + a Tr w^{-1}).
inline BigInt kloosterman_gl_brute_force(const GaloisField& f, int t, FieldElement a, FieldElement c = {}) {
    if (c == FieldElement{}) c = f.one();
    detail::require_nonzero(a, "kloosterman parameter a");
    detail::require_nonzero(c, "character scale c");
    if (t < 0) throw ParameterError("GL size t must be >= 0");
    if (t == 0) return 1;
    const auto group = enumerate_gl(f, t, kGlBudget);
    const Bits ab = static_cast<Bits>(a.bits()), cb = static_cast<Bits>(c.bits());
    std::int64_t sum = 0;
    for (const MatrixGF& w : group) {
        const Bits arg = trace_bits(w) ^ f.mul_raw(ab, trace_bits(inverse(f, w)));
        sum += f.lambda_raw(f.mul_raw(cb, arg));
    }
    return sum;
}

inline BigInt kloosterman_gl(const GaloisField& f, int t, FieldElement a, GlMethod method, FieldElement c = {}) {
    switch (method) {
        case GlMethod::recursion: return kloosterman_gl_recursive(f, t, a, c);
        case GlMethod::closed_form: return kloosterman_gl_closed_form(f, t, a, c);
        case GlMethod::brute_force: return kloosterman_gl_brute_force(f, t, a, c);
    }
    throw ParameterError("unknown GL method");
}

// ---------------------------------------------------------------------------
// Identity checks

namespace detail {
inline std::string param_str(const GaloisField& f, const std::string& rest = {}) {
    return "q=" + std::to_string(f.order()) + (rest.empty() ? "" : "," + rest);
}
}  // namespace detail

/// K_2(lambda; a) = K(lambda; a)^2 - q. The character -lambda in the classical
/// statement equals lambda in characteristic 2.
inline Report verify_carlitz(const GaloisField& f, FieldElement a) {
    Report rep;
    const std::int64_t k = kloosterman(f, a);
    const std::int64_t k2 = kloosterman(f, a, 2);
    rep.expect_eq("charsums.carlitz", detail::param_str(f, "a=" + a.hex()), k * k - static_cast<std::int64_t>(f.order()), k2);
    return rep;
}

/// K(lambda; a^{2^s}) = K(lambda; a).
inline Report verify_power_invariance(const GaloisField& f, FieldElement a, unsigned s) {
    Report rep;
    const FieldElement as = f.pow(a, std::uint64_t{1} << s);
    rep.expect_eq("charsums.power_invariance", detail::param_str(f, "a=" + a.hex() + ",s=" + std::to_string(s)),
                  kloosterman(f, a), kloosterman(f, as));
    return rep;
}

/// (a) sum over alpha not in {0,1} of lambda(beta / (alpha^2 + alpha)) = K(lambda; beta) - 1.
/// (b) when b is outside the Artin-Schreier image (x^2 + x + b irreducible),
///     sum over alpha of lambda(beta / (alpha^2 + alpha + b)) = -K(lambda; beta) - 1.
/// Part (b) runs only when b is supplied.
inline Report verify_theta_identities(const GaloisField& f, FieldElement beta, const FieldElement* b = nullptr) {
    detail::require_nonzero(beta, "beta");
    Report rep;
    const std::int64_t k = kloosterman(f, beta);
    const Bits bb = static_cast<Bits>(beta.bits());
    std::int64_t lhs_a = 0;
    for (std::uint32_t x = 2; x < f.order(); ++x) {
        const Bits den = static_cast<Bits>(f.mul_raw(static_cast<Bits>(x), static_cast<Bits>(x)) ^ x);
        lhs_a += f.lambda_raw(f.mul_raw(bb, f.inv_raw(den)));
    }
    rep.expect_eq("charsums.theta_a", detail::param_str(f, "beta=" + beta.hex()), k - 1, lhs_a);
    if (b) {
        if (!f.contains(*b)) throw ParameterError("b from a different field");
        for (FieldElement img : f.artin_schreier_image())
            if (img == *b) throw PreconditionError("theta identity (b) needs b outside {x^2 + x}; got " + b->hex());
        std::int64_t lhs_b = 0;
        for (std::uint32_t x = 0; x < f.order(); ++x) {
            const Bits den = static_cast<Bits>(f.mul_raw(static_cast<Bits>(x), static_cast<Bits>(x)) ^ x ^ b->bits());
            lhs_b += f.lambda_raw(f.mul_raw(bb, f.inv_raw(den)));
        }
        rep.expect_eq("charsums.theta_b", detail::param_str(f, "beta=" + beta.hex() + ",b=" + b->hex()), -k - 1, lhs_b);
    }
    return rep;
}

/// sum over a in F_q^* of lambda(a beta) K_m(lambda; a)
///   = q K_{m-1}(lambda; beta^{-1}) + (-1)^{m+1}  (beta != 0),  (-1)^{m+1}  (beta = 0),
/// with K_0(lambda; x) = lambda(x). Here -a = a.
inline Report verify_twisted_sum(const GaloisField& f, FieldElement beta, int m) {
    if (m < 1) throw ParameterError("twisted sum needs m >= 1");
    Report rep;
    const auto table = kloosterman_table(f, m);
    std::int64_t lhs = 0;
    for (FieldElement a : f.nonzero_elements()) lhs += f.lambda(f.mul(a, beta)) * table[a.bits()];
    const std::int64_t sign = (m % 2) ? 1 : -1;
    std::int64_t rhs = sign;
    if (!beta.is_zero()) {
        const FieldElement binv = f.inv(beta);
        const std::int64_t km1 = (m == 1) ? f.lambda(binv) : kloosterman(f, binv, m - 1);
        rhs += static_cast<std::int64_t>(f.order()) * km1;
    }
    rep.expect_eq("charsums.twisted_sum", detail::param_str(f, "beta=" + beta.hex() + ",m=" + std::to_string(m)), rhs, lhs);
    return rep;
}

/// {tau : |tau| < 2 sqrt(q), tau = -1 mod 4}; defined for r >= 2.
inline std::set<std::int64_t> kloosterman_range(const GaloisField& f) {
    if (f.degree() < 2) throw PreconditionError("Kloosterman range statement needs r >= 2");
    const std::int64_t q = f.order();
    std::set<std::int64_t> out;
    for (std::int64_t tau = -2 * q; tau <= 2 * q; ++tau)
        if (tau * tau < 4 * q && ((tau % 4) + 4) % 4 == 3) out.insert(tau);
    return out;
}

/// Distinct values of K(lambda; a) over a in F_q^*.
inline std::set<std::int64_t> kloosterman_support(const GaloisField& f) {
    std::set<std::int64_t> out;
    const auto table = kloosterman_table(f);
    for (std::uint32_t a = 1; a < f.order(); ++a) out.insert(table[a]);
    return out;
}

}  // namespace kloo
