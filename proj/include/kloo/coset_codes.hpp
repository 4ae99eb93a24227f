#pragma once

// Binary codes attached to the double cosets
//   DC_1+(n,q) = P+ sigma_{n-1} P+  (n even),   DC_2+(n,q) = P+ sigma_{n-2} P+  (n even),
//   DC_1-(n,q) = P+ sigma_{n-1} P+  (n odd),    DC_2-(n,q) = P+ sigma_{n-2} P+  (n odd >= 3).
//
// With g_1..g_N the cell in canonical order, C(DC) = {u in F_2^N : sum u_i Tr g_i = 0}
// and its dual is {c(a) = (tr(a Tr g_i))_i : a in F_q}. Everything about the code
// depends on the cell only through N(beta) = #{g : Tr g = beta}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"
#include "kloo/charsums.hpp"
#include "kloo/errors.hpp"
#include "kloo/field.hpp"
#include "kloo/orthogroup.hpp"
#include "kloo/report.hpp"

namespace kloo {

enum class Sign { plus, minus };

class DoubleCosetFamily {
  public:
    DoubleCosetFamily(int index, Sign sign, int n, GaloisField field)
        : index_(index), sign_(sign), n_(n), field_(std::move(field)) {
        if (index != 1 && index != 2) throw ParameterError("family index must be 1 or 2");
        const bool even = n % 2 == 0;
        bool ok = false;
        if (sign == Sign::plus) ok = even && n >= 2;
        else ok = !even && n >= (index == 1 ? 1 : 3);
        if (!ok) {
            throw ParameterError("family " + name() + " is not defined for n = " + std::to_string(n) +
                                 " (dc1+/dc2+: n even >= 2; dc1-: n odd >= 1; dc2-: n odd >= 3)");
        }
    }

    /// Parses "dc1+", "dc2-", ... as used on the command line.
    static DoubleCosetFamily parse(const std::string& name, int n, const GaloisField& field) {
        if (name.size() != 4 || name.compare(0, 2, "dc") != 0 || (name[2] != '1' && name[2] != '2') ||
            (name[3] != '+' && name[3] != '-')) {
            throw ParameterError("unknown family '" + name + "' (expected dc1+, dc1-, dc2+ or dc2-)");
        }
        return DoubleCosetFamily(name[2] - '0', name[3] == '+' ? Sign::plus : Sign::minus, n, field);
    }

    int index() const { return index_; }
    Sign sign() const { return sign_; }
    int n() const { return n_; }
    const GaloisField& field() const { return field_; }
    std::uint64_t q() const { return field_.order(); }
    int sigma_index() const { return index_ == 1 ? n_ - 1 : n_ - 2; }

    std::string name() const { return "dc" + std::to_string(index_) + (sign_ == Sign::plus ? "+" : "-"); }
    std::string label() const { return name() + "(n=" + std::to_string(n_) + ",q=" + std::to_string(q()) + ")"; }

  private:
    int index_;
    Sign sign_;
    int n_;
    GaloisField field_;
};

struct FamilyConstants {
    BigInt a;
    Rational b;  ///< not always integral (e.g. B_1-(3,q) = (q^2-1)(q^3-1)/q)
    BigInt n;    ///< code length |DC| = A B
};

/// A_i^pm, B_i^pm and N_i^pm = A B.
inline FamilyConstants family_constants(const DoubleCosetFamily& fam) {
    const std::uint64_t q = fam.q();
    const BigInt qq = q;
    const long n = fam.n();
    auto prod_odd = [&](long top) {  // prod_{j=1}^{top} (q^{2j-1} - 1)
        BigInt p = 1;
        for (long j = 1; j <= top; ++j) p *= ipow(qq, static_cast<unsigned>(2 * j - 1)) - 1;
        return p;
    };
    auto prod_even = [&](long top) {  // prod_{j=1}^{top} (q^{2j} - 1)
        BigInt p = 1;
        for (long j = 1; j <= top; ++j) p *= ipow(qq, static_cast<unsigned>(2 * j)) - 1;
        return p;
    };
    const BigInt qn = ipow(qq, static_cast<unsigned>(n));
    Rational a, b;
    if (fam.sign() == Sign::plus && fam.index() == 1) {
        a = qpow(q, (5 * n * n - 6 * n) / 4) * Rational(q_binomial(q, n, 1) * prod_odd(n / 2));
        b = qpow(q, (n - 2) * (n - 2) / 4) * Rational(prod_even(n / 2));
    } else if (fam.sign() == Sign::plus) {
        a = qpow(q, (5 * n * n - 6 * n) / 4) * Rational(q_binomial(q, n, 2) * prod_odd((n - 2) / 2));
        b = qpow(q, (n * n - 8 * n + 12) / 4) *
            Rational((ipow(qq, static_cast<unsigned>(n - 1)) - 1) * (qn - 1) * prod_even((n - 2) / 2));
    } else if (fam.index() == 1) {
        a = qpow(q, (5 * n * n - 4 * n - 1) / 4) * Rational(q_binomial(q, n, 1) * prod_odd((n - 1) / 2));
        b = qpow(q, (n * n - 6 * n + 5) / 4) * Rational((qn - 1) * prod_even((n - 1) / 2));
    } else {
        a = qpow(q, (5 * n * n - 8 * n + 3) / 4) * Rational(q_binomial(q, n, 2) * prod_odd((n - 1) / 2));
        b = qpow(q, (n - 3) * (n - 3) / 4) * Rational((qn - 1) * prod_even((n - 1) / 2));
    }
    FamilyConstants out;
    out.a = to_integer(a, "A constant of " + fam.label());
    out.b = b;
    out.n = to_integer(a * b, "code length of " + fam.label());
    return out;
}

/// Materializes the double coset of a family (enumerable instances only).
inline BruhatCell materialize(const DoubleCosetFamily& fam) {
    require_enumerable(fam.field(), fam.n());
    return bruhat_cell(fam.field(), fam.n(), fam.sigma_index());
}

// ---------------------------------------------------------------------------
// Trace multiplicities

/// beta -> N_DC(beta), indexed by beta's bits.
struct TraceMultiplicityMap {
    GaloisField field;
    std::vector<BigInt> counts;

    BigInt total() const {
        BigInt t = 0;
        for (const BigInt& c : counts) t += c;
        return t;
    }
    /// sum_beta N(beta) beta in F_q; only the parity of N(beta) matters.
    Bits weighted_sum() const {
        Bits s = 0;
        for (std::size_t b = 0; b < counts.size(); ++b)
            if (boost::multiprecision::bit_test(counts[b], 0)) s ^= static_cast<Bits>(b);
        return s;
    }
    friend bool operator==(const TraceMultiplicityMap& x, const TraceMultiplicityMap& y) {
        return x.field == y.field && x.counts == y.counts;
    }
};

enum class CountMode { formula, brute_force };

/// Closed forms: with c = N + A X over q,
///   i = 1: X = 1 (beta = 0), q + 1 (tr(1/beta) = 0), -q + 1 (tr(1/beta) = 1);
///   i = 2: X = q^3 - q^2 - 1 (beta = 0), q K(lambda; 1/beta) - q^2 - 1 (beta != 0).
inline TraceMultiplicityMap trace_multiplicities_formula(const DoubleCosetFamily& fam) {
    const auto k = family_constants(fam);
    const GaloisField& f = fam.field();
    const BigInt q = f.order();
    std::vector<std::int64_t> kl;
    if (fam.index() == 2) kl = kloosterman_table(f);
    TraceMultiplicityMap out{f, std::vector<BigInt>(f.order(), 0)};
    for (std::uint32_t beta = 0; beta < f.order(); ++beta) {
        BigInt x;
        if (fam.index() == 1) {
            if (beta == 0) x = 1;
            else x = f.trace_raw(f.inv_raw(static_cast<Bits>(beta))) ? 1 - q : q + 1;
        } else {
            if (beta == 0) x = q * q * q - q * q - 1;
            else x = q * kl[f.inv_raw(static_cast<Bits>(beta))] - q * q - 1;
        }
        out.counts[beta] = exact_div(k.n + k.a * x, q, "N(beta) for " + fam.label());
        if (out.counts[beta] < 0) throw ConsistencyError("negative trace multiplicity for " + fam.label());
    }
    return out;
}

inline TraceMultiplicityMap trace_multiplicities(const BruhatCell& cell) {
    TraceMultiplicityMap out{cell.field(), {}};
    for (std::uint64_t c : cell.trace_histogram()) out.counts.emplace_back(c);
    return out;
}

inline TraceMultiplicityMap trace_multiplicities(const DoubleCosetFamily& fam, CountMode mode) {
    if (mode == CountMode::formula) return trace_multiplicities_formula(fam);
    return trace_multiplicities(materialize(fam));
}

/// q N(beta) = |cell| + sum_{a != 0} lambda(a beta) sum_{w in cell} lambda(a Tr w), for every beta.
inline Report verify_trace_count_bridge(const BruhatCell& cell) {
    const GaloisField& f = cell.field();
    const auto hist = cell.trace_histogram();
    std::vector<std::int64_t> expsum(f.order(), 0);
    for (FieldElement a : f.nonzero_elements()) expsum[a.bits()] = static_cast<std::int64_t>(exp_sum_cell_brute_force(cell, a));
    Report rep;
    for (std::uint32_t beta = 0; beta < f.order(); ++beta) {
        std::int64_t rhs = static_cast<std::int64_t>(cell.size());
        for (std::uint32_t a = 1; a < f.order(); ++a)
            rhs += f.lambda_raw(f.mul_raw(static_cast<Bits>(a), static_cast<Bits>(beta))) * expsum[a];
        rep.expect_eq("coset_codes.trace_count_bridge",
                      "q=" + std::to_string(f.order()) + ",n=" + std::to_string(cell.n()) + ",r=" + std::to_string(cell.r()) +
                          ",beta=" + f.element(beta).hex(),
                      static_cast<std::int64_t>(f.order() * hist[beta]), rhs);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Dual codewords and weights

using BitVector = std::vector<std::uint8_t>;

/// c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) over the cell in canonical order.
inline BitVector dual_codeword(const BruhatCell& cell, FieldElement a) {
    const GaloisField& f = cell.field();
    if (!f.contains(a)) throw ParameterError("dual codeword: a from a different field");
    BitVector out(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i)
        out[i] = static_cast<std::uint8_t>(f.trace_raw(f.mul_raw(static_cast<Bits>(a.bits()), cell.trace(i))));
    return out;
}

inline BitVector dual_codeword(const DoubleCosetFamily& fam, FieldElement a) { return dual_codeword(materialize(fam), a); }

/// {a in F_q : c(a) = 0}, from explicit codewords.
inline std::vector<FieldElement> dual_kernel(const BruhatCell& cell) {
    std::vector<FieldElement> out;
    for (FieldElement a : cell.field().elements()) {
        const BitVector c = dual_codeword(cell, a);
        if (std::all_of(c.begin(), c.end(), [](std::uint8_t b) { return b == 0; })) out.push_back(a);
    }
    return out;
}

/// {a : tr(a beta) = 0 whenever N(beta) > 0}, from a trace multiplicity map.
inline std::vector<FieldElement> dual_kernel(const TraceMultiplicityMap& m) {
    const GaloisField& f = m.field;
    std::vector<FieldElement> out;
    for (FieldElement a : f.elements()) {
        bool zero = true;
        for (std::uint32_t beta = 0; beta < f.order() && zero; ++beta)
            if (m.counts[beta] > 0 && f.trace_raw(f.mul_raw(static_cast<Bits>(a.bits()), static_cast<Bits>(beta)))) zero = false;
        if (zero) out.push_back(a);
    }
    return out;
}

/// Whether a -> c(a) is injective according to the known regimes:
/// dc1+ always; dc2+ for n >= 4 or q >= 4; dc1- for n >= 3 or q >= 8; dc2- always.
inline bool injective_expected(const DoubleCosetFamily& fam) {
    if (fam.index() == 1 && fam.sign() == Sign::plus) return true;
    if (fam.index() == 2 && fam.sign() == Sign::plus) return fam.n() >= 4 || fam.q() >= 4;
    if (fam.index() == 1) return fam.n() >= 3 || fam.q() >= 8;
    return true;
}

/// F_2-dimension of the dual code: r minus the dimension of the kernel of a -> c(a).
inline int dual_dimension(const GaloisField& f, std::size_t kernel_size) {
    int k = 0;
    while ((std::size_t{1} << k) < kernel_size) ++k;
    return f.degree() - k;
}

enum class WeightMode {
    direct,      ///< Hamming weight of the explicit codeword
    formula,     ///< A (B - K) / 2 for i = 1; A (B - q^2 + q - K^2) / 2 for i = 2
    formula_k2,  ///< i = 2 only: A (B - q^2 - K_2) / 2
};

inline BigInt hamming_weight(const BitVector& v) {
    std::uint64_t w = 0;
    for (std::uint8_t b : v) w += b;
    return w;
}

inline BigInt dual_weight_formula(const DoubleCosetFamily& fam, FieldElement a, WeightMode mode = WeightMode::formula) {
    const GaloisField& f = fam.field();
    detail::require_nonzero(a, "dual weight parameter a");
    const auto k = family_constants(fam);
    const BigInt q = f.order();
    BigInt twice;
    if (fam.index() == 1) {
        if (mode == WeightMode::formula_k2) throw ParameterError("K_2 weight form applies to i = 2 families only");
        twice = k.n - k.a * kloosterman(f, a);
    } else if (mode == WeightMode::formula_k2) {
        twice = k.n - k.a * q * q - k.a * kloosterman(f, a, 2);
    } else {
        const BigInt kl = kloosterman(f, a);
        twice = k.n - k.a * (q * q - q) - k.a * kl * kl;
    }
    return exact_div(twice, 2, "dual weight of " + fam.label());
}

inline BigInt dual_weight(const DoubleCosetFamily& fam, FieldElement a, WeightMode mode) {
    if (mode == WeightMode::direct) {
        detail::require_nonzero(a, "dual weight parameter a");
        return hamming_weight(dual_codeword(fam, a));
    }
    return dual_weight_formula(fam, a, mode);
}

// ---------------------------------------------------------------------------
// Weight distributions

/// Largest code length for a full distribution, and largest truncation degree.
inline constexpr long kDistributionBudget = 10'000;

/// C_0..C_J of a code of length N (J = N when complete).
struct WeightDistribution {
    BigInt length;
    std::vector<BigInt> coefficients;

    bool complete() const { return BigInt(coefficients.size()) == length + 1; }
    BigInt total() const {
        BigInt t = 0;
        for (const BigInt& c : coefficients) t += c;
        return t;
    }
    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

namespace detail {

using Poly = std::vector<BigInt>;

inline void add_product(Poly& acc, const Poly& a, const Poly& b, std::size_t degree_cap) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= degree_cap; ++j) {
            if (b[j] == 0) continue;
            acc[i + j] += a[i] * b[j];
        }
    }
}

}  // namespace detail

/// C_j for j <= max_degree (all j when unset) by dynamic programming over
/// (weight j, partial sum s in F_q), one trace class beta at a time. Choosing nu
/// of the N(beta) positions contributes nu * beta = beta * (nu mod 2), so each
/// class splits into an even-nu and an odd-nu binomial polynomial.
inline WeightDistribution weight_distribution(const TraceMultiplicityMap& m, std::optional<long> max_degree = {}) {
    const BigInt length = m.total();
    BigInt cap_big = length;
    if (max_degree) {
        if (*max_degree < 0) throw ParameterError("weight index must be >= 0");
        if (BigInt(*max_degree) < cap_big) cap_big = *max_degree;
    }
    if (cap_big > kDistributionBudget) {
        throw ResourceError("weight distribution up to degree " + cap_big.str() + " exceeds the budget of " +
                            std::to_string(kDistributionBudget) + "; query single coefficients instead");
    }
    const std::size_t cap = static_cast<std::size_t>(cap_big);
    const std::size_t q = m.field.order();

    std::vector<detail::Poly> state(q, detail::Poly(cap + 1, 0));
    state[0][0] = 1;
    for (std::size_t beta = 0; beta < q; ++beta) {
        const BigInt& count = m.counts[beta];
        if (count == 0) continue;
        detail::Poly even(cap + 1, 0), odd(cap + 1, 0);
        for (std::size_t nu = 0; nu <= cap && BigInt(nu) <= count; ++nu)
            (nu % 2 ? odd : even)[nu] = binomial(count, static_cast<long>(nu));
        std::vector<detail::Poly> next(q, detail::Poly(cap + 1, 0));
        for (std::size_t s = 0; s < q; ++s) {
            detail::add_product(next[s], state[s], even, cap);
            detail::add_product(next[s], state[s ^ beta], odd, cap);
        }
        state = std::move(next);
    }
    return WeightDistribution{length, std::move(state[0])};
}

/// Single coefficient C_j.
inline BigInt weight_coefficient(const TraceMultiplicityMap& m, long j) {
    if (j < 0 || BigInt(j) > m.total()) return 0;
    return weight_distribution(m, j).coefficients.at(static_cast<std::size_t>(j));
}

/// Krawtchouk value: coefficient of x^j in (1 + x)^{N - w} (1 - x)^w.
inline BigInt krawtchouk(long length, long w, long j) {
    BigInt out = 0;
    for (long i = 0; i <= j && i <= w; ++i) {
        BigInt t = binomial(BigInt(w), i) * binomial(BigInt(length - w), j - i);
        if (i % 2) out -= t;
        else out += t;
    }
    return out;
}

/// Weight distribution of a binary code from a list of its dual's codeword weights,
/// where each dual codeword may appear with a uniform multiplicity (dual_weights.size()
/// is the number of listed words): C_j = (1/|list|) sum_w K_j(w).
inline WeightDistribution macwilliams_transform(const std::vector<long>& dual_weights, long length) {
    if (length > kDistributionBudget) throw ResourceError("MacWilliams transform length exceeds budget");
    std::vector<long> sorted = dual_weights;
    std::sort(sorted.begin(), sorted.end());
    std::vector<BigInt> c(static_cast<std::size_t>(length) + 1, 0);
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t k = i;
        while (k < sorted.size() && sorted[k] == sorted[i]) ++k;
        const BigInt mult = static_cast<long>(k - i);
        for (long j = 0; j <= length; ++j) c[static_cast<std::size_t>(j)] += mult * krawtchouk(length, sorted[i], j);
        i = k;
    }
    const BigInt size = static_cast<long>(dual_weights.size());
    for (auto& x : c) x = exact_div(x, size, "MacWilliams transform");
    return WeightDistribution{length, std::move(c)};
}

/// Distribution of C(DC) from the closed-form dual weights of all q codewords c(a).
inline WeightDistribution weight_distribution_macwilliams(const DoubleCosetFamily& fam) {
    const auto k = family_constants(fam);
    if (k.n > kDistributionBudget) throw ResourceError("code length exceeds the MacWilliams budget");
    std::vector<long> weights{0};
    for (FieldElement a : fam.field().nonzero_elements()) weights.push_back(static_cast<long>(dual_weight_formula(fam, a)));
    return macwilliams_transform(weights, static_cast<long>(k.n));
}

/// Distribution of the dual code {c(a)} from closed-form weights, counting each
/// distinct codeword once (kernel_size copies of each appear as a ranges over F_q).
inline WeightDistribution dual_distribution(const DoubleCosetFamily& fam, std::size_t kernel_size) {
    const auto k = family_constants(fam);
    if (k.n > kDistributionBudget) throw ResourceError("code length exceeds the distribution budget");
    std::vector<BigInt> c(static_cast<std::size_t>(k.n) + 1, 0);
    c[0] += 1;
    for (FieldElement a : fam.field().nonzero_elements()) c[static_cast<std::size_t>(dual_weight_formula(fam, a))] += 1;
    for (auto& x : c) x = exact_div(x, kernel_size, "dual distribution");
    return WeightDistribution{k.n, std::move(c)};
}

// ---------------------------------------------------------------------------
// Pless power moment identity (binary alphabet)

/// sum_j j^h B_j  =  sum_{j <= min(n,h)} (-1)^j Bperp_j sum_{t=j}^{h} t! S(h,t) 2^{k-t} binom(n-j, n-t)
/// for a binary [n, k] code B with dual Bperp.
inline Report pless_check(const WeightDistribution& code, const WeightDistribution& dual, int k, unsigned h) {
    if (code.length != dual.length) throw ParameterError("Pless identity: code and dual lengths differ");
    if (!code.complete()) throw ParameterError("Pless identity needs the complete code distribution");
    const BigInt n = code.length;
    Rational lhs = 0;
    for (std::size_t j = 0; j < code.coefficients.size(); ++j) lhs += Rational(ipow(BigInt(j), h) * code.coefficients[j]);
    Rational rhs = 0;
    for (unsigned j = 0; j <= h && BigInt(j) <= n; ++j) {
        if (j >= dual.coefficients.size()) throw ParameterError("Pless identity: dual distribution too short");
        Rational inner = 0;
        for (unsigned t = j; t <= h; ++t) {
            inner += Rational(factorial(t) * stirling2(h, t) * binomial(n - j, static_cast<long>(t - j))) *
                     qpow(2, static_cast<long>(k) - static_cast<long>(t));
        }
        rhs += (j % 2 ? -1 : 1) * Rational(dual.coefficients[j]) * inner;
    }
    Report rep;
    rep.expect_eq("coset_codes.pless", "n=" + n.str() + ",k=" + std::to_string(k) + ",h=" + std::to_string(h), lhs, rhs);
    return rep;
}

}  // namespace kloo
