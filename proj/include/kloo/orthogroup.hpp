#pragma once

// O+(2n, q) for q = 2^r: the hyperbolic quadratic form, group membership,
// the maximal parabolic P+ = {[A AB; 0 tA^-1] : A in GL(n,q), B alternating},
// its Bruhat double cosets P+ sigma_r P+, the subgroups A_r+, and the order
// formulas that tie them together.
//
// Group elements of the enumerable instances are kept as 64-bit packed keys
// (see pack()); sorting the keys gives the canonical element order.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"
#include "kloo/charsums.hpp"
#include "kloo/errors.hpp"
#include "kloo/field.hpp"
#include "kloo/matrix.hpp"
#include "kloo/report.hpp"

namespace kloo {

/// Cap on |P+(2n,q)|^2, the number of products formed when materializing a cell.
inline constexpr std::uint64_t kProductBudget = 10'000'000;
/// Cap on q^{(2n)^2} for an exhaustive scan of all 2n x 2n matrices.
inline constexpr std::uint64_t kScanBudget = std::uint64_t{1} << 20;

/// theta+(x) = sum_{i<n} x_i x_{n+i} on a column vector of even length 2n.
inline Bits theta_plus(const GaloisField& f, std::span<const Bits> v) {
    if (v.size() % 2 != 0 || v.empty()) throw ParameterError("theta+ needs a vector of even length 2n >= 2");
    const std::size_t n = v.size() / 2;
    Bits out = 0;
    for (std::size_t i = 0; i < n; ++i) out ^= f.mul_raw(v[i], v[n + i]);
    return out;
}

inline FieldElement theta_plus(const GaloisField& f, const std::vector<FieldElement>& v) {
    std::vector<Bits> raw;
    raw.reserve(v.size());
    for (FieldElement x : v) {
        if (!f.contains(x)) throw ParameterError("theta+: vector entry from a different field");
        raw.push_back(static_cast<Bits>(x.bits()));
    }
    return f.element(theta_plus(f, raw));
}

inline std::vector<Bits> apply(const GaloisField& f, const MatrixGF& m, std::span<const Bits> v) {
    std::vector<Bits> out(v.size(), 0);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out[static_cast<std::size_t>(i)] ^= f.mul_raw(m(i, j), v[static_cast<std::size_t>(j)]);
    return out;
}

/// Block test: with M = [A B; C D], tA C and tB D alternating and tA D + tC B = 1.
/// These conditions force tM J M = J, so M is automatically invertible.
inline bool is_in_oplus(const GaloisField& f, const MatrixGF& m) {
    if (m.dim() % 2 != 0 || m.dim() == 0) return false;
    const int n = m.dim() / 2;
    const MatrixGF a = m.block(0, 0, n), b = m.block(0, n, n), c = m.block(n, 0, n), d = m.block(n, n, n);
    const MatrixGF ta = transpose(a), tb = transpose(b), tc = transpose(c);
    return is_alternating(multiply(f, ta, c)) && is_alternating(multiply(f, tb, d)) &&
           add(multiply(f, ta, d), multiply(f, tc, b)) == MatrixGF::identity(n);
}

/// Equivalent block test on the transpose: A tB and C tD alternating and A tD + B tC = 1.
inline bool is_in_oplus_transposed_form(const GaloisField& f, const MatrixGF& m) {
    if (m.dim() % 2 != 0 || m.dim() == 0) return false;
    const int n = m.dim() / 2;
    const MatrixGF a = m.block(0, 0, n), b = m.block(0, n, n), c = m.block(n, 0, n), d = m.block(n, n, n);
    const MatrixGF tb = transpose(b), tc = transpose(c), td = transpose(d);
    return is_alternating(multiply(f, a, tb)) && is_alternating(multiply(f, c, td)) &&
           add(multiply(f, a, td), multiply(f, b, tc)) == MatrixGF::identity(n);
}

/// theta+(M v) = theta+(v) for every v in F_q^{2n}, checked exhaustively.
inline bool is_isometry(const GaloisField& f, const MatrixGF& m) {
    const std::size_t len = static_cast<std::size_t>(m.dim());
    if (len % 2 != 0 || len == 0) return false;
    std::vector<Bits> v(len, 0);
    const std::uint32_t q = f.order();
    while (true) {
        if (theta_plus(f, apply(f, m, v)) != theta_plus(f, v)) return false;
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++v[pos] < q) break;
            v[pos] = 0;
            if (pos == 0) return true;
        }
    }
}

/// sigma_r+ : swaps e^i and e^{n+i} for i < r, fixes the rest.
inline MatrixGF sigma(int n, int r) {
    if (n < 1 || r < 0 || r > n) throw ParameterError("sigma_r needs 0 <= r <= n, n >= 1");
    MatrixGF m(2 * n);
    for (int i = 0; i < n; ++i) {
        if (i < r) {
            m(i, n + i) = 1;
            m(n + i, i) = 1;
        } else {
            m(i, i) = 1;
            m(n + i, n + i) = 1;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Order formulas

struct GroupCounts {
    std::uint64_t q = 0;
    int n = 0;
    std::vector<BigInt> g;            ///< |GL(t,q)| for t = 0..n
    std::vector<BigInt> q_binomials;  ///< [n r]_q for r = 0..n
    std::vector<BigInt> s;            ///< nonsingular symmetric r x r matrices, r = 0..n
    std::vector<BigInt> a_r;          ///< |A_r+|
    std::vector<BigInt> cosets;       ///< |A_r+ \ P+|
    std::vector<BigInt> cells;        ///< |P+ sigma_r P+|
    BigInt parabolic;                 ///< |P+(2n,q)|
    BigInt group_order;               ///< 2 q^{n^2-n} (q^n - 1) prod_{j<n} (q^{2j} - 1)
    BigInt group_order_from_cells;    ///< sum_r |P+|^2 / |A_r+|
    Report identities;
};

/// Number of r x r nonsingular symmetric matrices over F_q (s_0 = 1).
inline BigInt nonsingular_symmetric_count(std::uint64_t q, int r) {
    if (r == 0) return 1;
    const BigInt qq = q;
    BigInt out = 1;
    if (r % 2 == 0) {
        out = ipow(qq, static_cast<unsigned>(r * (r + 2) / 4));
        for (int j = 1; j <= r / 2; ++j) out *= ipow(qq, static_cast<unsigned>(2 * j - 1)) - 1;
    } else {
        out = ipow(qq, static_cast<unsigned>((r * r - 1) / 4));
        for (int j = 1; j <= (r + 1) / 2; ++j) out *= ipow(qq, static_cast<unsigned>(2 * j - 1)) - 1;
    }
    return out;
}

inline BigInt parabolic_order(std::uint64_t q, int n) {
    return ipow(BigInt(q), static_cast<unsigned>(choose2(n))) * gl_order(q, static_cast<unsigned>(n));
}

/// |A_r+| = g_r g_{n-r} q^{C(n,2)} q^{r(2n-3r+1)/2}; the last exponent can be negative.
inline BigInt a_r_order(std::uint64_t q, int n, int r) {
    const Rational v = Rational(gl_order(q, static_cast<unsigned>(r)) * gl_order(q, static_cast<unsigned>(n - r))) *
                       qpow(q, choose2(n)) * qpow(q, static_cast<long>(r) * (2 * n - 3 * r + 1) / 2);
    return to_integer(v, "|A_r+|");
}

/// |P+ sigma_r P+| = q^{C(n,2)} g_n [n r]_q q^{C(r,2)}.
inline BigInt cell_order(std::uint64_t q, int n, int r) {
    return parabolic_order(q, n) * q_binomial(q, n, r) * ipow(BigInt(q), static_cast<unsigned>(choose2(r)));
}

inline BigInt oplus_order(std::uint64_t q, int n) {
    const BigInt qq = q;
    BigInt out = 2 * ipow(qq, static_cast<unsigned>(n * n - n)) * (ipow(qq, static_cast<unsigned>(n)) - 1);
    for (int j = 1; j < n; ++j) out *= ipow(qq, static_cast<unsigned>(2 * j)) - 1;
    return out;
}

inline GroupCounts group_counts(std::uint64_t q, int n) {
    if (n < 1) throw ParameterError("group counts need n >= 1");
    if (q < 2 || (q & (q - 1))) throw ParameterError("q must be a power of two");
    GroupCounts gc;
    gc.q = q;
    gc.n = n;
    const BigInt qq = q;
    for (int t = 0; t <= n; ++t) gc.g.push_back(gl_order(q, static_cast<unsigned>(t)));
    gc.parabolic = parabolic_order(q, n);
    const std::string params = "q=" + std::to_string(q) + ",n=" + std::to_string(n);
    BigInt qbin_sum = 0;
    for (int r = 0; r <= n; ++r) {
        gc.q_binomials.push_back(q_binomial(q, n, r));
        gc.s.push_back(nonsingular_symmetric_count(q, r));
        gc.a_r.push_back(a_r_order(q, n, r));
        gc.cosets.push_back(gc.q_binomials.back() * ipow(qq, static_cast<unsigned>(choose2(r))));
        gc.cells.push_back(cell_order(q, n, r));
        qbin_sum += gc.cosets.back();

        const std::string pr = params + ",r=" + std::to_string(r);
        // g_n / (g_{n-r} g_r) = q^{r(n-r)} [n r]_q
        gc.identities.expect_eq("orthogroup.gl_ratio", pr, gc.g[static_cast<std::size_t>(n)],
                                gc.g[static_cast<std::size_t>(n - r)] * gc.g[static_cast<std::size_t>(r)] *
                                    ipow(qq, static_cast<unsigned>(r * (n - r))) * gc.q_binomials.back());
        gc.identities.expect_eq("orthogroup.coset_index", pr, gc.cosets.back(),
                                exact_div(gc.parabolic, gc.a_r.back(), "|A_r \\ P|"));
        gc.identities.expect_eq("orthogroup.cell_order", pr, gc.cells.back(),
                                exact_div(gc.parabolic * gc.parabolic, gc.a_r.back(), "|P sigma_r P|"));
    }
    gc.group_order = oplus_order(q, n);
    gc.group_order_from_cells = 0;
    for (const BigInt& c : gc.cells) gc.group_order_from_cells += c;
    gc.identities.expect_eq("orthogroup.group_order", params, gc.group_order, gc.group_order_from_cells);

    // q-binomial theorem at x = -1: sum_r [n r]_q q^{C(r,2)} = (-1; q)_n = prod_{i<n} (1 + q^i).
    BigInt poch = 1;
    for (int i = 0; i < n; ++i) poch *= 1 + ipow(qq, static_cast<unsigned>(i));
    gc.identities.expect_eq("orthogroup.q_binomial_theorem", params, poch, qbin_sum);
    gc.identities.expect_eq("orthogroup.group_order_factored", params, gc.group_order, gc.parabolic * poch);
    return gc;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Throws ResourceError unless P+(2n,q) cells can be materialized.
inline void require_enumerable(const GaloisField& f, int n) {
    if (n < 1) throw ParameterError("n must be >= 1");
    const BigInt p = parabolic_order(f.order(), n);
    if (p * p > kProductBudget || !packable(2 * n, f.degree())) {
        throw ResourceError("|P+(" + std::to_string(2 * n) + "," + std::to_string(f.order()) + ")|^2 = " + (p * p).str() +
                            " exceeds the enumeration budget " + std::to_string(kProductBudget));
    }
}

inline bool is_enumerable(const GaloisField& f, int n) {
    if (n < 1) return false;
    const BigInt p = parabolic_order(f.order(), n);
    return p * p <= kProductBudget && packable(2 * n, f.degree());
}

/// All alternating n x n matrices (zero diagonal, symmetric).
inline std::vector<MatrixGF> alternating_matrices(const GaloisField& f, int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<MatrixGF> out;
    std::vector<std::uint32_t> digits(slots.size(), 0);
    const std::uint32_t q = f.order();
    while (true) {
        MatrixGF m(n);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            m(slots[s].first, slots[s].second) = static_cast<Bits>(digits[s]);
            m(slots[s].second, slots[s].first) = static_cast<Bits>(digits[s]);
        }
        out.push_back(std::move(m));
        std::size_t pos = digits.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < q) {
                done = false;
                break;
            }
            digits[pos] = 0;
        }
        if (done) return out;
    }
}

/// P+(2n, q) in canonical (sorted) order.
inline std::vector<MatrixGF> enumerate_parabolic(const GaloisField& f, int n) {
    require_enumerable(f, n);
    const auto gl = enumerate_gl(f, n, kProductBudget);
    const auto alt = alternating_matrices(f, n);
    const MatrixGF zero(n);
    std::vector<MatrixGF> out;
    out.reserve(gl.size() * alt.size());
    for (const MatrixGF& a : gl) {
        const MatrixGF tainv = transpose(inverse(f, a));
        for (const MatrixGF& b : alt) out.push_back(MatrixGF::from_blocks(a, multiply(f, a, b), zero, tainv));
    }
    std::sort(out.begin(), out.end(), [&](const MatrixGF& x, const MatrixGF& y) {
        return pack(x, f.degree()) < pack(y, f.degree());
    });
    return out;
}

/// A materialized double coset P+ sigma_r P+.
class BruhatCell {
  public:
    BruhatCell(GaloisField field, int n, int r, std::vector<std::uint64_t> sorted_keys)
        : field_(std::move(field)), n_(n), r_(r), keys_(std::move(sorted_keys)) {}

    const GaloisField& field() const { return field_; }
    int n() const { return n_; }
    int r() const { return r_; }
    std::size_t size() const { return keys_.size(); }
    const std::vector<std::uint64_t>& keys() const { return keys_; }

    MatrixGF element(std::size_t i) const { return unpack(keys_[i], 2 * n_, field_.degree()); }
    std::vector<MatrixGF> matrices() const {
        std::vector<MatrixGF> out;
        out.reserve(keys_.size());
        for (std::size_t i = 0; i < keys_.size(); ++i) out.push_back(element(i));
        return out;
    }
    bool contains(const MatrixGF& m) const {
        return m.dim() == 2 * n_ && std::binary_search(keys_.begin(), keys_.end(), pack(m, field_.degree()));
    }

    /// Tr g_i for the i-th element in canonical order.
    Bits trace(std::size_t i) const { return trace_of_key(keys_[i]); }

    /// Traces of all elements in canonical order.
    std::vector<Bits> traces() const {
        std::vector<Bits> out(keys_.size());
        for (std::size_t i = 0; i < keys_.size(); ++i) out[i] = trace_of_key(keys_[i]);
        return out;
    }

    /// N(beta) = #{w in cell : Tr w = beta}, indexed by beta's bits.
    std::vector<std::uint64_t> trace_histogram() const {
        std::vector<std::uint64_t> h(field_.order(), 0);
        for (std::uint64_t k : keys_) ++h[trace_of_key(k)];
        return h;
    }

  private:
    Bits trace_of_key(std::uint64_t key) const {
        const int dim = 2 * n_, r = field_.degree();
        const std::uint64_t mask = (std::uint64_t{1} << r) - 1;
        Bits t = 0;
        for (int i = 0; i < dim; ++i) {
            const int shift = (dim * dim - 1 - (i * dim + i)) * r;
            t ^= static_cast<Bits>((key >> shift) & mask);
        }
        return t;
    }

    GaloisField field_;
    int n_, r_;
    std::vector<std::uint64_t> keys_;
};

namespace detail {

/// Row-scaling tables for fast packed products. For a right factor p and scalar c,
/// scaled[(k * q + c)] is row k of p times c, packed into dim*r bits. A packed row of
/// x * p is then the XOR of scaled[k][x_k], since addition is XOR on the packing.
struct PackedRight {
    std::vector<std::uint64_t> scaled;
};

inline PackedRight pack_right(const GaloisField& f, const MatrixGF& p) {
    const int dim = p.dim(), r = f.degree();
    const std::uint32_t q = f.order();
    PackedRight out;
    out.scaled.resize(static_cast<std::size_t>(dim) * q);
    for (int k = 0; k < dim; ++k)
        for (std::uint32_t c = 0; c < q; ++c) {
            std::uint64_t row = 0;
            for (int j = 0; j < dim; ++j) row = (row << r) | f.mul_raw(static_cast<Bits>(c), p(k, j));
            out.scaled[static_cast<std::size_t>(k) * q + c] = row;
        }
    return out;
}

inline std::uint64_t packed_product(const MatrixGF& left, const PackedRight& right, std::uint32_t q, int r) {
    const int dim = left.dim();
    std::uint64_t key = 0;
    for (int i = 0; i < dim; ++i) {
        std::uint64_t row = 0;
        for (int k = 0; k < dim; ++k) row ^= right.scaled[static_cast<std::size_t>(k) * q + left(i, k)];
        key = (key << (dim * r)) | row;
    }
    return key;
}

}  // namespace detail

/// Deduplicated {p1 sigma_r p2 : p1, p2 in P+}, in canonical order.
inline BruhatCell bruhat_cell(const GaloisField& f, int n, int r, const std::vector<MatrixGF>& parabolic) {
    if (r < 0 || r > n) throw ParameterError("cell index r must satisfy 0 <= r <= n");
    const MatrixGF s = sigma(n, r);
    std::vector<detail::PackedRight> rights;
    rights.reserve(parabolic.size());
    for (const MatrixGF& p : parabolic) rights.push_back(detail::pack_right(f, p));
    std::vector<std::uint64_t> keys;
    keys.reserve(parabolic.size() * parabolic.size());
    for (const MatrixGF& p1 : parabolic) {
        const MatrixGF left = multiply(f, p1, s);
        for (const auto& right : rights) keys.push_back(detail::packed_product(left, right, f.order(), f.degree()));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return BruhatCell(f, n, r, std::move(keys));
}

inline BruhatCell bruhat_cell(const GaloisField& f, int n, int r) {
    return bruhat_cell(f, n, r, enumerate_parabolic(f, n));
}

/// A_r+ = {w in P+ : sigma_r w sigma_r^{-1} in P+}, in canonical order.
inline std::vector<MatrixGF> a_r_subgroup(const GaloisField& f, int n, int r, const std::vector<MatrixGF>& parabolic) {
    const MatrixGF s = sigma(n, r);
    const MatrixGF sinv = inverse(f, s);
    std::vector<std::uint64_t> pkeys;
    pkeys.reserve(parabolic.size());
    for (const MatrixGF& p : parabolic) pkeys.push_back(pack(p, f.degree()));
    std::vector<MatrixGF> out;
    for (const MatrixGF& w : parabolic) {
        const MatrixGF conj = multiply(f, multiply(f, s, w), sinv);
        if (std::binary_search(pkeys.begin(), pkeys.end(), pack(conj, f.degree()))) out.push_back(w);
    }
    return out;
}

inline std::vector<MatrixGF> a_r_subgroup(const GaloisField& f, int n, int r) {
    return a_r_subgroup(f, n, r, enumerate_parabolic(f, n));
}

/// Every 2n x 2n matrix over F_q passing the block membership test, in canonical order.
inline std::vector<std::uint64_t> scan_oplus(const GaloisField& f, int n) {
    std::uint64_t total = 1;
    for (int i = 0; i < 4 * n * n; ++i) {
        total *= f.order();
        if (total > kScanBudget) throw ResourceError("full matrix scan exceeds budget");
    }
    std::vector<std::uint64_t> out;
    for_each_matrix(f, 2 * n, [&](const MatrixGF& m) {
        if (is_in_oplus(f, m)) out.push_back(pack(m, f.degree()));
    });
    return out;  // counting order is already canonical order
}

// ---------------------------------------------------------------------------
// Exponential sums over cells

/// sum over w in the cell of lambda(c Tr w), by direct summation.
inline BigInt exp_sum_cell_brute_force(const BruhatCell& cell, FieldElement c) {
    const GaloisField& f = cell.field();
    if (!f.contains(c)) throw ParameterError("character scale from a different field");
    detail::require_nonzero(c, "character scale c");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < cell.size(); ++i) sum += f.lambda_raw(f.mul_raw(static_cast<Bits>(c.bits()), cell.trace(i)));
    return sum;
}

/// Closed form for sum over P+ sigma_r P+ of psi(Tr w), psi = lambda(c .):
///   r even: q^{C(n,2)} q^{rn - r^2/4}     [n r]_q prod_{j<=r/2}     (q^{2j-1} - 1) K_{GL(n-r)}(psi; 1)
///   r odd:  q^{C(n,2)} q^{rn - (r+1)^2/4} [n r]_q prod_{j<=(r+1)/2} (q^{2j-1} - 1) K_{GL(n-r)}(psi; 1)
inline BigInt exp_sum_cell_formula(const GaloisField& f, int n, int r, FieldElement c) {
    if (n < 1 || r < 0 || r > n) throw ParameterError("cell index r must satisfy 0 <= r <= n");
    const BigInt qq = f.order();
    const long e = (r % 2 == 0) ? static_cast<long>(r) * n - static_cast<long>(r) * r / 4
                                : static_cast<long>(r) * n - static_cast<long>(r + 1) * (r + 1) / 4;
    const int top = (r % 2 == 0) ? r / 2 : (r + 1) / 2;
    BigInt prod = 1;
    for (int j = 1; j <= top; ++j) prod *= ipow(qq, static_cast<unsigned>(2 * j - 1)) - 1;
    return ipow(qq, static_cast<unsigned>(choose2(n) + e)) * q_binomial(f.order(), n, r) * prod *
           kloosterman_gl_recursive(f, n - r, f.one(), c);
}

/// Gauss sum over O+(2n,q): q^{C(n,2)} sum_r |A_r \ P| q^{r(n-r)} s_r K_{GL(n-r)}(psi; 1).
inline BigInt gauss_sum_oplus(const GaloisField& f, int n, FieldElement c) {
    const std::uint64_t q = f.order();
    const BigInt qq = q;
    BigInt total = 0;
    for (int r = 0; r <= n; ++r) {
        total += q_binomial(q, n, r) * ipow(qq, static_cast<unsigned>(choose2(r) + r * (n - r))) *
                 nonsingular_symmetric_count(q, r) * kloosterman_gl_recursive(f, n - r, f.one(), c);
    }
    return total * ipow(qq, static_cast<unsigned>(choose2(n)));
}

}  // namespace kloo
