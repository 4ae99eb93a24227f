#pragma once

// Square matrices over GF(2^r). Entries are raw element bits; every operation
// takes the field explicitly.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"
#include "kloo/errors.hpp"
#include "kloo/field.hpp"

namespace kloo {

class MatrixGF {
  public:
    MatrixGF() = default;
    explicit MatrixGF(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0) {
        if (dim < 0) throw ParameterError("negative matrix dimension");
    }
    MatrixGF(int dim, std::vector<Bits> entries) : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
            throw ParameterError("matrix entry count does not match dim^2");
        }
    }

    static MatrixGF identity(int dim) {
        MatrixGF m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }

    int dim() const { return dim_; }
    Bits operator()(int i, int j) const { return entries_[idx(i, j)]; }
    Bits& operator()(int i, int j) { return entries_[idx(i, j)]; }
    std::span<const Bits> entries() const { return entries_; }

    FieldElement element(const GaloisField& f, int i, int j) const { return f.element((*this)(i, j)); }

    friend bool operator==(const MatrixGF&, const MatrixGF&) = default;
    friend auto operator<=>(const MatrixGF&, const MatrixGF&) = default;

    /// dim x dim sub-block starting at (row, col).
    MatrixGF block(int row, int col, int size) const {
        MatrixGF out(size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) out(i, j) = (*this)(row + i, col + j);
        return out;
    }

    /// [A B; C D] from four equal square blocks.
    static MatrixGF from_blocks(const MatrixGF& a, const MatrixGF& b, const MatrixGF& c, const MatrixGF& d) {
        const int n = a.dim();
        MatrixGF out(2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                out(i, j) = a(i, j);
                out(i, n + j) = b(i, j);
                out(n + i, j) = c(i, j);
                out(n + i, n + j) = d(i, j);
            }
        return out;
    }

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
    }

    int dim_ = 0;
    std::vector<Bits> entries_;
};

inline MatrixGF multiply(const GaloisField& f, const MatrixGF& a, const MatrixGF& b) {
    if (a.dim() != b.dim()) throw ParameterError("matrix dimension mismatch");
    const int n = a.dim();
    MatrixGF out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Bits aik = a(i, k);
            if (!aik) continue;
            for (int j = 0; j < n; ++j) out(i, j) ^= f.mul_raw(aik, b(k, j));
        }
    return out;
}

inline MatrixGF add(const MatrixGF& a, const MatrixGF& b) {
    if (a.dim() != b.dim()) throw ParameterError("matrix dimension mismatch");
    MatrixGF out = a;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(i, j) ^= b(i, j);
    return out;
}

inline MatrixGF transpose(const MatrixGF& m) {
    MatrixGF out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(j, i) = m(i, j);
    return out;
}

/// Tr M as raw bits (sum of the diagonal in characteristic 2).
inline Bits trace_bits(const MatrixGF& m) {
    Bits t = 0;
    for (int i = 0; i < m.dim(); ++i) t ^= m(i, i);
    return t;
}

/// Symmetric with zero diagonal (alternating in characteristic 2).
inline bool is_alternating(const MatrixGF& m) {
    for (int i = 0; i < m.dim(); ++i) {
        if (m(i, i)) return false;
        for (int j = i + 1; j < m.dim(); ++j)
            if (m(i, j) != m(j, i)) return false;
    }
    return true;
}

inline bool is_symmetric(const MatrixGF& m) { return m == transpose(m); }

inline int rank(const GaloisField& f, MatrixGF m) {
    const int n = m.dim();
    int rk = 0;
    for (int col = 0; col < n && rk < n; ++col) {
        int piv = -1;
        for (int i = rk; i < n; ++i)
            if (m(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(m(rk, j), m(piv, j));
        const Bits s = f.inv_raw(m(rk, col));
        for (int j = 0; j < n; ++j) m(rk, j) = f.mul_raw(s, m(rk, j));
        for (int i = 0; i < n; ++i) {
            if (i == rk || !m(i, col)) continue;
            const Bits c = m(i, col);
            for (int j = 0; j < n; ++j) m(i, j) ^= f.mul_raw(c, m(rk, j));
        }
        ++rk;
    }
    return rk;
}

inline bool is_invertible(const GaloisField& f, const MatrixGF& m) { return rank(f, m) == m.dim(); }

/// Gauss-Jordan inverse; a singular matrix is a DomainError.
inline MatrixGF inverse(const GaloisField& f, const MatrixGF& input) {
    const int n = input.dim();
    MatrixGF m = input;
    MatrixGF inv = MatrixGF::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col)) {
                piv = i;
                break;
            }
        if (piv < 0) throw DomainError("matrix is singular");
        for (int j = 0; j < n; ++j) {
            std::swap(m(col, j), m(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        const Bits s = f.inv_raw(m(col, col));
        for (int j = 0; j < n; ++j) {
            m(col, j) = f.mul_raw(s, m(col, j));
            inv(col, j) = f.mul_raw(s, inv(col, j));
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || !m(i, col)) continue;
            const Bits c = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) ^= f.mul_raw(c, m(col, j));
                inv(i, j) ^= f.mul_raw(c, inv(col, j));
            }
        }
    }
    return inv;
}

/// Row-major hex, ceil(r/4) digits per entry. Equal matrices serialize identically
/// and string order matches entry-tuple order.
inline std::string serialize(const GaloisField& f, const MatrixGF& m) {
    static constexpr char kHex[] = "0123456789abcdef";
    const int width = (f.degree() + 3) / 4;
    std::string out;
    out.reserve(m.entries().size() * static_cast<std::size_t>(width));
    for (Bits e : m.entries())
        for (int d = width - 1; d >= 0; --d) out.push_back(kHex[(e >> (4 * d)) & 0xf]);
    return out;
}

/// Whether dim x dim matrices over GF(2^r) fit a 64-bit packed key.
inline bool packable(int dim, int r) { return dim * dim * r <= 64; }

/// Packs entries row-major, first entry most significant. Numeric order of keys
/// equals lexicographic order of serialize().
inline std::uint64_t pack(const MatrixGF& m, int r) {
    if (!packable(m.dim(), r)) throw ResourceError("matrix does not fit a 64-bit key");
    std::uint64_t key = 0;
    for (Bits e : m.entries()) key = (key << r) | e;
    return key;
}

inline MatrixGF unpack(std::uint64_t key, int dim, int r) {
    MatrixGF m(dim);
    const std::uint64_t mask = (std::uint64_t{1} << r) - 1;
    for (int i = dim * dim - 1; i >= 0; --i) {
        m(i / dim, i % dim) = static_cast<Bits>(key & mask);
        key >>= r;
    }
    return m;
}

/// All t x t matrices over F_q, in row-major counting order. Caller bounds q^(t^2).
template <class Visit>
void for_each_matrix(const GaloisField& f, int t, Visit&& visit) {
    const std::size_t cells = static_cast<std::size_t>(t) * static_cast<std::size_t>(t);
    MatrixGF m(t);
    std::vector<std::uint32_t> digits(cells, 0);
    const std::uint32_t q = f.order();
    while (true) {
        for (std::size_t i = 0; i < cells; ++i) m(static_cast<int>(i / t), static_cast<int>(i % t)) = static_cast<Bits>(digits[i]);
        visit(static_cast<const MatrixGF&>(m));
        std::size_t pos = cells;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < q) break;
            digits[pos] = 0;
            if (pos == 0) return;
        }
        if (cells == 0) return;
    }
}

/// GL(t, q) by exhaustive scan, capped at max_order elements.
inline std::vector<MatrixGF> enumerate_gl(const GaloisField& f, int t, std::uint64_t max_order) {
    if (t < 0) throw ParameterError("negative matrix size");
    const BigInt order = gl_order(f.order(), static_cast<unsigned>(t));
    if (order > max_order) {
        throw ResourceError("|GL(" + std::to_string(t) + "," + std::to_string(f.order()) + ")| = " + order.str() +
                            " exceeds enumeration budget " + std::to_string(max_order));
    }
    std::vector<MatrixGF> out;
    out.reserve(static_cast<std::size_t>(order));
    if (t == 0) {
        out.emplace_back(0);
        return out;
    }
    for_each_matrix(f, t, [&](const MatrixGF& m) {
        if (is_invertible(f, m)) out.push_back(m);
    });
    if (out.size() != order) throw ConsistencyError("GL enumeration size disagrees with |GL(t,q)|");
    return out;
}

}  // namespace kloo
