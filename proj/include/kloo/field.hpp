#pragma once

// GF(2^r) for 1 <= r <= 8 in a polynomial basis.
//
// An element is the coefficient vector of a polynomial of degree < r packed
// into an integer (bit i is the coefficient of x^i). The field is fixed by a
// monic irreducible modulus, itself given as a bitmask with bit r set. All
// arithmetic runs off lookup tables built once per field and shared between
// copies, so a GaloisField is a cheap immutable value.

#include <array>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kloo/errors.hpp"

namespace kloo {

/// Raw element bits. Used by the enumeration hot loops, which know their field.
using Bits = std::uint8_t;

class GaloisField;

/// An element of a specific GF(2^r). Carries the field modulus so that
/// operands from different fields are caught instead of silently combined.
class FieldElement {
  public:
    constexpr FieldElement() = default;

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr std::uint32_t modulus() const { return modulus_; }
    constexpr bool is_zero() const { return bits_ == 0; }

    friend constexpr bool operator==(FieldElement, FieldElement) = default;

    /// Lowercase hex of the basis coefficients.
    std::string hex() const {
        std::ostringstream os;
        os << std::hex << bits_;
        return os.str();
    }

  private:
    friend class GaloisField;
    constexpr FieldElement(std::uint32_t bits, std::uint32_t modulus)
        : bits_(static_cast<std::uint16_t>(bits)), modulus_(static_cast<std::uint16_t>(modulus)) {}

    std::uint16_t bits_ = 0;
    std::uint16_t modulus_ = 0;
};

namespace detail {

inline int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1u;
    }
    return d;
}

/// Remainder of a by b in GF(2)[x].
inline std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
    return a;
}

/// Carryless product of two polynomials of degree < 16.
inline std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) {
    std::uint32_t out = 0;
    for (int i = 0; b >> i; ++i)
        if ((b >> i) & 1u) out ^= a << i;
    return out;
}

}  // namespace detail

class GaloisField {
  public:
    static constexpr int kMaxDegree = 8;

    /// Field with the pinned default modulus for degree r.
    explicit GaloisField(int r) : GaloisField(r, default_modulus(r)) {}

    GaloisField(int r, std::uint32_t modulus) {
        if (r < 1 || r > kMaxDegree) {
            throw ParameterError("r out of supported range: r = " + std::to_string(r) + " (must be 1..8)");
        }
        if (detail::poly_degree(modulus) != r) {
            throw ParameterError("modulus must have degree exactly r = " + std::to_string(r));
        }
        if (!is_irreducible(modulus)) throw ParameterError("modulus is reducible over GF(2)");
        build(r, modulus);
    }

    /// x, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1.
    static std::uint32_t default_modulus(int r) {
        static constexpr std::array<std::uint32_t, 9> kModuli = {0,    0x2,  0x7,  0xb,  0x13,
                                                                 0x25, 0x43, 0x83, 0x11b};
        if (r < 1 || r > kMaxDegree) {
            throw ParameterError("r out of supported range: r = " + std::to_string(r) + " (must be 1..8)");
        }
        return kModuli[static_cast<std::size_t>(r)];
    }

    /// Exhaustive factor check: no polynomial of degree 1..deg/2 divides p.
    static bool is_irreducible(std::uint32_t p) {
        const int d = detail::poly_degree(p);
        if (d < 1) return false;
        for (std::uint32_t f = 2; detail::poly_degree(f) <= d / 2; ++f)
            if (detail::poly_mod(p, f) == 0) return false;
        return true;
    }

    int degree() const { return t_->r; }
    std::uint32_t order() const { return t_->q; }
    std::uint32_t modulus() const { return t_->modulus; }

    friend bool operator==(const GaloisField& a, const GaloisField& b) { return a.modulus() == b.modulus(); }

    FieldElement element(std::uint32_t bits) const {
        if (bits >= order()) {
            throw ParameterError("element bits " + std::to_string(bits) + " not below q = " + std::to_string(order()));
        }
        return FieldElement(bits, modulus());
    }
    FieldElement zero() const { return element(0); }
    FieldElement one() const { return element(1); }

    /// Parses lowercase or uppercase hex, with or without a 0x prefix.
    FieldElement parse(const std::string& hex) const {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(hex, &pos, 16);
        } catch (const std::exception&) {
            throw ParameterError("not a hex field element: '" + hex + "'");
        }
        if (pos != hex.size()) throw ParameterError("not a hex field element: '" + hex + "'");
        return element(static_cast<std::uint32_t>(v));
    }

    /// All q elements in bits order.
    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        out.reserve(order());
        for (std::uint32_t b = 0; b < order(); ++b) out.push_back(FieldElement(b, modulus()));
        return out;
    }
    std::vector<FieldElement> nonzero_elements() const {
        std::vector<FieldElement> out;
        for (std::uint32_t b = 1; b < order(); ++b) out.push_back(FieldElement(b, modulus()));
        return out;
    }

    bool contains(FieldElement x) const { return x.modulus() == modulus() && x.bits() < order(); }

    FieldElement add(FieldElement x, FieldElement y) const {
        check(x), check(y);
        return FieldElement(x.bits() ^ y.bits(), modulus());
    }
    FieldElement mul(FieldElement x, FieldElement y) const {
        check(x), check(y);
        return FieldElement(mul_raw(static_cast<Bits>(x.bits()), static_cast<Bits>(y.bits())), modulus());
    }
    FieldElement inv(FieldElement x) const {
        check(x);
        if (x.is_zero()) throw DomainError("inverse of zero in GF(2^" + std::to_string(degree()) + ")");
        return FieldElement(inv_raw(static_cast<Bits>(x.bits())), modulus());
    }
    FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

    /// x^e for e >= 0, with 0^0 = 1.
    FieldElement pow(FieldElement x, std::uint64_t e) const {
        check(x);
        Bits acc = 1, base = static_cast<Bits>(x.bits());
        while (e) {
            if (e & 1u) acc = mul_raw(acc, base);
            base = mul_raw(base, base);
            e >>= 1u;
        }
        return FieldElement(acc, modulus());
    }

    /// Absolute trace to GF(2).
    int trace(FieldElement x) const {
        check(x);
        return trace_raw(static_cast<Bits>(x.bits()));
    }

    /// Canonical additive character (-1)^tr(x).
    int lambda(FieldElement x) const { return trace(x) ? -1 : 1; }

    /// {a^2 + a : a in F_q}, sorted by bits. Equals the trace-zero hyperplane.
    std::vector<FieldElement> artin_schreier_image() const {
        std::vector<bool> hit(order(), false);
        for (std::uint32_t a = 0; a < order(); ++a) hit[mul_raw(static_cast<Bits>(a), static_cast<Bits>(a)) ^ a] = true;
        std::vector<FieldElement> out;
        for (std::uint32_t b = 0; b < order(); ++b)
            if (hit[b]) out.push_back(FieldElement(b, modulus()));
        return out;
    }

    // Unchecked table lookups for callers that already hold valid bits.
    Bits mul_raw(Bits a, Bits b) const { return t_->mul[(static_cast<std::size_t>(a) << t_->r) | b]; }
    Bits inv_raw(Bits a) const { return t_->inv[a]; }
    int trace_raw(Bits a) const { return t_->trace[a]; }
    int lambda_raw(Bits a) const { return t_->trace[a] ? -1 : 1; }

  private:
    struct Tables {
        int r = 0;
        std::uint32_t q = 0;
        std::uint32_t modulus = 0;
        std::vector<Bits> mul;
        std::vector<Bits> inv;
        std::vector<std::uint8_t> trace;
    };

    void check(FieldElement x) const {
        if (x.modulus() != modulus()) {
            throw ParameterError("field element from a different field (modulus " + std::to_string(x.modulus()) +
                                 " vs " + std::to_string(modulus()) + ")");
        }
    }

    void build(int r, std::uint32_t modulus) {
        auto t = std::make_shared<Tables>();
        t->r = r;
        t->q = 1u << r;
        t->modulus = modulus;
        t->mul.resize(static_cast<std::size_t>(t->q) * t->q);
        for (std::uint32_t a = 0; a < t->q; ++a)
            for (std::uint32_t b = 0; b < t->q; ++b)
                t->mul[(a << r) | b] = static_cast<Bits>(detail::poly_mod(detail::poly_mul(a, b), modulus));
        t->inv.assign(t->q, 0);
        for (std::uint32_t a = 1; a < t->q; ++a)
            for (std::uint32_t b = 1; b < t->q; ++b)
                if (t->mul[(a << r) | b] == 1) t->inv[a] = static_cast<Bits>(b);
        // tr(x) = x + x^2 + ... + x^(2^(r-1)); lands in {0, 1}.
        t->trace.assign(t->q, 0);
        for (std::uint32_t a = 0; a < t->q; ++a) {
            std::uint32_t acc = 0, sq = a;
            for (int i = 0; i < r; ++i) {
                acc ^= sq;
                sq = t->mul[(sq << r) | sq];
            }
            if (acc > 1) throw ConsistencyError("trace left GF(2); modulus is not irreducible");
            t->trace[a] = static_cast<std::uint8_t>(acc);
        }
        t_ = std::move(t);
    }

    std::shared_ptr<const Tables> t_;
};

}  // namespace kloo
