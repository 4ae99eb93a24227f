#pragma once

// Exact integer and rational arithmetic plus the small combinatorial helpers
// every other module needs (powers, binomials, q-analogues, Stirling numbers).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "kloo/errors.hpp"

namespace kloo {

// Expression templates off: results are plain values, usable with auto and ?:.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "p/q" for non-integers, plain decimal otherwise.
inline std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline BigInt ipow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline Rational rpow(const Rational& base, unsigned exp) {
    Rational out = 1;
    Rational b = base;
    while (exp) {
        if (exp & 1u) out *= b;
        b *= b;
        exp >>= 1u;
    }
    return out;
}

/// q^e for a possibly negative exponent.
inline Rational qpow(std::uint64_t q, long e) {
    if (e >= 0) return Rational(ipow(BigInt(q), static_cast<unsigned>(e)));
    return Rational(BigInt(1), ipow(BigInt(q), static_cast<unsigned>(-e)));
}

/// Quotient a / b, throwing if the division is not exact.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const std::string& what) {
    if (b == 0) throw ConsistencyError(what + ": division by zero");
    BigInt quot, rem;
    boost::multiprecision::divide_qr(a, b, quot, rem);
    if (rem != 0) {
        throw ConsistencyError(what + ": " + a.str() + " is not divisible by " + b.str());
    }
    return quot;
}

/// Integer value of a rational that must be integral.
inline BigInt to_integer(const Rational& x, const std::string& what) {
    if (denominator(x) != 1) throw ConsistencyError(what + ": expected an integer, got " + to_string(x));
    return numerator(x);
}

/// binom(n, k) with the convention binom(n, k) = 0 for k < 0 or k > n.
inline BigInt binomial(const BigInt& n, long k) {
    if (k < 0 || n < 0 || BigInt(k) > n) return 0;
    BigInt kk = k;
    if (kk * 2 > n) kk = n - kk;
    BigInt out = 1;
    const long lim = static_cast<long>(kk);
    for (long i = 1; i <= lim; ++i) {
        out *= (n - lim + i);
        out /= i;  // exact: out is binom(n - lim + i, i) after this step
    }
    return out;
}

inline BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

/// Stirling number of the second kind via the alternating sum
/// S(h,t) = (1/t!) sum_j (-1)^(t-j) binom(t,j) j^h.
inline BigInt stirling2(unsigned h, unsigned t) {
    if (t > h) return 0;
    BigInt sum = 0;
    for (unsigned j = 0; j <= t; ++j) {
        BigInt term = binomial(BigInt(t), j) * ipow(BigInt(j), h);
        if ((t - j) % 2) sum -= term;
        else sum += term;
    }
    return exact_div(sum, factorial(t), "stirling2");
}

/// |GL(n, q)| = prod_{j<n} (q^n - q^j).
inline BigInt gl_order(std::uint64_t q, unsigned n) {
    BigInt out = 1;
    const BigInt qn = ipow(BigInt(q), n);
    for (unsigned j = 0; j < n; ++j) out *= (qn - ipow(BigInt(q), j));
    return out;
}

/// Gaussian binomial [n r]_q = prod_{j<r} (q^{n-j} - 1) / (q^{r-j} - 1); zero outside 0 <= r <= n.
inline BigInt q_binomial(std::uint64_t q, long n, long r) {
    if (r < 0 || n < 0 || r > n) return 0;
    BigInt num = 1, den = 1;
    for (long j = 0; j < r; ++j) {
        num *= ipow(BigInt(q), static_cast<unsigned>(n - j)) - 1;
        den *= ipow(BigInt(q), static_cast<unsigned>(r - j)) - 1;
    }
    return exact_div(num, den, "q_binomial");
}

inline long choose2(long n) { return n * (n - 1) / 2; }

}  // namespace kloo
