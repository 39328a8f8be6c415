#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sfv {

// Exact arbitrary-precision arithmetic for cardinalities and counting
// formulas. Key-space sizes reach 2^96 at realistic parameters, so
// machine words are never used for counts.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= BigInt(n - k + i);
        r /= BigInt(i);  // exact at every step
    }
    return r;
}

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log2_big: nonpositive value");
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 63) return std::log2(v.convert_to<double>());
    const BigInt top = v >> (bits - 63);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 63);
}

inline double to_double(const BigRat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (num == 0) return 0.0;
    const bool neg = num < 0;
    const BigInt n = neg ? BigInt(-num) : num;
    const double l = log2_big(n) - log2_big(den);
    const double d = std::exp2(l);
    return neg ? -d : d;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace sfv
