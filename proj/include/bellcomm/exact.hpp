#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bellcomm {

/// Arbitrary-precision signed integer.
using Int = mpz_class;

/// Exact rational, kept canonical (gcd(|num|, den) = 1, den > 0) by GMP.
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline bool fits_int64(const Int& v) {
    static_assert(sizeof(long) == 8, "64-bit long expected");
    return v.fits_slong_p();
}

inline std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v)) throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

inline Int int_from_string(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed integer literal: " + s);
    }
}

}  // namespace bellcomm
