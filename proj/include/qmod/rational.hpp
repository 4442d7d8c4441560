#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace qmod {

// Exact rational arithmetic is delegated to GMP. mpq_class keeps values
// canonical (gcd(num,den)=1, den>0) as long as canonicalize() runs after
// raw construction; every helper here returns canonical values.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p". Throws on malformed input.
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Floor of a rational as an Integer.
inline Integer rational_floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer out of range");
    return z.get_si();
}

inline long lcm_long(long a, long b) {
    return std::lcm(a, b);
}

// n-th power with integer exponent (negative allowed for nonzero base).
Rational rational_pow(const Rational& base, long e);

// Binomial coefficient C(n, k) for n >= k >= 0.
Integer binomial(unsigned long n, unsigned long k);

std::string to_string(const Rational& r);

}  // namespace qmod
