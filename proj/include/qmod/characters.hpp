#pragma once

#include "qmod/cyclotomic.hpp"

#include <map>
#include <string>
#include <vector>

namespace qmod {

// Kronecker symbol (n/m) for all integers. The m = 0 row follows the source
// convention used throughout this project: (n/0) = 1 for n = +-1 and -1
// otherwise (the common convention returns 0 for |n| != 1 instead). For
// m < -1 we take (n/m) = (n/-1) * (n/|m|).
long kronecker(long n, long m);

/// A table of cyclotomic values on the units mod N. Dirichlet characters are
/// the multiplicative ones; non-multiplicative unit maps (sqrt_chi4, xi8)
/// share the representation so the pointwise operations apply to both.
class UnitMap {
  public:
    UnitMap() : modulus_(1) { values_[0] = Cyclotomic(Rational(1)); }
    UnitMap(long modulus, std::map<long, Cyclotomic> values);

    long modulus() const { return modulus_; }
    const std::map<long, Cyclotomic>& values() const { return values_; }

    // Extended-to-Z evaluation: 0 when gcd(n, N) != 1.
    Cyclotomic operator()(long n) const;

    bool is_multiplicative() const;
    bool is_trivial() const;
    bool is_even() const { return (*this)(-1) == Cyclotomic(Rational(1)); }
    bool is_odd() const { return (*this)(-1) == Cyclotomic(Rational(-1)); }

    UnitMap lift(long new_modulus) const;
    long conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }
    // The primitive character mod conductor() inducing this one.
    UnitMap primitivize() const;

    friend UnitMap operator*(const UnitMap& a, const UnitMap& b);
    UnitMap pow(long k) const;
    UnitMap bar() const;

    bool operator==(const UnitMap& b) const;

    std::string str() const;

  private:
    long modulus_;
    std::map<long, Cyclotomic> values_;
};

using DirichletCharacter = UnitMap;

// The trivial character mod N.
UnitMap trivial_character(long n);
// chi_{2^n} for 2^n >= 8, chi_4, and chi_{p^r} for odd prime powers; this is
// the `chi(N)` of the expression language. Throws unless N is a prime power
// with a defined character (N >= 3).
UnitMap named_chi(long prime_power);
UnitMap sqrt_chi4();
UnitMap xi8();

// Every character of (Z/N)^x, built from the prime-power generators.
std::vector<UnitMap> character_group(long n);

// Both orthogonality relations over (Z/N)^x, checked exactly.
bool orthogonality_check(long n);

/// An arithmetic function materialized on 1..bound.
class ArithmeticFunction {
  public:
    explicit ArithmeticFunction(long bound) : vals_(bound + 1) {}
    static ArithmeticFunction from_unit_map(const UnitMap& chi, long bound);
    static ArithmeticFunction ones(long bound);    // the constant function on N
    static ArithmeticFunction delta_one(long bound);

    long bound() const { return static_cast<long>(vals_.size()) - 1; }
    const Cyclotomic& at(long n) const { return vals_.at(n); }
    Cyclotomic& at(long n) { return vals_.at(n); }

  private:
    std::vector<Cyclotomic> vals_;
};

ArithmeticFunction dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                      long bound);

// (chi * 1_N)(n) for n = 1..bound: the divisor sums driving the Eisenstein
// series of weight one.
std::vector<Cyclotomic> char_divisor_sums(const UnitMap& chi, long bound);

// First generalized Bernoulli number B_chi = (1/c) sum_{a=1}^{c} chi(a) a of
// the primitive character inducing chi.
Cyclotomic bernoulli_b_chi(const UnitMap& chi);

// Bernoulli numbers B_k (B_1 = -1/2), cached.
Rational bernoulli_number(long k);

}  // namespace qmod
