#pragma once

#include "qmod/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qmod {

// Phi_L as integer coefficients, constant term first. Cached; thread-safe.
const std::vector<Integer>& cyclotomic_polynomial(long order);

long euler_phi(long n);
long moebius(long n);

/// An exact element of Q(zeta_L), stored in the power basis of zeta_L and
/// reduced modulo Phi_L. The representation is canonical for a fixed order:
/// two values at the same order are equal iff their coefficient lists are
/// identical. Values constructed by binary operations live at the lcm of the
/// operand orders; no global minimization is performed (equality across
/// orders lifts both sides first).
class Cyclotomic {
  public:
    Cyclotomic() : order_(1) {}
    Cyclotomic(const Rational& r);
    Cyclotomic(long n) : Cyclotomic(Rational(n)) {}

    // zeta_n^k, reduced. The order of the result divides n.
    static Cyclotomic root_of_unity(long n, long k);

    // e^{2 pi i r} for rational r.
    static Cyclotomic unit_phase(const Rational& r);

    long order() const { return order_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const;
    // Requires is_rational().
    Rational rational_value() const;

    // Same value viewed in Q(zeta_M); M must be a multiple of order().
    Cyclotomic lifted(long new_order) const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    Cyclotomic& operator/=(const Cyclotomic& b) { return *this = *this / b; }

    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    // Field automorphism zeta_L -> zeta_L^t; t must be coprime to order().
    Cyclotomic galois(long t) const;

    // Galois action used for the series-level sigma_t operator: on a value of
    // order L = 2^a * m (m odd) it sends the 2-power part by t and fixes the
    // odd part when gcd(t, m) != 1. sigma(-1) is full complex conjugation.
    Cyclotomic sigma(long t) const;

    Cyclotomic conj() const { return galois(-1); }

    bool operator==(const Cyclotomic& b) const;
    bool operator!=(const Cyclotomic& b) const { return !(*this == b); }

    // If the value is a root of unity, returns (n, k) with value == zeta_n^k.
    std::optional<std::pair<long, long>> as_root_of_unity() const;

    // Principal n-th root for roots of unity and positive rationals whose
    // n-th root is rational; nullopt otherwise.
    std::optional<Cyclotomic> nth_root(long n) const;

    // Sorted (exponent, coefficient) pairs, zero coefficients omitted.
    const std::vector<std::pair<long, Rational>>& terms() const { return coeffs_; }

    std::string str() const;

  private:
    long order_;
    std::vector<std::pair<long, Rational>> coeffs_;

    static Cyclotomic from_poly(long order, std::vector<Rational> poly);
    friend struct CycOps;
};

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);

inline Cyclotomic operator*(const Rational& a, const Cyclotomic& b) { return Cyclotomic(a) * b; }

// sqrt(2) = zeta_8 + zeta_8^-1, sqrt(3)i = zeta_3 - zeta_3^2 and
// sqrt(5) = 1 + 2(zeta_5 + zeta_5^4): the Gauss-sum embeddings used whenever
// a real surd is needed inside Q(zeta_L).
Cyclotomic cyc_sqrt2();
Cyclotomic cyc_sqrt3_i();
Cyclotomic cyc_sqrt5();
Cyclotomic cyc_i();

}  // namespace qmod
