#pragma once

#include "qmod/cyclotomic.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qmod {

/// Truncated Puiseux series: coefficients of q^{(v+i)/D} for i = 0.. with all
/// exponents below prec/D known exactly. A series whose stored coefficients
/// are all zero represents 0 + O(q^{prec/D}) and keeps val == prec.
///
/// Values are immutable in practice: every operation returns a new series.
class PuiseuxSeries {
  public:
    PuiseuxSeries() : denom_(1), val_(0), prec_(0) {}

    // 0 + O(q^order)
    static PuiseuxSeries zero(const Rational& order);
    // c * q^exponent + O(q^order)
    static PuiseuxSeries monomial(const Cyclotomic& c, const Rational& exponent,
                                  const Rational& order);
    static PuiseuxSeries constant(const Cyclotomic& c, const Rational& order);

    // Builds sum of c * q^e from explicit terms, truncated at the order bound.
    static PuiseuxSeries from_terms(const std::vector<std::pair<Rational, Cyclotomic>>& terms,
                                    const Rational& order);

    long denom() const { return denom_; }
    bool is_zero_to_prec() const;
    Rational precision() const;          // exponent bound below which coefficients are known
    Rational valuation() const;          // exponent of the leading term (requires nonzero)
    Cyclotomic leading_coefficient() const;
    Cyclotomic coefficient(const Rational& exponent) const;

    PuiseuxSeries operator-() const;
    friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b);

    PuiseuxSeries scaled(const Cyclotomic& c) const;
    PuiseuxSeries shifted(const Rational& exponent) const;  // multiply by q^exponent

    // f^{<h>}: exponent e -> h*e, i.e. f(h tau).
    PuiseuxSeries rescale(const Rational& h) const;

    // f|(1 b; 0 1): coefficient at exponent e picks up e^{2 pi i b e}.
    // Rational b extends the same substitution to phase shifts finer than
    // the exponent lattice.
    PuiseuxSeries twist(const Rational& b) const;

    // f^{/n/} = f^{<1/n> n} / f   and   f^{"n"} = f^{<n> n} / f.
    PuiseuxSeries slash_down(long n) const;
    PuiseuxSeries slash_up(long n) const;

    PuiseuxSeries pow_int(long e) const;

    // n-th root with (result)^n == f to precision. The leading coefficient
    // must be 1, a root of unity, a rational perfect n-th power, or pinned by
    // the caller. Root-of-unity leads zeta_L^j lift to zeta_{nL}^j.
    PuiseuxSeries nth_root(long n, const std::optional<Cyclotomic>& leading_root = {}) const;

    // q^{alpha v/D} exp(alpha log(unit part)); requires leading coefficient 1.
    PuiseuxSeries pow_rational(const Rational& alpha) const;

    // Applies the sigma_t Galois action to every coefficient.
    PuiseuxSeries coeff_map_sigma(long t) const;

    struct Compare {
        enum Kind { Equal, Unequal, Inconclusive } kind;
        Rational exponent;  // first differing exponent / available precision
        Cyclotomic lhs, rhs;
    };
    static Compare equal_to_precision(const PuiseuxSeries& a, const PuiseuxSeries& b,
                                      const Rational& order);

    std::string str(long max_terms = 12) const;
    std::string to_json() const;

    // Internal layout accessors (used by the linear-algebra layer).
    long val_index() const { return val_; }
    long prec_index() const { return prec_; }
    const std::vector<Cyclotomic>& raw_coeffs() const { return coeffs_; }
    PuiseuxSeries rebased(long new_denom) const;

  private:
    long denom_;
    long val_;
    long prec_;
    std::vector<Cyclotomic> coeffs_;  // coeffs_[i] is the coefficient of q^{(val_+i)/denom_}

    void normalize();
    void compact();
    static long common_denom(const PuiseuxSeries& a, const PuiseuxSeries& b);
    PuiseuxSeries unit_log() const;   // log of a unit with leading coefficient 1
    PuiseuxSeries unit_exp() const;   // exp of a series with positive valuation
};

}  // namespace qmod
