#pragma once

#include "qmod/characters.hpp"
#include "qmod/series.hpp"

#include <map>

namespace qmod {
namespace forms {

// Every constructor returns a series whose precision is at least `order`
// (an exponent bound in q-units), over-provisioning internally as needed.

PuiseuxSeries eta(const Rational& order);
// Truncated product q^{1/24} prod (1 - q^n); independent oracle for eta.
PuiseuxSeries eta_product(const Rational& order);

PuiseuxSeries eisenstein_level1(long k, const Rational& order);
PuiseuxSeries eisenstein_levelN_weight2(long n, const Rational& order);
PuiseuxSeries eisenstein_weight1(const UnitMap& chi, const Rational& order);
PuiseuxSeries eisenstein_G(const UnitMap& psi, const UnitMap& chi, const Rational& order);

PuiseuxSeries theta(const Rational& order);
PuiseuxSeries theta_chi(const UnitMap& chi, const Rational& order);

enum class EtaDecoration { Flat, Sharp, Natural, Bot, Top, NW, SW };
PuiseuxSeries derived_eta(EtaDecoration which, const Rational& order);
// The decoration operators applied to an arbitrary series.
PuiseuxSeries decorate(const PuiseuxSeries& f, EtaDecoration which);

struct EtaQuotientSpec {
    long level = 1;
    std::map<long, long> exponents;  // divisor d -> r_d
};
PuiseuxSeries eta_quotient(const EtaQuotientSpec& spec, const Rational& order);
// Order of vanishing at any cusp with denominator m; independent of the
// numerator.
Rational cusp_vanishing_order(const EtaQuotientSpec& spec, long m);

// f_{N,r} = eta^{-3/N} q^{r^2/8N} sum_p (-1)^p q^{(N p^2 + r p)/2}.
PuiseuxSeries f_nr(long n, long r, const Rational& order);
PuiseuxSeries eta_chi5(bool conjugate, const Rational& order);

// Bracket families. Arguments follow the catalog syntax br(family, num, den).
PuiseuxSeries bracket_eta(long num, long den, const Rational& order);  // den in {2,4,8,9}
PuiseuxSeries bracket_o(long k, const Rational& order);                // [o, k/4]
PuiseuxSeries bracket_u(long k, const Rational& order);                // [u, k/4]
PuiseuxSeries bracket_d(long k, const Rational& order);                // [d, k/4]
PuiseuxSeries bracket_u3(long k, const Rational& order);               // [u, k/3]
PuiseuxSeries bracket_s(long num, long den, const Rational& order);    // den in {4,3,9}
PuiseuxSeries bracket_minus_s(long k, const Rational& order);          // [-s, k/4]
PuiseuxSeries bracket_S9(long k, const Rational& order);               // [S, k/9]
PuiseuxSeries bracket_E9(long k, const Rational& order);               // [E, k/9]

// Hexagonal lattice sums: sum over m,n in Z + s/3 of
// zeta_3^{j(m-n)} q^{m^2+mn+n^2}.
PuiseuxSeries hex_lattice(long j, long s, const Rational& order);

// prod over n >= 1, n == a (mod m), of (1 +- q^{n/den})^alpha.
PuiseuxSeries qprod(long a, long m, const Rational& alpha, long den, bool plus,
                    const Rational& order);

}  // namespace forms
}  // namespace qmod
