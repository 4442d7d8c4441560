#include "qmod/forms.hpp"

#include <doctest.h>

#include <numeric>
#include <vector>

using namespace qmod;
using namespace qmod::forms;

namespace {

bool equal_to(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rational& ord) {
    auto cmp = PuiseuxSeries::equal_to_precision(a, b, ord);
    return cmp.kind == PuiseuxSeries::Compare::Equal;
}

Cyclotomic c_int(long n) { return Cyclotomic(Rational(n)); }

// plain divisor power sums, the oracle for every Eisenstein coefficient
Rational sigma_k(long n, long k) {
    Rational s(0);
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += rational_pow(Rational(d), k);
    return s;
}

}  // namespace

TEST_CASE("eta: pentagonal series against the product oracle") {
    Rational ord(40);
    PuiseuxSeries e = eta(ord);
    CHECK(e.valuation() == make_rational(1, 24));
    // displayed initial terms q^{1/24}(1 - q - q^2 + q^5 + q^7 - q^12 - q^15)
    std::vector<std::pair<long, long>> expect = {{0, 1},  {1, -1},  {2, -1}, {5, 1},
                                                 {7, 1},  {12, -1}, {15, -1}};
    for (auto [n, c] : expect)
        CHECK(e.coefficient(Rational(n) + make_rational(1, 24)) == c_int(c));
    CHECK(e.coefficient(Rational(3) + make_rational(1, 24)).is_zero());
    CHECK(equal_to(e, eta_product(ord), ord));
}

TEST_CASE("E_{1,k} first coefficients and divisor-sum oracle") {
    Rational ord(60);
    PuiseuxSeries e2 = eisenstein_level1(2, ord);
    CHECK(e2.coefficient(Rational(0)) == c_int(1));
    CHECK(e2.coefficient(Rational(1)) == c_int(-24));
    CHECK(e2.coefficient(Rational(2)) == c_int(-72));
    PuiseuxSeries e4 = eisenstein_level1(4, ord);
    CHECK(e4.coefficient(Rational(1)) == c_int(240));
    PuiseuxSeries e6 = eisenstein_level1(6, ord);
    CHECK(e6.coefficient(Rational(1)) == c_int(-504));
    for (long n = 1; n < 40; ++n) {
        CHECK(e2.coefficient(Rational(n)) == Cyclotomic(Rational(-24) * sigma_k(n, 1)));
        CHECK(e4.coefficient(Rational(n)) == Cyclotomic(Rational(240) * sigma_k(n, 3)));
    }
}

TEST_CASE("E_{N,2} equals its divisor-sum form") {
    Rational ord(50);
    for (long n : {2L, 3L, 5L, 7L}) {
        PuiseuxSeries e = eisenstein_levelN_weight2(n, ord);
        CHECK(e.coefficient(Rational(0)) == c_int(1));
        for (long m = 1; m < 50; ++m) {
            Rational s(0);
            for (long d = 1; d <= m; ++d)
                if (m % d == 0 && d % n != 0) s += d;
            s *= make_rational(24, n - 1);
            CHECK(e.coefficient(Rational(m)) == Cyclotomic(s));
        }
    }
    // rescaling example: E_{1,2}^{<2>} starts 1 - 24 q^2 - 72 q^4
    PuiseuxSeries r = eisenstein_level1(2, ord).rescale(Rational(2));
    CHECK(r.coefficient(Rational(2)) == c_int(-24));
    CHECK(r.coefficient(Rational(4)) == c_int(-72));
    CHECK(r.coefficient(Rational(1)).is_zero());
}

TEST_CASE("weight-1 Eisenstein series") {
    Rational ord(40);
    // E_{chi_3} = 1 + 6 sum (chi_3 * 1)(n) q^n
    PuiseuxSeries e3 = eisenstein_weight1(named_chi(3), ord);
    auto sums3 = char_divisor_sums(named_chi(3), 39);
    for (long n = 1; n < 40; ++n)
        CHECK(e3.coefficient(Rational(n)) == c_int(6) * sums3[n]);
    // E_{chi_4} = 1 + 4 sum, E_{chi_5} = 1 + (3-i) sum
    PuiseuxSeries e4 = eisenstein_weight1(named_chi(4), ord);
    auto sums4 = char_divisor_sums(named_chi(4), 39);
    for (long n = 1; n < 40; ++n)
        CHECK(e4.coefficient(Rational(n)) == c_int(4) * sums4[n]);
    PuiseuxSeries e5 = eisenstein_weight1(named_chi(5), ord);
    auto sums5 = char_divisor_sums(named_chi(5), 39);
    Cyclotomic w = c_int(3) - cyc_i();
    for (long n = 1; n < 40; ++n)
        CHECK(e5.coefficient(Rational(n)) == w * sums5[n]);
    // E_{chi_9} = 1 + (1 - zeta_3) sum, E_{chi_27} = 1 + (zeta_9 - zeta_9^2) sum
    PuiseuxSeries e9 = eisenstein_weight1(named_chi(9), ord);
    auto sums9 = char_divisor_sums(named_chi(9), 10);
    Cyclotomic w9 = c_int(1) - Cyclotomic::root_of_unity(3, 1);
    for (long n = 1; n <= 10; ++n) CHECK(e9.coefficient(Rational(n)) == w9 * sums9[n]);
    PuiseuxSeries e27 = eisenstein_weight1(named_chi(27), ord);
    auto sums27 = char_divisor_sums(named_chi(27), 10);
    Cyclotomic w27 = Cyclotomic::root_of_unity(9, 1) - Cyclotomic::root_of_unity(9, 2);
    for (long n = 1; n <= 10; ++n) CHECK(e27.coefficient(Rational(n)) == w27 * sums27[n]);
    // E_{chi_4 chi_16} = 1 + (1-i) sum and E_{chi_4 chi_32} = 1 + (i - zeta_8^3) sum
    UnitMap c416 = named_chi(4) * named_chi(16);
    PuiseuxSeries e416 = eisenstein_weight1(c416, ord);
    auto sums416 = char_divisor_sums(c416, 10);
    Cyclotomic w416 = c_int(1) - cyc_i();
    for (long n = 1; n <= 10; ++n) CHECK(e416.coefficient(Rational(n)) == w416 * sums416[n]);
    UnitMap c432 = named_chi(4) * named_chi(32);
    PuiseuxSeries e432 = eisenstein_weight1(c432, ord);
    auto sums432 = char_divisor_sums(c432, 10);
    Cyclotomic w432 = cyc_i() - Cyclotomic::root_of_unity(8, 3);
    for (long n = 1; n <= 10; ++n) CHECK(e432.coefficient(Rational(n)) == w432 * sums432[n]);
    CHECK_THROWS(eisenstein_weight1(named_chi(8), ord));  // even character
}

TEST_CASE("G series basics") {
    Rational ord(30);
    UnitMap psi = named_chi(3), chi = named_chi(5).pow(2);
    PuiseuxSeries g = eisenstein_G(psi, chi, ord);
    CHECK(g.coefficient(Rational(1)) == c_int(1));
    // (psi * chi)(p) = psi(p) + chi(p) at primes
    for (long p : {7L, 11L, 13L}) {
        CHECK(g.coefficient(Rational(p)) == psi(p) + chi(p));
    }
    CHECK_THROWS(eisenstein_G(named_chi(3), named_chi(3), ord));  // even product
    CHECK_THROWS(eisenstein_G(named_chi(3), named_chi(4), ord));  // chi3*chi4 is even
}

TEST_CASE("theta and theta_chi") {
    Rational ord(40);
    PuiseuxSeries t = theta(ord);
    CHECK(t.coefficient(Rational(0)) == c_int(1));
    CHECK(t.coefficient(Rational(1)) == c_int(2));
    CHECK(t.coefficient(Rational(4)) == c_int(2));
    CHECK(t.coefficient(Rational(9)) == c_int(2));
    CHECK(t.coefficient(Rational(2)).is_zero());
    // theta_{1_p} = (theta - theta^{<p^2>}) / 2 for p = 3
    PuiseuxSeries lhs = theta_chi(trivial_character(3), ord);
    PuiseuxSeries rhs = (t - t.rescale(Rational(9))).scaled(Cyclotomic(make_rational(1, 2)));
    CHECK(equal_to(lhs, rhs, ord));
    CHECK_THROWS(theta_chi(named_chi(3), ord));  // odd character
}

TEST_CASE("two-square theorems by lattice count") {
    long bound = 500;
    auto conv4 = char_divisor_sums(named_chi(4), bound);
    UnitMap c48 = named_chi(4) * named_chi(8);
    auto conv48 = char_divisor_sums(c48, bound);
    std::vector<long> count2(bound + 1, 0), count_skew(bound + 1, 0);
    for (long a = -23; a <= 23; ++a) {
        for (long b = -23; b <= 23; ++b) {
            long n1 = a * a + b * b;
            long n2 = a * a + 2 * b * b;
            if (n1 >= 1 && n1 <= bound) ++count2[n1];
            if (n2 >= 1 && n2 <= bound) ++count_skew[n2];
        }
    }
    for (long n = 1; n <= bound; ++n) {
        CHECK(Cyclotomic(Rational(count2[n])) == c_int(4) * conv4[n]);
        CHECK(Cyclotomic(Rational(count_skew[n])) == c_int(2) * conv48[n]);
    }
}

TEST_CASE("derived eta leading expansions") {
    Rational ord(12);
    PuiseuxSeries flat = derived_eta(EtaDecoration::Flat, ord);
    CHECK(flat.valuation() == Rational(0));
    CHECK(flat.leading_coefficient() == c_int(1));
    PuiseuxSeries sharp = derived_eta(EtaDecoration::Sharp, ord);
    CHECK(sharp.valuation() == make_rational(1, 8));
    PuiseuxSeries top = derived_eta(EtaDecoration::Top, ord);
    CHECK(top.valuation() == make_rational(1, 3));
    // flat = sum (-1)^n q^{n^2/2}
    for (long n = 1; n * n < 20; ++n)
        CHECK(flat.coefficient(make_rational(n * n, 2)) == c_int(n % 2 ? -2 : 2));
    // sharp = sum q^{(2n+1)^2/8}
    for (long n = 0; (2 * n + 1) * (2 * n + 1) < 64; ++n)
        CHECK(sharp.coefficient(make_rational((2 * n + 1) * (2 * n + 1), 8)) == c_int(1));
    // natural = theta^{<1/2>}
    PuiseuxSeries nat = derived_eta(EtaDecoration::Natural, ord);
    CHECK(equal_to(nat, theta(ord * 2).rescale(make_rational(1, 2)), ord));
}

TEST_CASE("hex lattice sums match the eta forms") {
    Rational ord(8);
    // E_{chi_3} = sum q^{m^2+mn+n^2} over Z^2
    PuiseuxSeries e3 = eisenstein_weight1(named_chi(3), ord);
    CHECK(equal_to(hex_lattice(0, 0, ord), e3, ord));
    // eta^{bot <3>} = sum zeta_3^{m-n} q^{m^2+mn+n^2}
    PuiseuxSeries bot3 = derived_eta(EtaDecoration::Bot, ord / 3 + 1).rescale(Rational(3));
    CHECK(equal_to(hex_lattice(1, 0, ord), bot3, ord));
    // 3 eta^{top} = sum over (Z + 1/3)^2
    PuiseuxSeries top = derived_eta(EtaDecoration::Top, ord).scaled(c_int(3));
    CHECK(equal_to(hex_lattice(0, 1, ord), top, ord));
}

TEST_CASE("eta quotients") {
    Rational ord(30);
    EtaQuotientSpec delta{1, {{1, 24}}};
    PuiseuxSeries d = eta_quotient(delta, ord);
    CHECK(d.valuation() == Rational(1));
    EtaQuotientSpec lvl2{2, {{1, 1}, {2, 1}}};
    CHECK(eta_quotient(lvl2, ord).valuation() == make_rational(1, 8));
    // negative exponents are legal values
    EtaQuotientSpec pole{2, {{1, -24}, {2, 24}}};
    PuiseuxSeries p = eta_quotient(pole, Rational(5));
    CHECK(p.valuation() == Rational(1));
}

TEST_CASE("cusp vanishing orders") {
    EtaQuotientSpec delta{1, {{1, 24}}};
    CHECK(cusp_vanishing_order(delta, 1) == Rational(1));
    EtaQuotientSpec lvl2{2, {{1, 1}, {2, 1}}};
    CHECK(cusp_vanishing_order(lvl2, 2) == make_rational(1, 8));
    CHECK(cusp_vanishing_order(lvl2, 1) == make_rational(1, 8));
    // the vanishing order at infinity (m = N) matches the q-expansion
    CHECK(cusp_vanishing_order(lvl2, 2) == eta_quotient(lvl2, Rational(2)).valuation());
    CHECK(cusp_vanishing_order(delta, 1) == eta_quotient(delta, Rational(2)).valuation());
}

TEST_CASE("f_{N,r} leading exponents and rational powers of eta") {
    Rational ord(10);
    PuiseuxSeries f51 = f_nr(5, 1, ord);
    CHECK(f51.valuation() == Rational(0));
    CHECK(f51.leading_coefficient() == c_int(1));
    PuiseuxSeries f53 = f_nr(5, 3, ord);
    CHECK(f53.valuation() == make_rational(1, 5));
    // eta^{24/5} has leading exponent 1/5
    PuiseuxSeries e = eta(ord * 5);
    CHECK(e.pow_rational(make_rational(24, 5)).valuation() == make_rational(1, 5));
    CHECK_THROWS(f_nr(4, 1, ord));
    CHECK_THROWS(f_nr(5, 2, ord));
}

TEST_CASE("Rogers-Ramanujan products") {
    Rational ord(8);
    PuiseuxSeries f51 = f_nr(5, 1, ord);
    PuiseuxSeries prod = qprod(0, 1, make_rational(2, 5), 1, false, ord) *
                         qprod(1, 5, Rational(-1), 1, false, ord) *
                         qprod(4, 5, Rational(-1), 1, false, ord);
    CHECK(equal_to(f51, prod, ord));
    PuiseuxSeries f53 = f_nr(5, 3, ord);
    PuiseuxSeries prod3 = (qprod(0, 1, make_rational(2, 5), 1, false, ord) *
                           qprod(2, 5, Rational(-1), 1, false, ord) *
                           qprod(3, 5, Rational(-1), 1, false, ord))
                              .shifted(make_rational(1, 5));
    CHECK(equal_to(f53, prod3, ord));
}

TEST_CASE("eta_chi5 and its conjugate") {
    Rational ord(6);
    PuiseuxSeries e = eta_chi5(false, ord);
    PuiseuxSeries ebar = eta_chi5(true, ord);
    PuiseuxSeries f51 = f_nr(5, 1, ord);
    CHECK(equal_to(f51, (e + ebar).scaled(Cyclotomic(make_rational(1, 2))), ord));
    PuiseuxSeries f53 = f_nr(5, 3, ord);
    CHECK(equal_to(f53, (e - ebar).scaled(cyc_i() * Cyclotomic(make_rational(1, 2))), ord));
}

TEST_CASE("bracket families: defining expansions") {
    Rational ord(6);
    // [eta, c/4] = eta^flat + 2 zeta_8^c eta^sharp
    for (long c : {1L, 3L, 5L, 7L}) {
        PuiseuxSeries lhs = bracket_eta(c, 4, ord);
        PuiseuxSeries rhs = derived_eta(EtaDecoration::Flat, ord) +
                            derived_eta(EtaDecoration::Sharp, ord)
                                .scaled(c_int(2) * Cyclotomic::root_of_unity(8, c));
        CHECK(equal_to(lhs, rhs, ord));
    }
    // sqrt([eta,1/2][eta,3/2]) = eta^natural
    PuiseuxSeries prod = bracket_eta(1, 2, ord) * bracket_eta(3, 2, ord);
    CHECK(equal_to(prod.nth_root(2), derived_eta(EtaDecoration::Natural, ord), ord));
    PuiseuxSeries s0 = bracket_s(0, 4, Rational(4));
    CHECK(s0.valuation() == Rational(0));
    CHECK(s0.leading_coefficient() == c_int(1));
}

TEST_CASE("[E,k/9] leading expansions") {
    // products of paired [E, k/9] start 1 - (zeta_9^a + zeta_9^b) q^{1/9} + ...
    // (the displayed exponents sit on the 1/9 lattice, not 1/27)
    Rational ord = make_rational(3, 9);
    auto z9 = [](long k) { return Cyclotomic::root_of_unity(9, k); };
    PuiseuxSeries p18 = bracket_E9(1, ord) * bracket_E9(8, ord);
    CHECK(p18.coefficient(Rational(0)) == c_int(1));
    CHECK(p18.coefficient(make_rational(1, 9)) == -(z9(2) + z9(7)));
    CHECK(p18.coefficient(make_rational(2, 9)) == c_int(1) - z9(1) - z9(8));
    PuiseuxSeries p45 = bracket_E9(4, ord) * bracket_E9(5, ord);
    CHECK(p45.coefficient(make_rational(1, 9)) == -(z9(1) + z9(8)));
    CHECK(p45.coefficient(make_rational(2, 9)) == c_int(1) - z9(4) - z9(5));
    PuiseuxSeries p72 = bracket_E9(7, ord) * bracket_E9(2, ord);
    CHECK(p72.coefficient(make_rational(1, 9)) == -(z9(4) + z9(5)));
    CHECK(p72.coefficient(make_rational(2, 9)) == c_int(1) - z9(2) - z9(7));
}

TEST_CASE("divisor-sum identity behind E8 = E4^2") {
    // sum d^7 = sum d^3 + 120 sum_{i<n} sigma_3(i) sigma_3(n-i)
    long bound = 200;
    std::vector<Rational> s3(bound + 1, Rational(0)), s7(bound + 1, Rational(0));
    for (long d = 1; d <= bound; ++d) {
        Rational d3 = rational_pow(Rational(d), 3), d7 = rational_pow(Rational(d), 7);
        for (long m = d; m <= bound; m += d) {
            s3[m] += d3;
            s7[m] += d7;
        }
    }
    for (long n = 1; n <= bound; ++n) {
        Rational conv(0);
        for (long i = 1; i < n; ++i) conv += s3[i] * s3[n - i];
        CHECK(s7[n] == s3[n] + Rational(120) * conv);
    }
}
