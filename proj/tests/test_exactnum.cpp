#include "qmod/cyclotomic.hpp"

#include <doctest.h>

#include <random>

using namespace qmod;

namespace {

Cyclotomic zeta(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }

Cyclotomic random_cyclotomic(std::mt19937& rng, long order) {
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    long deg = euler_phi(order);
    Cyclotomic acc;
    for (long j = 0; j < deg; ++j) {
        long c = coeff(rng);
        if (c == 0) continue;
        acc += Cyclotomic(make_rational(c, den(rng))) * zeta(order, j);
    }
    return acc;
}

}  // namespace

TEST_CASE("roots of unity match the small examples") {
    CHECK(zeta(2, 1) == Cyclotomic(Rational(-1)));
    CHECK(zeta(4, 1) == cyc_i());
    CHECK(zeta(3, 3) == Cyclotomic(Rational(1)));
    // zeta_3 = (-1 + sqrt(3) i) / 2
    CHECK(Rational(2) * zeta(3, 1) + Cyclotomic(Rational(1)) == cyc_sqrt3_i());
}

TEST_CASE("basic arithmetic identities") {
    CHECK(zeta(3, 1) + zeta(3, 2) == Cyclotomic(Rational(-1)));
    Cyclotomic s2 = cyc_sqrt2();
    CHECK(s2 * s2 == Cyclotomic(Rational(2)));
    Cyclotomic one{Rational(1)};
    CHECK(one / (one + cyc_i()) ==
          (one - cyc_i()) * Cyclotomic(make_rational(1, 2)));
    CHECK(cyc_sqrt5() * cyc_sqrt5() == Cyclotomic(Rational(5)));
    CHECK(cyc_sqrt3_i() * cyc_sqrt3_i() == Cyclotomic(Rational(-3)));
}

TEST_CASE("cyclotomic polynomials") {
    const auto& p1 = cyclotomic_polynomial(1);
    CHECK(p1.size() == 2);  // x - 1
    CHECK(p1[0] == -1);
    CHECK(p1[1] == 1);
    const auto& p4 = cyclotomic_polynomial(4);
    CHECK(p4.size() == 3);  // x^2 + 1
    CHECK(p4[0] == 1);
    CHECK(p4[1] == 0);
    CHECK(p4[2] == 1);
    // Phi_12 = x^4 - x^2 + 1, cross-checked by dividing x^12 - 1 by the
    // lower-order factors with exact polynomial division (how the cache
    // builds it) and by evaluation at a few integers.
    const auto& p12 = cyclotomic_polynomial(12);
    CHECK(p12.size() == 5);
    CHECK(p12[0] == 1);
    CHECK(p12[1] == 0);
    CHECK(p12[2] == -1);
    CHECK(p12[3] == 0);
    CHECK(p12[4] == 1);
    for (long x : {2L, 3L, 5L}) {
        Integer lhs = 1;
        for (long i = 0; i < 12; ++i) lhs *= x;
        lhs -= 1;
        Integer prod = 1;
        for (long d : {1L, 2L, 3L, 4L, 6L, 12L}) {
            const auto& pd = cyclotomic_polynomial(d);
            Integer v = 0, xp = 1;
            for (const auto& c : pd) {
                v += c * xp;
                xp *= x;
            }
            prod *= v;
        }
        CHECK(lhs == prod);
    }
}

TEST_CASE("galois action") {
    CHECK(cyc_i().galois(-1) == -cyc_i());
    CHECK(zeta(8).galois(3) == zeta(8, 3));
    CHECK(Cyclotomic(make_rational(5, 7)).galois(3) == Cyclotomic(make_rational(5, 7)));
    // sigma fixes odd-order roots when the exponent collides with them
    CHECK(zeta(3).sigma(3) == zeta(3));
    CHECK(zeta(48).sigma(3) == zeta(48).galois(19));
}

TEST_CASE("field axioms on random values") {
    std::mt19937 rng(20240815);
    std::uniform_int_distribution<long> ord(1, 48);
    // divisors of 48: cross-order operands keep the common field at order 48
    static const long divisors48[] = {1, 2, 3, 4, 6, 8, 12, 16, 24, 48};
    std::uniform_int_distribution<int> pick(0, 9);
    for (int trial = 0; trial < 60; ++trial) {
        bool same_order = trial % 2;
        long L = same_order ? ord(rng) : divisors48[pick(rng)];
        Cyclotomic a = random_cyclotomic(rng, L);
        Cyclotomic b = random_cyclotomic(rng, same_order ? L : divisors48[pick(rng)]);
        Cyclotomic c = random_cyclotomic(rng, same_order ? L : divisors48[pick(rng)]);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Cyclotomic());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("galois composition and involution") {
    std::mt19937 rng(7);
    for (long L : {5L, 8L, 9L, 16L, 12L, 27L}) {
        Cyclotomic a = random_cyclotomic(rng, L);
        for (long t1 : {1L, 3L, 5L, 7L}) {
            if (std::gcd(t1, L) != 1) continue;
            for (long t2 : {1L, 3L, 5L}) {
                if (std::gcd(t2, L) != 1) continue;
                CHECK(a.galois(t2).galois(t1) == a.galois((t1 * t2) % L));
            }
        }
        CHECK(a.galois(-1).galois(-1) == a);
    }
}

TEST_CASE("root-of-unity power and sum laws") {
    for (long n = 2; n <= 24; ++n) {
        Cyclotomic z = zeta(n);
        CHECK(z.pow(n) == Cyclotomic(Rational(1)));
        Cyclotomic sum;
        for (long k = 0; k < n; ++k) sum += zeta(n, k);
        CHECK(sum == Cyclotomic());
    }
}

TEST_CASE("root-of-unity detection and nth roots") {
    auto r = (-cyc_i()).as_root_of_unity();
    REQUIRE(r.has_value());
    CHECK(zeta(r->first, r->second) == -cyc_i());
    auto root = zeta(8, 3).nth_root(2);
    REQUIRE(root.has_value());
    CHECK(root->pow(2) == zeta(8, 3));
    CHECK(Cyclotomic(Rational(8)).nth_root(3)->rational_value() == 2);
    CHECK(!Cyclotomic(Rational(2)).nth_root(2).has_value());
}
