#include "qmod/congruence.hpp"

#include <doctest.h>

using namespace qmod;

TEST_CASE("classical invariants") {
    Invariants g1 = invariants(SubgroupSpec::gamma(1));
    CHECK(g1.degree == 1);
    CHECK(g1.eps2 == 1);
    CHECK(g1.eps3 == 1);
    CHECK(g1.eps_inf() == 1);
    CHECK(g1.eps_inf_reg == 1);
    CHECK(g1.genus == 0);
    CHECK(g1.minus_one);

    Invariants g2 = invariants(SubgroupSpec::gamma(2));
    CHECK(g2.degree == 6);
    CHECK(g2.eps2 == 0);
    CHECK(g2.eps3 == 0);
    CHECK(g2.eps_inf() == 3);
    CHECK(g2.genus == 0);
    CHECK(g2.minus_one);  // -I == I mod 2

    Invariants g3 = invariants(SubgroupSpec::gamma(3));
    CHECK(g3.degree == 12);
    CHECK(g3.eps_inf() == 4);
    CHECK(g3.genus == 0);
    CHECK(!g3.minus_one);

    Invariants g0_11 = invariants(SubgroupSpec::gamma0(11));
    CHECK(g0_11.genus == 1);
    CHECK(g0_11.degree == 12);
    CHECK(g0_11.eps_inf() == 2);

    Invariants g8 = invariants(SubgroupSpec::gamma(8));
    CHECK(g8.degree == 192);
    CHECK(g8.eps_inf() == 24);
    CHECK(g8.genus == 5);

    Invariants g9 = invariants(SubgroupSpec::gamma(9));
    CHECK(g9.degree == 324);
    CHECK(g9.eps_inf() == 36);
    CHECK(g9.genus == 10);
}

TEST_CASE("irregular cusps show up for Gamma1(4)") {
    Invariants g14 = invariants(SubgroupSpec::gamma1(4));
    CHECK(!g14.minus_one);
    CHECK(g14.eps_inf() == 3);
    CHECK(g14.eps_inf_irr == 1);
    // while Gamma(4) has only regular cusps
    Invariants g4 = invariants(SubgroupSpec::gamma(4));
    CHECK(g4.eps_inf_irr == 0);
    CHECK(g4.eps_inf() == 6);
}

TEST_CASE("genus formula integrality across the catalog of groups") {
    for (long n = 1; n <= 32; ++n) {
        Invariants a = invariants(SubgroupSpec::gamma0(n));
        Invariants b = invariants(SubgroupSpec::gamma1(n));
        Invariants c = invariants(SubgroupSpec::gamma(n));
        // the constructor already asserts integrality; spot-check the formula
        Rational g = Rational(1) + make_rational(a.degree, 12) - make_rational(a.eps2, 4) -
                     make_rational(a.eps3, 3) - make_rational(a.eps_inf(), 2);
        CHECK(Rational(a.genus) == g);
        CHECK(b.genus >= 0);
        CHECK(c.genus >= 0);
    }
}

TEST_CASE("conjugation invariance: Gamma(N) vs Gamma_<N+1>(N^2)") {
    for (long n : {2L, 3L}) {
        Invariants lhs = invariants(SubgroupSpec::gamma(n));
        Invariants rhs = invariants(SubgroupSpec::gamma_g(n * n, {n + 1}));
        CHECK(lhs.degree == rhs.degree);
        CHECK(lhs.eps2 == rhs.eps2);
        CHECK(lhs.eps3 == rhs.eps3);
        CHECK(lhs.eps_inf_reg == rhs.eps_inf_reg);
        CHECK(lhs.eps_inf_irr == rhs.eps_inf_irr);
        CHECK(lhs.genus == rhs.genus);
    }
    // the two named examples: Gamma(2) ~ Gamma_0(4), Gamma(3) ~ Gamma_<4>(9)
    Invariants g04 = invariants(SubgroupSpec::gamma0(4));
    Invariants g2 = invariants(SubgroupSpec::gamma(2));
    CHECK(g04.degree == g2.degree);
    CHECK(g04.eps_inf() == g2.eps_inf());
}

TEST_CASE("upper and lower triangular variants are conjugate") {
    for (long n : {2L, 3L, 4L, 6L}) {
        Invariants a = invariants(SubgroupSpec::gamma0(n));
        Invariants b = invariants(SubgroupSpec::gamma_upper0(n));
        CHECK(a.degree == b.degree);
        CHECK(a.genus == b.genus);
        CHECK(a.eps_inf() == b.eps_inf());
        Invariants c = invariants(SubgroupSpec::gamma1(n));
        Invariants d = invariants(SubgroupSpec::gamma_upper1(n));
        CHECK(c.degree == d.degree);
        CHECK(c.eps_inf_irr == d.eps_inf_irr);
    }
    Invariants inter = invariants(SubgroupSpec::intersect00(2, 2));
    CHECK(inter.degree == invariants(SubgroupSpec::gamma0(4)).degree);
}

TEST_CASE("level-1 dimension ladder") {
    SubgroupSpec g1 = SubgroupSpec::gamma(1);
    // dim M(1)_{2k} = [k/6] + (0 if k = 1 mod 6 else 1)
    for (long k = 0; k <= 20; ++k) {
        long expect = k / 6 + ((k % 6) == 1 ? 0 : 1);
        CHECK(dim_modular(g1, 2 * k).value == expect);
    }
    CHECK(dim_modular(g1, 12).value == 2);
    CHECK(dim_modular(g1, 14).value == 1);
    CHECK(dim_cusp(g1, 12).value == 1);
    CHECK(dim_modular(g1, 3).value == 0);  // -I kills odd weights
}

TEST_CASE("Gamma(2) and Gamma(3) dimension laws") {
    SubgroupSpec g2 = SubgroupSpec::gamma(2);
    for (long k = 1; k <= 10; ++k) CHECK(dim_modular(g2, 2 * k).value == k + 1);
    CHECK(dim_cusp(g2, 2).value == 0);
    SubgroupSpec g3 = SubgroupSpec::gamma(3);
    for (long k = 1; k <= 10; ++k) {
        Dimension d = dim_modular(g3, k);
        CHECK(!d.lower_bound_only);
        CHECK(d.value == k + 1);
    }
}

TEST_CASE("weight-1 cases") {
    // Gamma(4): eps_reg = 6 > 2g-2 = -2, dim M_1 = 3
    Dimension d4 = dim_modular(SubgroupSpec::gamma(4), 1);
    CHECK(!d4.lower_bound_only);
    CHECK(d4.value == 3);
    CHECK(dim_cusp(SubgroupSpec::gamma(4), 1).value == 0);
    // Gamma(8): 24 regular cusps, genus 5: still exact
    Dimension d8 = dim_modular(SubgroupSpec::gamma(8), 1);
    CHECK(!d8.lower_bound_only);
    CHECK(d8.value == 12);
    // Gamma(12): eps_reg = 2g-2 = 48, only a lower bound
    Dimension d12 = dim_modular(SubgroupSpec::gamma(12), 1);
    CHECK(d12.lower_bound_only);
    CHECK(d12.value == 24);
}

TEST_CASE("dim_cusp case split") {
    SubgroupSpec g4 = SubgroupSpec::gamma(4);
    Invariants inv = invariants(g4);
    for (long k = 3; k <= 11; k += 2) {
        Dimension m = dim_modular(g4, k);
        CHECK(dim_cusp(g4, k).value == m.value - inv.eps_inf_reg);
    }
    for (long k = 4; k <= 12; k += 2) {
        Dimension m = dim_modular(g4, k);
        CHECK(dim_cusp(g4, k).value == m.value - inv.eps_inf());
    }
    CHECK(dim_cusp(g4, 2).value == inv.genus);
}

TEST_CASE("rational-weight dimension formula") {
    // N = 5: dim M(Gamma(5))_{k/5} = k + 1
    for (long k = 1; k <= 12; k += 2) CHECK(dim_rational_weight(5, k) == k + 1);
    // N = 9, k = 3 evaluates to dim M(Gamma(9))_1 = 18
    CHECK(dim_rational_weight(9, 3) == 18);
    // integrality sweep over odd levels
    for (long n = 5; n <= 27; n += 2) {
        for (long k = 1; k <= 12; ++k) {
            if (Rational(k) * (n - 3) <= Rational(4) * (n - 6)) continue;
            CHECK_NOTHROW(dim_rational_weight(n, k));
        }
    }
    CHECK_THROWS(dim_rational_weight(4, 3));
    CHECK_THROWS(dim_rational_weight(9, 1));  // below the validity bound
}

TEST_CASE("Gamma(9) weight ladder against the rational-weight formula") {
    // integer weights: k/3 with 3 | k, matching dim_modular
    SubgroupSpec g9 = SubgroupSpec::gamma(9);
    for (long k = 3; k <= 36; k += 3) {
        long w = k / 3;
        Dimension d = dim_modular(g9, w);
        if (d.lower_bound_only) continue;
        CHECK(d.value == dim_rational_weight(9, k));
    }
}
