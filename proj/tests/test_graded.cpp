#include "qmod/structure.hpp"

#include "qmod/catalog.hpp"
#include "qmod/dsl.hpp"
#include "qmod/forms.hpp"
#include "qmod/hilbert.hpp"

#include <doctest.h>

#include <set>

using namespace qmod;

namespace {

Rational coeff(const PuiseuxSeries& s, const Rational& e) {
    Cyclotomic c = s.coefficient(e);
    return c.is_zero() ? Rational(0) : c.rational_value();
}

}  // namespace

TEST_CASE("hilbert expansion basics") {
    // 1/((1-t^2)(1-t^3)) -> 1,0,1,1,1,1,2,1,2,2,...
    PuiseuxSeries s = hilbert_eval("1/((1-t^2)*(1-t^3))", Rational(10));
    std::vector<long> expect = {1, 0, 1, 1, 1, 1, 2, 1, 2, 2};
    for (long k = 0; k < 10; ++k) CHECK(coeff(s, Rational(k)) == expect[k]);
    // 1/(1-t) is all ones
    PuiseuxSeries ones = hilbert_eval("1/(1-t)", Rational(12));
    for (long k = 0; k < 12; ++k) CHECK(coeff(ones, Rational(k)) == 1);
    // the half-integer module series: coefficients 8k-4+delta_{k,0}+delta_{k,1}
    PuiseuxSeries g8 = hilbert_eval("(1+t^(1/2))^3/(1-t^(1/2))^2", Rational(10));
    CHECK(coeff(g8, Rational(0)) == 1);
    CHECK(coeff(g8, make_rational(1, 2)) == 5);
    for (long k = 2; k < 20; ++k) CHECK(coeff(g8, make_rational(k, 2)) == 8 * k - 4);
}

TEST_CASE("hilbert coefficients count monomials") {
    for (long m = 1; m <= 6; ++m) {
        for (long n = 1; n <= 6; ++n) {
            std::string text = "1/((1-t^" + std::to_string(m) + ")*(1-t^" + std::to_string(n) + "))";
            PuiseuxSeries s = hilbert_eval(text, Rational(41));
            for (long k = 0; k <= 40; ++k) {
                long count = 0;
                for (long a = 0; a * m <= k; ++a)
                    if ((k - a * m) % n == 0) ++count;
                CHECK(coeff(s, Rational(k)) == count);
            }
        }
    }
}

TEST_CASE("the [k/n]+1 display holds in its m=1 reading") {
    for (long n = 1; n <= 8; ++n) {
        std::string text = "1/((1-t)*(1-t^" + std::to_string(n) + "))";
        PuiseuxSeries s = hilbert_eval(text, Rational(41));
        for (long k = 0; k <= 40; ++k) CHECK(coeff(s, Rational(k)) == k / n + 1);
    }
}

TEST_CASE("HilbertSeries struct expansion") {
    HilbertSeries h;
    h.numerator = {{Rational(1), Rational(0)}};
    h.denominator = {Rational(2), Rational(3)};
    PuiseuxSeries s = h.expand(Rational(10));
    CHECK(coeff(s, Rational(6)) == 2);
    CHECK(h.coefficient(Rational(6), Rational(10)) == 2);
}

TEST_CASE("series_rank certifies independence and dependence") {
    Rational ord(10);
    auto q = [&](long k) {
        return PuiseuxSeries::monomial(Cyclotomic(Rational(1)), Rational(k), ord);
    };
    std::vector<PuiseuxSeries> rows = {q(0) + q(1), q(1), q(2)};
    CHECK(series_rank(rows, ord) == 3);
    rows.push_back(q(0) + q(2));  // dependent on the others
    CHECK(series_rank(rows, ord) == 3);
    // rank is precision-monotone
    for (long cut = 2; cut <= 8; ++cut) {
        long r1 = series_rank(rows, Rational(cut));
        long r2 = series_rank(rows, Rational(cut + 1));
        CHECK(r1 <= r2);
    }
}

TEST_CASE("theta rescale families span rank 4") {
    Rational ord(70);
    PuiseuxSeries t = forms::theta(ord);
    std::vector<PuiseuxSeries> fam1 = {t, t.rescale(Rational(4)), t.rescale(Rational(16)),
                                       t.rescale(Rational(64))};
    CHECK(series_rank(fam1, ord) == 4);
    std::vector<PuiseuxSeries> fam2 = {t.rescale(Rational(2)), t.rescale(Rational(8)),
                                       t.rescale(Rational(32)),
                                       forms::theta_chi(named_chi(8), ord)};
    CHECK(series_rank(fam2, ord) == 4);
}

TEST_CASE("free polynomial rings reproduce the oracle dimensions") {
    // two independent roads: Hilbert series of the free ring vs the group oracle
    StructureClaim c;
    c.id = "inline-gamma2";
    c.type = StructureClaim::Type::PolynomialRing;
    c.generators = {{"eta.flat^4", Rational(2)}, {"eta.sharp^4", Rational(2)}};
    c.oracle.kind = DimOracle::Kind::Group;
    c.oracle.group = SubgroupSpec::gamma(2);
    for (long w = 0; w <= 8; w += 2) c.weights.push_back(Rational(w));
    c.order = Rational(10);
    auto reports = verify_claim(c);
    for (const auto& r : reports) {
        CHECK(r.status == RankReport::Status::Match);
        Rational h = coeff(hilbert_eval("1/(1-t^2)^2", Rational(10)), r.weight);
        CHECK(h == r.expected);
    }
}

TEST_CASE("deficient and overfull claims are detected") {
    StructureClaim c;
    c.id = "inline-bogus";
    c.type = StructureClaim::Type::PolynomialRing;
    c.generators = {{"eta^8", Rational(4)}, {"(2*eta)^8", Rational(4)}};
    c.oracle.kind = DimOracle::Kind::Sequence;
    c.oracle.step = Rational(4);
    c.oracle.seq = {1, 2};
    c.weights = {Rational(4)};
    c.order = Rational(10);
    auto reports = verify_claim(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].status == RankReport::Status::Deficient);

    StructureClaim c2 = c;
    c2.generators = {{"E1(4)", Rational(4)}, {"E1(4) + eta^8", Rational(4)}};
    c2.oracle.seq = {1, 1};
    auto reports2 = verify_claim(c2);
    CHECK(reports2[0].status == RankReport::Status::Overfull);
}

TEST_CASE("insufficient precision is reported, not passed") {
    StructureClaim c;
    c.id = "inline-short";
    c.type = StructureClaim::Type::PolynomialRing;
    c.generators = {{"E1(4)", Rational(4)}, {"E1(6)", Rational(6)}};
    c.oracle.kind = DimOracle::Kind::Group;
    c.oracle.group = SubgroupSpec::gamma(1);
    c.weights = {Rational(24)};
    c.order = Rational(2);  // far too few columns for dimension 3
    auto reports = verify_claim(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].status == RankReport::Status::Insufficient);
}

TEST_CASE("committed claims file loads and spot-checks") {
    auto claims = load_claims(default_claims_path());
    CHECK(claims.size() >= 15);
    std::set<std::string> ids;
    for (const auto& c : claims) {
        CHECK(!c.id.empty());
        CHECK(ids.insert(c.id).second);  // unique
        CHECK(!c.weights.empty());
    }
    for (auto& c : claims) {
        if (c.id != "gamma3-ring") continue;
        c.weights = {Rational(1), Rational(2), Rational(3)};
        for (const auto& r : verify_claim(c)) CHECK(r.status == RankReport::Status::Match);
    }
}

TEST_CASE("cusp ideal claim mechanics") {
    StructureClaim c;
    c.id = "inline-cusp-gamma1";
    c.type = StructureClaim::Type::CuspIdeal;
    c.group = SubgroupSpec::gamma(1);
    c.cusp_generator = "eta^24";
    c.weight_shift = Rational(12);
    c.generators = {{"E1(4)", Rational(4)}, {"E1(6)", Rational(6)}};
    for (long w = 1; w <= 16; ++w) c.weights.push_back(Rational(w));
    c.order = Rational(20);
    for (const auto& r : verify_claim(c)) CHECK(r.status == RankReport::Status::Match);
}

TEST_CASE("gamma16 dimension display matches the group formula at integer weights") {
    PuiseuxSeries h = hilbert_eval("((1+t^(1/2))^3 + 8*t^(3/4))*(1+t^(1/4))/(1-t^(1/4))^2",
                                   Rational(8));
    SubgroupSpec g16 = SubgroupSpec::gamma(16);
    for (long k = 2; k <= 6; ++k) {
        Dimension d = dim_modular(g16, k);
        REQUIRE(!d.lower_bound_only);
        CHECK(coeff(h, Rational(k)) == d.value);
    }
}
