#include "qmod/forms.hpp"

#include <mutex>
#include <numeric>

namespace qmod {
namespace forms {

namespace {

Cyclotomic one_c() { return Cyclotomic(Rational(1)); }

Cyclotomic zeta(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }

// Cache for the two expensive atoms; every other form is a finite
// combination of these. Readers may share the cached value concurrently.
struct SeriesCache {
    std::mutex mtx;
    std::map<std::string, PuiseuxSeries> entries;

    PuiseuxSeries get(const std::string& key, const Rational& order,
                      const std::function<PuiseuxSeries(const Rational&)>& build) {
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto it = entries.find(key);
            if (it != entries.end() && it->second.precision() >= order) return it->second;
        }
        PuiseuxSeries s = build(order);
        std::lock_guard<std::mutex> lock(mtx);
        auto it = entries.find(key);
        if (it == entries.end() || it->second.precision() < s.precision()) entries[key] = s;
        return s;
    }
};

SeriesCache& cache() {
    static SeriesCache c;
    return c;
}

long order_ceil_long(const Rational& order) {
    return to_long(rational_floor(order)) + 1;
}

}  // namespace

PuiseuxSeries eta(const Rational& order) {
    return cache().get("eta", order, [](const Rational& ord) {
        // pentagonal numbers theorem: sum over n in Z of (-1)^n q^{(6n-1)^2/24}
        std::vector<std::pair<Rational, Cyclotomic>> terms;
        Rational bound = ord;
        for (long n = 0;; ++n) {
            Rational e = make_rational((6 * n - 1) * (6 * n - 1), 24);
            Rational e2 = make_rational((6 * (-n) - 1) * (6 * (-n) - 1), 24);
            bool any = false;
            Cyclotomic sign{Rational(n % 2 == 0 ? 1 : -1)};
            if (e < bound) {
                terms.emplace_back(e, sign);
                any = true;
            }
            if (n > 0 && e2 < bound) {
                terms.emplace_back(e2, sign);
                any = true;
            }
            if (!any && n > 0) break;
        }
        return PuiseuxSeries::from_terms(terms, bound);
    });
}

PuiseuxSeries eta_product(const Rational& order) {
    long nmax = order_ceil_long(order);
    PuiseuxSeries acc = PuiseuxSeries::constant(one_c(), order);
    for (long n = 1; n <= nmax; ++n) {
        std::vector<std::pair<Rational, Cyclotomic>> terms = {
            {Rational(0), one_c()}, {Rational(n), Cyclotomic(Rational(-1))}};
        acc = acc * PuiseuxSeries::from_terms(terms, order);
    }
    return acc.shifted(make_rational(1, 24));
}

PuiseuxSeries eisenstein_level1(long k, const Rational& order) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("E_{1,k} needs even k >= 2");
    return cache().get("E1(" + std::to_string(k) + ")", order, [k](const Rational& ord) {
        long nmax = order_ceil_long(ord);
        std::vector<Rational> sigma(nmax + 1, Rational(0));
        for (long d = 1; d <= nmax; ++d) {
            Rational dk = rational_pow(Rational(d), k - 1);
            for (long m = d; m <= nmax; m += d) sigma[m] += dk;
        }
        Rational c = Rational(-2 * k) / bernoulli_number(k);
        c.canonicalize();
        std::vector<std::pair<Rational, Cyclotomic>> terms;
        terms.emplace_back(Rational(0), one_c());
        for (long n = 1; n <= nmax; ++n) terms.emplace_back(Rational(n), Cyclotomic(c * sigma[n]));
        return PuiseuxSeries::from_terms(terms, ord);
    });
}

PuiseuxSeries eisenstein_levelN_weight2(long n, const Rational& order) {
    if (n < 2) throw std::domain_error("E_{N,2} needs N >= 2");
    PuiseuxSeries e = eisenstein_level1(2, order);
    PuiseuxSeries combo = e.rescale(Rational(n)).scaled(Cyclotomic(Rational(n))) - e;
    return combo.scaled(Cyclotomic(make_rational(1, n - 1)));
}

PuiseuxSeries eisenstein_weight1(const UnitMap& chi, const Rational& order) {
    if (!chi.is_odd()) throw std::domain_error("E_chi needs an odd character");
    if (!chi.is_primitive()) throw std::domain_error("E_chi needs a primitive character");
    long nmax = order_ceil_long(order);
    auto sums = char_divisor_sums(chi, nmax);
    Cyclotomic c = Cyclotomic(Rational(-2)) / bernoulli_b_chi(chi);
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    terms.emplace_back(Rational(0), one_c());
    for (long m = 1; m <= nmax; ++m)
        if (!sums[m].is_zero()) terms.emplace_back(Rational(m), c * sums[m]);
    return PuiseuxSeries::from_terms(terms, order);
}

PuiseuxSeries eisenstein_G(const UnitMap& psi, const UnitMap& chi, const Rational& order) {
    if (psi.is_trivial() || chi.is_trivial())
        throw std::domain_error("G_{psi,chi} needs nontrivial characters");
    if ((psi * chi)(-1) != Cyclotomic(Rational(-1)))
        throw std::domain_error("G_{psi,chi} needs psi*chi odd");
    long nmax = order_ceil_long(order);
    ArithmeticFunction f = ArithmeticFunction::from_unit_map(psi, nmax);
    ArithmeticFunction g = ArithmeticFunction::from_unit_map(chi, nmax);
    ArithmeticFunction h = dirichlet_convolve(f, g, nmax);
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    for (long m = 1; m <= nmax; ++m)
        if (!h.at(m).is_zero()) terms.emplace_back(Rational(m), h.at(m));
    return PuiseuxSeries::from_terms(terms, order);
}

PuiseuxSeries theta(const Rational& order) {
    return cache().get("theta", order, [](const Rational& ord) {
        std::vector<std::pair<Rational, Cyclotomic>> terms;
        terms.emplace_back(Rational(0), one_c());
        for (long n = 1; Rational(n) * n < ord; ++n)
            terms.emplace_back(Rational(n * n), Cyclotomic(Rational(2)));
        return PuiseuxSeries::from_terms(terms, ord);
    });
}

PuiseuxSeries theta_chi(const UnitMap& chi, const Rational& order) {
    if (!chi.is_even()) throw std::domain_error("theta_chi needs an even character");
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    for (long n = 1; Rational(n) * n < order; ++n) {
        Cyclotomic c = chi(n);
        if (!c.is_zero()) terms.emplace_back(Rational(n * n), c);
    }
    return PuiseuxSeries::from_terms(terms, order);
}

PuiseuxSeries decorate(const PuiseuxSeries& f, EtaDecoration which) {
    switch (which) {
        case EtaDecoration::Flat:
            return f.slash_down(2);
        case EtaDecoration::Sharp:
            return f.slash_up(2);
        case EtaDecoration::Natural: {
            PuiseuxSeries num = f.pow_int(5);
            PuiseuxSeries den =
                f.rescale(make_rational(1, 2)).pow_int(2) * f.rescale(Rational(2)).pow_int(2);
            return num / den;
        }
        case EtaDecoration::Bot:
            return f.slash_down(3);
        case EtaDecoration::Top:
            return f.slash_up(3);
        case EtaDecoration::NW:
            return f.slash_down(3).twist(1);
        case EtaDecoration::SW:
            return f.slash_down(3).twist(-1);
    }
    throw std::logic_error("unknown decoration");
}

PuiseuxSeries derived_eta(EtaDecoration which, const Rational& order) {
    static const char* names[] = {"flat", "sharp", "natural", "bot", "top", "nw", "sw"};
    std::string key = std::string("eta.") + names[static_cast<int>(which)];
    return cache().get(key, order, [which](const Rational& ord) {
        long n = (which == EtaDecoration::Flat || which == EtaDecoration::Sharp ||
                  which == EtaDecoration::Natural)
                     ? 2
                     : 3;
        // slash operators divide precision by roughly n; over-provision eta
        Rational inner = ord * Rational(n) + Rational(2);
        return decorate(eta(inner), which);
    });
}

PuiseuxSeries eta_quotient(const EtaQuotientSpec& spec, const Rational& order) {
    for (const auto& [d, r] : spec.exponents)
        if (d <= 0 || spec.level % d != 0) throw std::domain_error("eta quotient: d must divide N");
    Rational inner = order + Rational(2);
    long total_pow = 0;
    for (const auto& [d, r] : spec.exponents) total_pow += std::abs(r);
    inner += Rational(std::max(2L, total_pow / 12));
    PuiseuxSeries acc = PuiseuxSeries::constant(one_c(), inner);
    PuiseuxSeries base = eta(inner);
    for (const auto& [d, r] : spec.exponents) {
        if (r == 0) continue;
        acc = acc * base.rescale(Rational(d)).pow_int(r);
    }
    return acc;
}

Rational cusp_vanishing_order(const EtaQuotientSpec& spec, long m) {
    if (m < 1) throw std::domain_error("cusp denominator must be positive");
    long n = spec.level;
    // (N/24) sum_{d|N} gcd(d,m)^2 r_d / (gcd(m, N/m) d m); cusp denominators
    // are taken mod N, so m | N after reduction.
    long mr = std::gcd(m, n);
    if (mr == 0) mr = n;
    long gm = std::gcd(mr, n / mr);
    Rational sum(0);
    for (const auto& [d, r] : spec.exponents) {
        long g = std::gcd(d, mr);
        sum += make_rational(g * g * r, gm * d * mr);
    }
    Rational out = sum * make_rational(n, 24);
    out.canonicalize();
    return out;
}

PuiseuxSeries f_nr(long n, long r, const Rational& order) {
    if (n < 3 || n % 2 == 0 || r % 2 == 0 || r < 1 || r > n - 2)
        throw std::domain_error("f_{N,r} needs odd N >= 3 and odd 1 <= r <= N-2");
    Rational inner = order + Rational(2);
    PuiseuxSeries eta_pow = eta(inner).pow_rational(make_rational(-3, n));
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    for (long p = 0;; ++p) {
        Rational e1 = make_rational(n * p * p + r * p, 2);
        Rational e2 = make_rational(n * p * p - r * p, 2);
        Cyclotomic sign{Rational(p % 2 == 0 ? 1 : -1)};
        bool any = false;
        if (e1 < inner) {
            terms.emplace_back(e1, sign);
            any = true;
        }
        if (p > 0 && e2 < inner) {
            terms.emplace_back(e2, sign);
            any = true;
        }
        if (!any && p > 0) break;
    }
    PuiseuxSeries theta_part = PuiseuxSeries::from_terms(terms, inner);
    return (eta_pow * theta_part).shifted(make_rational(r * r, 8 * n));
}

PuiseuxSeries eta_chi5(bool conjugate, const Rational& order) {
    std::string key = conjugate ? "etachi5bar" : "etachi5";
    return cache().get(key, order, [conjugate](const Rational& ord) {
        Rational inner = ord * Rational(5) + Rational(2);
        PuiseuxSeries e = eta(inner * Rational(5));
        PuiseuxSeries down = e.slash_down(5).nth_root(5);
        PuiseuxSeries up = e.slash_up(5).nth_root(5);
        Cyclotomic c = one_c() - Rational(2) * cyc_i();
        PuiseuxSeries s = (down + up.scaled(c)).nth_root(2);
        return conjugate ? s.coeff_map_sigma(-1) : s;
    });
}

namespace {

// sqrt of the natural/flat pair rescaled by 1/2: the building blocks of the
// o/u/d family. Leading coefficients are 1, so the branches are canonical.
PuiseuxSeries sqrt_nat_half(const Rational& ord) {
    return derived_eta(EtaDecoration::Natural, ord * 2).rescale(make_rational(1, 2)).nth_root(2);
}
PuiseuxSeries sqrt_flat_half(const Rational& ord) {
    return derived_eta(EtaDecoration::Flat, ord * 2).rescale(make_rational(1, 2)).nth_root(2);
}

}  // namespace

PuiseuxSeries bracket_eta(long num, long den, const Rational& order) {
    if (den == 2 || den == 4 || den == 8) {
        if (num % 2 == 0) throw std::domain_error("[eta, c/2^j] needs odd c");
        return derived_eta(EtaDecoration::Natural, order * Rational(den) + 1)
            .rescale(make_rational(1, den))
            .twist(num);
    }
    if (den == 9) {
        if (num % 3 == 0) throw std::domain_error("[eta, k/9] needs k prime to 3");
        return derived_eta(EtaDecoration::Bot, order * Rational(3) + 1)
            .rescale(make_rational(1, 3))
            .twist(num);
    }
    throw std::domain_error("[eta, c/d] supports d in {2,4,8,9}");
}

PuiseuxSeries bracket_u(long k, const Rational& order) {
    long km = ((k % 8) + 8) % 8;
    PuiseuxSeries a = sqrt_nat_half(order);
    PuiseuxSeries b = sqrt_flat_half(order);
    if (km == 4) return (a - b).scaled(Cyclotomic(make_rational(1, 2)));
    Cyclotomic z = zeta(8, km);
    Cyclotomic norm = (one_c() + z).inverse();
    return (a + b.scaled(z)).scaled(norm);
}

PuiseuxSeries bracket_o(long k, const Rational& order) {
    PuiseuxSeries u = bracket_u(k, order);
    PuiseuxSeries t = u.twist(1);
    // normalize so the leading coefficient survives the twist; this pins the
    // same branch the source's formal-weight action chooses
    Cyclotomic fix = u.leading_coefficient() / t.leading_coefficient();
    return t.scaled(fix);
}

PuiseuxSeries bracket_d(long k, const Rational& order) {
    long km = ((k % 8) + 8) % 8;
    PuiseuxSeries a = derived_eta(EtaDecoration::Natural, order / 2 + 1).rescale(Rational(2)).nth_root(2);
    PuiseuxSeries b = derived_eta(EtaDecoration::Sharp, order / 2 + 1).rescale(Rational(2)).nth_root(2);
    return a + b.scaled(zeta(8, km) * cyc_sqrt2());
}

PuiseuxSeries bracket_s(long num, long den, const Rational& order) {
    if (den == 4) {
        PuiseuxSeries a = derived_eta(EtaDecoration::Natural, order * 2 + 1);
        PuiseuxSeries sharp = derived_eta(EtaDecoration::Sharp, order * 2 + 1);
        PuiseuxSeries flat = derived_eta(EtaDecoration::Flat, order * 2 + 1);
        PuiseuxSeries first =
            (a.rescale(make_rational(1, 2)) * a.rescale(Rational(2))).nth_root(2);
        PuiseuxSeries second =
            (flat.rescale(make_rational(1, 2)) * sharp.rescale(Rational(2))).nth_root(2);
        Cyclotomic c = (zeta(16, 1) + zeta(16, 15)).pow(2);
        return (first + second.scaled(c)).twist(num);
    }
    if (den == 3) {
        PuiseuxSeries bot = derived_eta(EtaDecoration::Bot, order / 3 + 1);
        PuiseuxSeries top = derived_eta(EtaDecoration::Top, order + 1);
        return (bot.rescale(Rational(3)) + top.scaled(Cyclotomic(Rational(3)))).twist(num);
    }
    if (den == 9) {
        if (num % 3 == 0) throw std::domain_error("[s, k/9] needs k prime to 3");
        return bracket_s(0, 3, order * 3 + 1).rescale(make_rational(1, 3)).twist(num);
    }
    throw std::domain_error("[s, k/d] supports d in {4,3,9}");
}

PuiseuxSeries bracket_minus_s(long k, const Rational& order) {
    return bracket_s(0, 4, order).coeff_map_sigma(3).twist(k);
}

PuiseuxSeries bracket_u3(long k, const Rational& order) {
    long km = ((k % 3) + 3) % 3;
    PuiseuxSeries x = bracket_s(0, 3, order * 3).nth_root(3);
    PuiseuxSeries y = bracket_s(1, 3, order * 3).nth_root(3);
    PuiseuxSeries z3 = bracket_s(2, 3, order * 3).nth_root(3);
    Cyclotomic third{make_rational(1, 3)};
    if (km == 0) return (x + y + z3).scaled(third);
    if (km == 1) return (x + y.scaled(zeta(3, 2)) + z3.scaled(zeta(3, 1))).scaled(third);
    return (x + y.scaled(zeta(3, 1)) + z3.scaled(zeta(3, 2))).scaled(-Cyclotomic(third));
}

namespace {

PuiseuxSeries bracket_pm9(bool s_family, long k, const Rational& order) {
    long km = ((k % 9) + 9) % 9;
    if (km % 3 == 0) throw std::domain_error("bracket argument must be prime to 3");
    auto atom = [&](long j) {
        long jm = ((j % 9) + 9) % 9;
        PuiseuxSeries base = s_family ? bracket_s(jm, 9, order * 3 + 1) : bracket_eta(jm, 9, order * 3 + 1);
        return base.nth_root(3);
    };
    PuiseuxSeries a = atom(km), b = atom(km + 3), c = atom(km - 3);
    bool first_class = (km == 1 || km == 4 || km == 7);
    Cyclotomic w1 = (zeta(3, 1) - zeta(3, 2)) * Cyclotomic(make_rational(1, 3));
    Cyclotomic w2 = (one_c() - zeta(3, 1)) * Cyclotomic(make_rational(1, 3));
    Cyclotomic v1 = (zeta(3, 2) - zeta(3, 1)) * Cyclotomic(make_rational(1, 3));
    Cyclotomic v2 = (one_c() - zeta(3, 2)) * Cyclotomic(make_rational(1, 3));
    if (s_family) {
        // [S, k/9]
        if (first_class) return a.scaled(w1) + (b + c).scaled(w2);
        return a.scaled(v1) + (b + c).scaled(v2);
    }
    // [E, k/9]
    if (first_class) return a.scaled(v1) + (b + c).scaled(v2);
    return a.scaled(w1) + (b + c).scaled(w2);
}

}  // namespace

PuiseuxSeries bracket_S9(long k, const Rational& order) { return bracket_pm9(true, k, order); }
PuiseuxSeries bracket_E9(long k, const Rational& order) { return bracket_pm9(false, k, order); }

PuiseuxSeries hex_lattice(long j, long s, const Rational& order) {
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    long bound = order_ceil_long(order);
    long range = 2 * bound + 3;
    for (long a = -range; a <= range; ++a) {
        for (long b = -range; b <= range; ++b) {
            Rational m = Rational(a) + make_rational(s, 3);
            Rational n = Rational(b) + make_rational(s, 3);
            Rational qexp = m * m + m * n + n * n;
            if (qexp >= order) continue;
            Cyclotomic c = (j == 0) ? one_c() : zeta(3, ((a - b) % 3 + 3) % 3);
            terms.emplace_back(qexp, c);
        }
    }
    return PuiseuxSeries::from_terms(terms, order);
}

PuiseuxSeries qprod(long a, long m, const Rational& alpha, long den, bool plus,
                    const Rational& order) {
    if (m < 1 || den < 1) throw std::domain_error("qprod needs positive modulus and denominator");
    PuiseuxSeries acc = PuiseuxSeries::constant(one_c(), order);
    Cyclotomic sign{Rational(plus ? 1 : -1)};
    for (long n = (a % m == 0) ? m : ((a % m) + m) % m;; n += m) {
        Rational e = make_rational(n, den);
        if (e >= order) break;
        std::vector<std::pair<Rational, Cyclotomic>> terms = {{Rational(0), one_c()}, {e, sign}};
        PuiseuxSeries factor = PuiseuxSeries::from_terms(terms, order);
        acc = acc * factor.pow_rational(alpha);
    }
    return acc;
}

}  // namespace forms
}  // namespace qmod
