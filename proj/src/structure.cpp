#include "qmod/structure.hpp"

#include "qmod/dsl.hpp"
#include "qmod/hilbert.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

namespace qmod {

std::optional<long> DimOracle::expected(const Rational& weight, const Rational& hilbert_order) const {
    switch (kind) {
        case Kind::Group: {
            if (!is_integer(weight)) return std::nullopt;
            Dimension d = dim_modular(group, to_long(Integer(weight.get_num())));
            if (d.lower_bound_only) return std::nullopt;
            return d.value;
        }
        case Kind::RationalWeight: {
            // weight = k (N-3) / (2N)
            Rational k = weight * 2 * rw_level / Rational(rw_level - 3);
            if (!is_integer(k)) return std::nullopt;
            long kk = to_long(Integer(k.get_num()));
            try {
                return dim_rational_weight(rw_level, kk);
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        }
        case Kind::Hilbert: {
            Cyclotomic c = hilbert_eval(hilbert, hilbert_order).coefficient(weight);
            Rational r = c.is_zero() ? Rational(0) : c.rational_value();
            if (!is_integer(r) || r < 0) throw std::logic_error("hilbert oracle gave a bad value");
            return to_long(Integer(r.get_num()));
        }
        case Kind::Sequence: {
            Rational idx = weight / step;
            if (!is_integer(idx)) return std::nullopt;
            long i = to_long(Integer(idx.get_num()));
            if (i < 0 || i >= static_cast<long>(seq.size())) return std::nullopt;
            return seq[i];
        }
    }
    return std::nullopt;
}

long series_rank(const std::vector<PuiseuxSeries>& rows, const Rational& cutoff) {
    if (rows.empty()) return 0;
    long denom = 1;
    for (const auto& r : rows) denom = std::lcm(denom, r.denom());
    long lo = 0, hi = 0;
    bool first = true;
    for (const auto& r : rows) {
        PuiseuxSeries rb = r.rebased(denom);
        if (first) {
            lo = rb.val_index();
            first = false;
        } else {
            lo = std::min(lo, rb.val_index());
        }
    }
    Rational cut = cutoff;
    hi = to_long(rational_floor(cut * denom));
    if (hi <= lo) return 0;
    long cols = hi - lo;
    std::vector<std::vector<Cyclotomic>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        PuiseuxSeries rb = r.rebased(denom);
        std::vector<Cyclotomic> row(cols);
        for (long j = 0; j < cols; ++j) {
            long idx = lo + j;
            long off = idx - rb.val_index();
            if (off >= 0 && off < static_cast<long>(rb.raw_coeffs().size()))
                row[j] = rb.raw_coeffs()[off];
        }
        m.push_back(std::move(row));
    }
    long rank = 0;
    for (long col = 0; col < cols && rank < static_cast<long>(m.size()); ++col) {
        long pivot = -1;
        for (long r = rank; r < static_cast<long>(m.size()); ++r) {
            if (!m[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        Cyclotomic inv = m[rank][col].inverse();
        for (long r = rank + 1; r < static_cast<long>(m.size()); ++r) {
            if (m[r][col].is_zero()) continue;
            Cyclotomic f = m[r][col] * inv;
            for (long j = col; j < cols; ++j) {
                if (!m[rank][j].is_zero()) m[r][j] -= f * m[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

// all exponent tuples e >= 0 with sum e_i * w_i == target
void enumerate_tuples(const std::vector<Rational>& weights, size_t i, const Rational& target,
                      std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (i == weights.size()) {
        if (target == 0) out.push_back(cur);
        return;
    }
    if (target < 0) return;
    if (i + 1 == weights.size()) {
        Rational q = target / weights[i];
        if (is_integer(q) && q >= 0) {
            cur.push_back(to_long(Integer(q.get_num())));
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (long e = 0;; ++e) {
        Rational used = weights[i] * e;
        if (used > target) break;
        cur.push_back(e);
        enumerate_tuples(weights, i + 1, target - used, cur, out);
        cur.pop_back();
    }
}

struct PowerCache {
    std::vector<std::vector<PuiseuxSeries>> pows;  // pows[i][e] = g_i^e

    PowerCache(const std::vector<PuiseuxSeries>& gens, long max_pow) {
        for (const auto& g : gens) {
            std::vector<PuiseuxSeries> p;
            p.push_back(PuiseuxSeries::constant(Cyclotomic(Rational(1)), g.precision()));
            for (long e = 1; e <= max_pow; ++e) p.push_back(p.back() * g);
            pows.push_back(std::move(p));
        }
    }

    PuiseuxSeries monomial(const std::vector<long>& tuple) const {
        PuiseuxSeries acc;
        bool started = false;
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] == 0) continue;
            acc = started ? acc * pows[i][tuple[i]] : pows[i][tuple[i]];
            started = true;
        }
        if (!started) return pows[0][0];
        return acc;
    }
};

}  // namespace

std::vector<RankReport> verify_claim(const StructureClaim& claim) {
    std::vector<RankReport> reports;
    Rational hilbert_order(1);
    for (const auto& w : claim.weights) hilbert_order = std::max(hilbert_order, Rational(w + 1));

    if (claim.type == StructureClaim::Type::CuspIdeal) {
        PuiseuxSeries gen;
        std::vector<PuiseuxSeries> gens;
        std::optional<PowerCache> cache;
        std::vector<Rational> gweights;
        if (!claim.cusp_generator.empty() && !claim.generators.empty()) {
            gen = dsl::evaluate_str(claim.cusp_generator, claim.order);
            long max_pow = 0;
            for (const auto& w : claim.weights) {
                for (const auto& g : claim.generators) {
                    Rational m = (w - claim.weight_shift) / g.weight;
                    if (is_integer(m) && m >= 0)
                        max_pow = std::max(max_pow, to_long(Integer(m.get_num())));
                }
            }
            for (const auto& g : claim.generators) {
                gens.push_back(dsl::evaluate_str(g.expr, claim.order));
                gweights.push_back(g.weight);
            }
            cache.emplace(gens, max_pow);
        }
        for (const auto& w : claim.weights) {
            RankReport rep;
            rep.weight = w;
            if (!is_integer(w)) {
                rep.status = RankReport::Status::Skipped;
                rep.detail = "non-integer weight";
                reports.push_back(rep);
                continue;
            }
            long k = to_long(Integer(w.get_num()));
            Dimension ds = dim_cusp(claim.group, k);
            Rational shifted = w - claim.weight_shift;
            long expect_m;
            if (shifted < 0) {
                expect_m = 0;
            } else if (shifted == 0) {
                expect_m = 1;
            } else if (is_integer(shifted)) {
                Dimension dm = dim_modular(claim.group, to_long(Integer(shifted.get_num())));
                if (dm.lower_bound_only || ds.lower_bound_only) {
                    rep.status = RankReport::Status::Skipped;
                    rep.detail = "weight-1 dimension is only bounded below here";
                    reports.push_back(rep);
                    continue;
                }
                expect_m = dm.value;
            } else {
                rep.status = RankReport::Status::Skipped;
                rep.detail = "shifted weight leaves the integer lattice";
                reports.push_back(rep);
                continue;
            }
            if (ds.lower_bound_only) {
                rep.status = RankReport::Status::Skipped;
                rep.detail = "cusp dimension only bounded below";
                reports.push_back(rep);
                continue;
            }
            rep.expected = expect_m;
            rep.rank = ds.value;
            rep.monomials = 0;
            bool dims_match = (ds.value == expect_m);
            bool vanish_ok = true;
            if (cache && shifted >= 0) {
                std::vector<std::vector<long>> tuples;
                std::vector<long> cur;
                enumerate_tuples(gweights, 0, shifted, cur, tuples);
                rep.monomials = static_cast<long>(tuples.size());
                for (const auto& t : tuples) {
                    PuiseuxSeries prod = cache->monomial(t) * gen;
                    if (prod.is_zero_to_prec() || prod.valuation() <= 0) {
                        vanish_ok = false;
                        rep.detail = "product fails to vanish at infinity";
                        break;
                    }
                }
            }
            rep.status = (dims_match && vanish_ok) ? RankReport::Status::Match
                                                   : RankReport::Status::Deficient;
            if (!dims_match) rep.detail = "cusp dimension != shifted module dimension";
            reports.push_back(rep);
        }
        return reports;
    }

    // polynomial ring / free module: rank of monomial rows
    std::vector<PuiseuxSeries> gens;
    std::vector<Rational> gweights;
    for (const auto& g : claim.generators) {
        gens.push_back(dsl::evaluate_str(g.expr, claim.order));
        gweights.push_back(g.weight);
    }
    long max_pow = 0;
    for (const auto& w : claim.weights) {
        for (const auto& g : claim.generators) {
            Rational m = w / g.weight;
            if (is_integer(m) && m >= 0) max_pow = std::max(max_pow, to_long(Integer(m.get_num())));
        }
    }
    PowerCache cache(gens, max_pow);
    std::vector<std::pair<PuiseuxSeries, Rational>> basis_series;
    if (claim.type == StructureClaim::Type::FreeModule) {
        for (const auto& b : claim.basis)
            basis_series.emplace_back(dsl::evaluate_str(b.expr, claim.order), b.weight);
    } else {
        basis_series.emplace_back(PuiseuxSeries::constant(Cyclotomic(Rational(1)), claim.order),
                                  Rational(0));
    }

    for (const auto& w : claim.weights) {
        RankReport rep;
        rep.weight = w;
        std::vector<PuiseuxSeries> rows;
        for (const auto& [bseries, bweight] : basis_series) {
            std::vector<std::vector<long>> tuples;
            std::vector<long> cur;
            if (w - bweight < 0) continue;
            enumerate_tuples(gweights, 0, w - bweight, cur, tuples);
            for (const auto& t : tuples) rows.push_back(cache.monomial(t) * bseries);
        }
        rep.monomials = static_cast<long>(rows.size());
        auto expect = claim.oracle.expected(w, hilbert_order);
        if (!expect) {
            rep.status = RankReport::Status::Skipped;
            rep.detail = "no exact dimension available at this weight";
            reports.push_back(rep);
            continue;
        }
        rep.expected = *expect;
        Rational cutoff = claim.order;
        for (const auto& r : rows) cutoff = std::min(cutoff, r.precision());
        rep.rank = series_rank(rows, cutoff);
        if (rep.rank == rep.expected && rep.monomials == rep.expected) {
            rep.status = RankReport::Status::Match;
        } else if (rep.rank > rep.expected) {
            rep.status = RankReport::Status::Overfull;
            rep.detail = "independent forms exceed the claimed dimension";
        } else {
            // distinguish precision shortfall from a genuine deficiency
            long denom = 1;
            for (const auto& r : rows) denom = std::lcm(denom, r.denom());
            long cols = to_long(rational_floor(cutoff * denom));
            if (rep.rank < rep.monomials && cols < rep.monomials + 1) {
                rep.status = RankReport::Status::Insufficient;
                rep.detail = "series precision too low to certify the rank";
            } else {
                rep.status = RankReport::Status::Deficient;
                rep.detail = rep.monomials != rep.expected ? "monomial count != expected dimension"
                                                           : "monomials are linearly dependent";
            }
        }
        reports.push_back(rep);
    }
    return reports;
}

namespace {

using nlohmann::json;

SubgroupSpec parse_group(const json& j) {
    std::string kind = j.value("kind", "gamma");
    long n = j.value("n", 1);
    if (kind == "gamma0") return SubgroupSpec::gamma0(n);
    if (kind == "gamma_upper0") return SubgroupSpec::gamma_upper0(n);
    if (kind == "gamma1") return SubgroupSpec::gamma1(n);
    if (kind == "gamma_upper1") return SubgroupSpec::gamma_upper1(n);
    if (kind == "gamma") return SubgroupSpec::gamma(n);
    if (kind == "gammaG") {
        std::vector<long> gens;
        for (const auto& g : j.at("gens")) gens.push_back(g.get<long>());
        return SubgroupSpec::gamma_g(n, gens);
    }
    if (kind == "intersect00") return SubgroupSpec::intersect00(n, j.at("m").get<long>());
    throw std::invalid_argument("unknown group kind " + kind);
}

std::vector<Rational> parse_weights(const json& j) {
    std::vector<Rational> out;
    if (j.is_array()) {
        for (const auto& w : j) out.push_back(parse_rational(w.get<std::string>()));
        return out;
    }
    Rational start = parse_rational(j.at("start").get<std::string>());
    Rational stop = parse_rational(j.at("stop").get<std::string>());
    Rational step = parse_rational(j.at("step").get<std::string>());
    for (Rational w = start; w <= stop; w += step) {
        w.canonicalize();
        out.push_back(w);
    }
    return out;
}

std::vector<GeneratorSpec> parse_generators(const json& j) {
    std::vector<GeneratorSpec> out;
    for (const auto& g : j)
        out.push_back({g.at("expr").get<std::string>(),
                       parse_rational(g.at("weight").get<std::string>())});
    return out;
}

}  // namespace

std::vector<StructureClaim> load_claims(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open claims file " + path);
    json doc = json::parse(in);
    std::vector<StructureClaim> out;
    for (const auto& j : doc) {
        StructureClaim c;
        c.id = j.at("id").get<std::string>();
        std::string type = j.at("type").get<std::string>();
        if (type == "polynomial_ring")
            c.type = StructureClaim::Type::PolynomialRing;
        else if (type == "free_module")
            c.type = StructureClaim::Type::FreeModule;
        else if (type == "cusp_ideal")
            c.type = StructureClaim::Type::CuspIdeal;
        else
            throw std::invalid_argument("unknown claim type " + type);
        if (j.contains("generators")) c.generators = parse_generators(j.at("generators"));
        if (j.contains("basis")) c.basis = parse_generators(j.at("basis"));
        if (j.contains("cusp_generator")) c.cusp_generator = j.at("cusp_generator").get<std::string>();
        if (j.contains("weight_shift"))
            c.weight_shift = parse_rational(j.at("weight_shift").get<std::string>());
        if (j.contains("group")) c.group = parse_group(j.at("group"));
        if (j.contains("oracle")) {
            const json& o = j.at("oracle");
            std::string kind = o.at("kind").get<std::string>();
            if (kind == "group") {
                c.oracle.kind = DimOracle::Kind::Group;
                c.oracle.group = o.contains("group") ? parse_group(o.at("group")) : c.group;
            } else if (kind == "rational_weight") {
                c.oracle.kind = DimOracle::Kind::RationalWeight;
                c.oracle.rw_level = o.at("n").get<long>();
            } else if (kind == "hilbert") {
                c.oracle.kind = DimOracle::Kind::Hilbert;
                c.oracle.hilbert = o.at("series").get<std::string>();
            } else if (kind == "sequence") {
                c.oracle.kind = DimOracle::Kind::Sequence;
                c.oracle.step = parse_rational(o.at("step").get<std::string>());
                for (const auto& d : o.at("dims")) c.oracle.seq.push_back(d.get<long>());
            } else {
                throw std::invalid_argument("unknown oracle kind " + kind);
            }
        }
        c.weights = parse_weights(j.at("weights"));
        if (j.contains("order")) c.order = parse_rational(j.at("order").get<std::string>());
        if (j.contains("note")) c.note = j.at("note").get<std::string>();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace qmod
