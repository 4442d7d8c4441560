#include "qmod/congruence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace qmod {

long SubgroupSpec::level() const {
    switch (kind) {
        case Kind::Intersect00:
            return std::lcm(n, m);
        default:
            return n;
    }
}

std::string SubgroupSpec::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Gamma0: os << "Gamma0(" << n << ")"; break;
        case Kind::GammaUpper0: os << "Gamma^0(" << n << ")"; break;
        case Kind::Gamma1: os << "Gamma1(" << n << ")"; break;
        case Kind::GammaUpper1: os << "Gamma^1(" << n << ")"; break;
        case Kind::GammaFull: os << "Gamma(" << n << ")"; break;
        case Kind::GammaG: {
            os << "Gamma_{";
            for (size_t i = 0; i < gens.size(); ++i) os << (i ? "," : "") << gens[i];
            os << "}(" << n << ")";
            break;
        }
        case Kind::Intersect00: os << "Gamma0(" << n << ")&Gamma^0(" << m << ")"; break;
    }
    return os.str();
}

namespace {

constexpr long kMaxLevel = 64;

struct Mat {
    long a, b, c, d;
};

long mod_norm(long x, long l) {
    long r = x % l;
    return r < 0 ? r + l : r;
}

uint32_t pack(const Mat& m, long l) {
    return static_cast<uint32_t>(mod_norm(m.a, l)) | (static_cast<uint32_t>(mod_norm(m.b, l)) << 8) |
           (static_cast<uint32_t>(mod_norm(m.c, l)) << 16) |
           (static_cast<uint32_t>(mod_norm(m.d, l)) << 24);
}

Mat unpack(uint32_t k) {
    return {static_cast<long>(k & 0xff), static_cast<long>((k >> 8) & 0xff),
            static_cast<long>((k >> 16) & 0xff), static_cast<long>((k >> 24) & 0xff)};
}

Mat mul(const Mat& x, const Mat& y, long l) {
    return {mod_norm(x.a * y.a + x.b * y.c, l), mod_norm(x.a * y.b + x.b * y.d, l),
            mod_norm(x.c * y.a + x.d * y.c, l), mod_norm(x.c * y.b + x.d * y.d, l)};
}

Mat inverse(const Mat& x, long l) {
    // det = 1, so the adjugate is the inverse
    return {mod_norm(x.d, l), mod_norm(-x.b, l), mod_norm(-x.c, l), mod_norm(x.a, l)};
}

struct GroupData {
    long level;
    std::vector<uint32_t> elements;
    std::unordered_map<uint32_t, long> index;
};

const GroupData& sl2_group(long l) {
    static std::map<long, GroupData> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    GroupData g;
    g.level = l;
    for (long a = 0; a < l; ++a) {
        for (long b = 0; b < l; ++b) {
            for (long c = 0; c < l; ++c) {
                long rhs = mod_norm(1 + b * c, l);
                long gg = std::gcd(a == 0 ? l : a, l);
                if (rhs % gg != 0) continue;
                // solve a d == rhs (mod l)
                for (long d = 0; d < l; ++d) {
                    if (mod_norm(a * d, l) == rhs) {
                        g.elements.push_back(pack({a, b, c, d}, l));
                    }
                }
            }
        }
    }
    std::sort(g.elements.begin(), g.elements.end());
    for (size_t i = 0; i < g.elements.size(); ++i) g.index[g.elements[i]] = static_cast<long>(i);
    return cache.emplace(l, std::move(g)).first->second;
}

bool member(const SubgroupSpec& spec, const Mat& m, long l) {
    auto div_at = [&](long x, long mod) { return mod_norm(x, mod) == 0; };
    switch (spec.kind) {
        case SubgroupSpec::Kind::Gamma0:
            return div_at(m.c, spec.n);
        case SubgroupSpec::Kind::GammaUpper0:
            return div_at(m.b, spec.n);
        case SubgroupSpec::Kind::Gamma1:
            return div_at(m.c, spec.n) && mod_norm(m.d - 1, spec.n) == 0;
        case SubgroupSpec::Kind::GammaUpper1:
            return div_at(m.b, spec.n) && mod_norm(m.d - 1, spec.n) == 0;
        case SubgroupSpec::Kind::GammaFull:
            return div_at(m.b, spec.n) && div_at(m.c, spec.n) && mod_norm(m.d - 1, spec.n) == 0 &&
                   mod_norm(m.a - 1, spec.n) == 0;
        case SubgroupSpec::Kind::GammaG: {
            if (!div_at(m.c, spec.n)) return false;
            // G = subgroup generated by gens inside (Z/n)^x
            std::set<long> g{1 % spec.n};
            std::vector<long> frontier{1 % spec.n};
            while (!frontier.empty()) {
                long x = frontier.back();
                frontier.pop_back();
                for (long y : spec.gens) {
                    long z = mod_norm(x * y, spec.n);
                    if (!g.count(z)) {
                        g.insert(z);
                        frontier.push_back(z);
                    }
                }
            }
            return g.count(mod_norm(m.d, spec.n)) > 0;
        }
        case SubgroupSpec::Kind::Intersect00:
            return div_at(m.c, spec.n) && div_at(m.b, spec.m);
    }
    return false;
}

}  // namespace

Invariants invariants(const SubgroupSpec& spec) {
    static std::map<std::string, Invariants> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(spec.str());
        if (it != cache.end()) return it->second;
    }

    long l = spec.level();
    if (l < 1 || l > kMaxLevel) throw std::domain_error("subgroup level out of supported range");
    const GroupData& g = sl2_group(l);
    long size = static_cast<long>(g.elements.size());

    // H = image of the subgroup, Hplus = H plus its -I translates
    std::vector<char> in_h(size, 0), in_hplus(size, 0);
    Mat minus_i{mod_norm(-1, l), 0, 0, mod_norm(-1, l)};
    bool minus_one_in = false;
    std::vector<long> h_elems;
    for (long i = 0; i < size; ++i) {
        Mat m = unpack(g.elements[i]);
        if (member(spec, m, l)) {
            in_h[i] = 1;
            h_elems.push_back(i);
        }
    }
    {
        long mi = g.index.at(pack(minus_i, l));
        minus_one_in = in_h[mi];
    }
    std::vector<long> hplus_elems = h_elems;
    for (long i : h_elems) {
        Mat m = mul(minus_i, unpack(g.elements[i]), l);
        long idx = g.index.at(pack(m, l));
        if (!in_hplus[idx]) {
            in_hplus[idx] = 1;
            if (!in_h[idx]) hplus_elems.push_back(idx);
        }
        in_hplus[i] = 1;
    }

    // label right cosets Hplus \ G
    std::vector<long> coset(size, -1);
    std::vector<long> rep;  // one element per coset
    for (long i = 0; i < size; ++i) {
        if (coset[i] >= 0) continue;
        long label = static_cast<long>(rep.size());
        rep.push_back(i);
        Mat gi = unpack(g.elements[i]);
        for (long h : hplus_elems) {
            Mat hm = mul(unpack(g.elements[h]), gi, l);
            coset[g.index.at(pack(hm, l))] = label;
        }
    }
    long d = static_cast<long>(rep.size());

    Mat s_mat{0, mod_norm(-1, l), 1, 0};
    Mat st_mat{0, mod_norm(-1, l), 1, 1};
    Mat t_mat{1, 1, 0, 1};

    auto act = [&](long coset_rep_index, const Mat& m) {
        Mat r = mul(unpack(g.elements[coset_rep_index]), m, l);
        return coset[g.index.at(pack(r, l))];
    };

    Invariants inv;
    inv.degree = d;
    inv.minus_one = minus_one_in;
    for (long c = 0; c < d; ++c) {
        if (act(rep[c], s_mat) == c) ++inv.eps2;
        if (act(rep[c], st_mat) == c) ++inv.eps3;
    }

    // cusps: orbits of T acting on the cosets
    std::vector<char> seen(d, 0);
    for (long c = 0; c < d; ++c) {
        if (seen[c]) continue;
        long x = c;
        do {
            seen[x] = 1;
            x = act(rep[x], t_mat);
        } while (!seen[x]);
        // regularity of this cusp: conjugate T^h back into the subgroup
        Mat gi = unpack(g.elements[rep[c]]);
        Mat gi_inv = inverse(gi, l);
        Mat tp = t_mat;
        bool regular = true;
        for (long h = 1; h <= l; ++h) {
            Mat conj = mul(mul(gi, tp, l), gi_inv, l);
            long idx = g.index.at(pack(conj, l));
            if (in_hplus[idx]) {
                regular = minus_one_in || in_h[idx];
                break;
            }
            tp = mul(tp, t_mat, l);
        }
        if (regular)
            ++inv.eps_inf_reg;
        else
            ++inv.eps_inf_irr;
    }

    Rational genus = Rational(1) + make_rational(inv.degree, 12) - make_rational(inv.eps2, 4) -
                     make_rational(inv.eps3, 3) - make_rational(inv.eps_inf(), 2);
    if (!is_integer(genus) || genus < 0) throw std::logic_error("genus formula gave a non-integer");
    inv.genus = to_long(Integer(genus.get_num()));

    std::lock_guard<std::mutex> lock(mtx);
    cache[spec.str()] = inv;
    return inv;
}

Dimension dim_modular(const Invariants& inv, long k) {
    if (k < 0) return {0, false};
    if (k == 0) return {1, false};
    if (k % 2 == 0) {
        Rational dim = Rational(k - 1) * (inv.genus - 1) +
                       Rational(k / 4) * inv.eps2 + Rational(k / 3) * inv.eps3 +
                       make_rational(k, 2) * inv.eps_inf();
        if (!is_integer(dim)) throw std::logic_error("even-weight dimension not integral");
        return {to_long(Integer(dim.get_num())), false};
    }
    if (inv.minus_one) return {0, false};
    if (k == 1) {
        Rational half = make_rational(inv.eps_inf_reg, 2);
        bool exact = inv.eps_inf_reg > 2 * inv.genus - 2;
        if (!is_integer(half)) throw std::logic_error("odd regular cusp count at weight 1");
        return {to_long(Integer(half.get_num())), !exact};
    }
    Rational dim = Rational(k - 1) * (inv.genus - 1) + Rational(k / 3) * inv.eps3 +
                   make_rational(k, 2) * inv.eps_inf_reg +
                   make_rational(k - 1, 2) * inv.eps_inf_irr;
    if (!is_integer(dim)) throw std::logic_error("odd-weight dimension not integral");
    return {to_long(Integer(dim.get_num())), false};
}

Dimension dim_cusp(const Invariants& inv, long k) {
    if (k <= 0) return {0, false};
    if (k % 2 == 0) {
        if (k == 2) return {inv.genus, false};
        Dimension m = dim_modular(inv, k);
        return {m.value - inv.eps_inf(), m.lower_bound_only};
    }
    if (inv.minus_one) return {0, false};
    Dimension m = dim_modular(inv, k);
    if (k == 1) {
        Rational half = make_rational(inv.eps_inf_reg, 2);
        return {m.value - to_long(Integer(half.get_num())), m.lower_bound_only};
    }
    return {m.value - inv.eps_inf_reg, m.lower_bound_only};
}

Dimension dim_modular(const SubgroupSpec& spec, long k) { return dim_modular(invariants(spec), k); }
Dimension dim_cusp(const SubgroupSpec& spec, long k) { return dim_cusp(invariants(spec), k); }

long dim_rational_weight(long n, long k) {
    if (n <= 3 || n % 2 == 0) throw std::domain_error("dim_rational_weight needs odd N > 3");
    if (Rational(k) * (n - 3) <= Rational(4) * (n - 6))
        throw std::domain_error("weight below the validity bound");
    Rational v = (Rational(k) * (n - 3) / 48 - make_rational(n - 6, 24)) * Rational(n) * n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            v *= (Rational(1) - make_rational(1, p * p));
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) v *= (Rational(1) - make_rational(1, m * m));
    v.canonicalize();
    if (!is_integer(v) || v < 0) throw std::domain_error("dimension formula gave a non-integer");
    return to_long(Integer(v.get_num()));
}

}  // namespace qmod
