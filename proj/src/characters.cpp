#include "qmod/characters.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qmod {

namespace {

long mod_norm(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mod_pow(long base, long e, long m) {
    long r = 1 % m;
    base = mod_norm(base, m);
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

long legendre(long n, long p) {
    long r = mod_norm(n, p);
    if (r == 0) return 0;
    long t = mod_pow(r, (p - 1) / 2, p);
    return t == 1 ? 1 : -1;
}

long kronecker_two(long n) {
    if (n % 2 == 0) return 0;
    long r = mod_norm(n, 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

std::vector<std::pair<long, long>> factorize(long n) {
    std::vector<std::pair<long, long>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

}  // namespace

long kronecker(long n, long m) {
    if (m == 0) return (n == 1 || n == -1) ? 1 : -1;
    if (m == 1) return 1;
    if (m == -1) return n >= 0 ? 1 : -1;
    if (m < -1) return kronecker(n, -1) * kronecker(n, -m);
    long result = 1;
    for (auto [p, e] : factorize(m)) {
        long s = (p == 2) ? kronecker_two(n) : legendre(n, p);
        if (s == 0) return 0;
        if (e % 2 == 1) result *= s;
    }
    return result;
}

UnitMap::UnitMap(long modulus, std::map<long, Cyclotomic> values)
    : modulus_(modulus), values_(std::move(values)) {
    if (modulus_ < 1) throw std::domain_error("modulus must be positive");
    for (long u = 0; u < modulus_; ++u) {
        if (std::gcd(u == 0 ? modulus_ : u, modulus_) == 1) {
            long key = (modulus_ == 1) ? 0 : u;
            if (!values_.count(key)) throw std::domain_error("unit map misses a unit value");
        }
    }
}

Cyclotomic UnitMap::operator()(long n) const {
    long r = mod_norm(n, modulus_);
    if (modulus_ == 1) return values_.at(0);
    if (std::gcd(r == 0 ? modulus_ : r, modulus_) != 1) return Cyclotomic();
    return values_.at(r);
}

bool UnitMap::is_multiplicative() const {
    for (const auto& [u, cu] : values_) {
        for (const auto& [v, cv] : values_) {
            long uv = modulus_ == 1 ? 0 : mod_norm(u * v, modulus_);
            if (values_.at(uv) != cu * cv) return false;
        }
    }
    return true;
}

bool UnitMap::is_trivial() const {
    Cyclotomic one{Rational(1)};
    for (const auto& [u, c] : values_)
        if (c != one) return false;
    return true;
}

UnitMap UnitMap::lift(long new_modulus) const {
    if (new_modulus % modulus_ != 0) throw std::domain_error("lift target must be a multiple");
    std::map<long, Cyclotomic> vals;
    for (long u = 0; u < new_modulus; ++u) {
        long key = (new_modulus == 1) ? 0 : u;
        if (std::gcd(u == 0 ? new_modulus : u, new_modulus) == 1)
            vals[key] = (*this)(u == 0 && new_modulus == 1 ? 1 : u);
    }
    return UnitMap(new_modulus, std::move(vals));
}

long UnitMap::conductor() const {
    for (long c = 1; c <= modulus_; ++c) {
        if (modulus_ % c != 0) continue;
        bool ok = true;
        for (const auto& [u, val] : values_) {
            long uu = (modulus_ == 1) ? 1 : u;
            if (mod_norm(uu - 1, c) == 0 && val != Cyclotomic(Rational(1))) {
                ok = false;
                break;
            }
        }
        if (ok) return c;
    }
    return modulus_;
}

UnitMap UnitMap::primitivize() const {
    long c = conductor();
    if (c == modulus_) return *this;
    std::map<long, Cyclotomic> vals;
    for (long u = 0; u < c; ++u) {
        long key = (c == 1) ? 0 : u;
        long uu = (c == 1) ? 1 : u;
        if (std::gcd(uu, c) != 1) continue;
        // pick a representative of u mod c that is a unit mod modulus_
        long rep = -1;
        for (long k = 0; k < modulus_ / c; ++k) {
            long cand = uu + k * c;
            if (std::gcd(mod_norm(cand, modulus_) == 0 ? modulus_ : mod_norm(cand, modulus_),
                         modulus_) == 1) {
                rep = cand;
                break;
            }
        }
        if (rep < 0) throw std::logic_error("no unit representative found");
        vals[key] = (*this)(rep);
    }
    return UnitMap(c, std::move(vals));
}

UnitMap operator*(const UnitMap& a, const UnitMap& b) {
    long m = std::lcm(a.modulus_, b.modulus_);
    UnitMap al = a.lift(m), bl = b.lift(m);
    std::map<long, Cyclotomic> vals;
    for (const auto& [u, c] : al.values_) vals[u] = c * bl.values_.at(u);
    return UnitMap(m, std::move(vals));
}

UnitMap UnitMap::pow(long k) const {
    std::map<long, Cyclotomic> vals;
    for (const auto& [u, c] : values_) vals[u] = c.pow(k);
    return UnitMap(modulus_, std::move(vals));
}

UnitMap UnitMap::bar() const {
    std::map<long, Cyclotomic> vals;
    for (const auto& [u, c] : values_) vals[u] = c.conj();
    return UnitMap(modulus_, std::move(vals));
}

bool UnitMap::operator==(const UnitMap& b) const {
    return modulus_ == b.modulus_ && values_ == b.values_;
}

std::string UnitMap::str() const {
    std::ostringstream os;
    os << "mod " << modulus_ << ": ";
    for (const auto& [u, c] : values_) os << u << "->" << c.str() << " ";
    return os.str();
}

UnitMap trivial_character(long n) {
    std::map<long, Cyclotomic> vals;
    for (long u = 0; u < n; ++u) {
        long uu = (n == 1) ? 1 : u;
        if (std::gcd(uu == 0 ? n : uu, n) == 1) vals[(n == 1) ? 0 : u] = Cyclotomic(Rational(1));
    }
    return UnitMap(n, std::move(vals));
}

namespace {

long multiplicative_order(long g, long m) {
    long x = mod_norm(g, m), o = 1;
    long y = x;
    while (y != 1) {
        y = (y * x) % m;
        ++o;
        if (o > m) throw std::logic_error("order computation ran away");
    }
    return o;
}

UnitMap chi_two_power(long m) {
    // (Z/2^n)^x = <-1, 5>; chi(5) = zeta_{2^{n-2}}, chi(-1) = 1.
    long phi_half = m / 4;  // order of 5
    std::map<long, Cyclotomic> vals;
    long p5 = 1;
    for (long b = 0; b < phi_half; ++b) {
        Cyclotomic z = Cyclotomic::root_of_unity(phi_half, b);
        vals[p5] = z;
        vals[mod_norm(-p5, m)] = z;
        p5 = (p5 * 5) % m;
    }
    return UnitMap(m, std::move(vals));
}

UnitMap chi_odd_prime_power(long m) {
    long phi = euler_phi(m);
    long g = 2;
    while (multiplicative_order(g, m) != phi) ++g;
    std::map<long, Cyclotomic> vals;
    long gk = 1;
    for (long j = 0; j < phi; ++j) {
        vals[gk] = Cyclotomic::root_of_unity(phi, j);
        gk = (gk * g) % m;
    }
    return UnitMap(m, std::move(vals));
}

}  // namespace

UnitMap named_chi(long m) {
    auto f = factorize(m);
    if (f.size() != 1 || m < 3) throw std::domain_error("chi(N) needs a prime power N >= 3");
    if (f[0].first == 2) {
        if (m == 4) return UnitMap(4, {{1, Cyclotomic(Rational(1))}, {3, Cyclotomic(Rational(-1))}});
        return chi_two_power(m);
    }
    return chi_odd_prime_power(m);
}

UnitMap sqrt_chi4() {
    return UnitMap(4, {{1, Cyclotomic(Rational(1))}, {3, cyc_i()}});
}

UnitMap xi8() { return sqrt_chi4().bar().lift(8) * named_chi(8); }

std::vector<UnitMap> character_group(long n) {
    std::vector<std::vector<UnitMap>> components;
    for (auto [p, e] : factorize(n)) {
        long q = 1;
        for (long i = 0; i < e; ++i) q *= p;
        std::vector<UnitMap> cyc;
        if (p == 2) {
            if (q >= 4) {
                cyc = {trivial_character(q), named_chi(4).lift(q)};
                if (q >= 8) {
                    std::vector<UnitMap> all;
                    UnitMap c = named_chi(q);
                    long ord = q / 4;
                    for (long j = 0; j < ord; ++j)
                        for (const auto& base : cyc) all.push_back(base * c.pow(j));
                    cyc = all;
                }
            } else {
                cyc.push_back(trivial_character(q));
            }
        } else {
            UnitMap c = named_chi(q);
            long phi = euler_phi(q);
            for (long j = 0; j < phi; ++j) cyc.push_back(c.pow(j));
        }
        components.push_back(std::move(cyc));
    }
    std::vector<UnitMap> group = {trivial_character(n)};
    for (const auto& comp : components) {
        std::vector<UnitMap> next;
        for (const auto& g : group)
            for (const auto& c : comp) next.push_back(g * c.lift(std::lcm(c.modulus(), n)));
        group = std::move(next);
    }
    for (auto& g : group)
        if (g.modulus() != n) g = g.lift(n);
    return group;
}

bool orthogonality_check(long n) {
    auto group = character_group(n);
    long phi = euler_phi(n);
    if (static_cast<long>(group.size()) != phi) return false;
    Cyclotomic one{Rational(1)};
    // (1/|G|) sum_x phi(x) = delta_{phi,1}
    for (const auto& chi : group) {
        Cyclotomic sum;
        for (long u = 0; u < n; ++u) {
            long uu = (n == 1) ? 1 : u;
            if (std::gcd(uu == 0 ? n : uu, n) == 1) sum += chi(uu);
        }
        Cyclotomic expect = chi.is_trivial() ? Cyclotomic(Rational(phi)) : Cyclotomic();
        if (sum != expect) return false;
    }
    // (1/|G|) sum_phi phi(x) = delta_{x,1}
    for (long u = 0; u < n; ++u) {
        long uu = (n == 1) ? 1 : u;
        if (std::gcd(uu == 0 ? n : uu, n) != 1) continue;
        Cyclotomic sum;
        for (const auto& chi : group) sum += chi(uu);
        Cyclotomic expect = (mod_norm(uu, n) == 1 % n) ? Cyclotomic(Rational(phi)) : Cyclotomic();
        if (sum != expect) return false;
    }
    return true;
}

ArithmeticFunction ArithmeticFunction::from_unit_map(const UnitMap& chi, long bound) {
    ArithmeticFunction f(bound);
    for (long k = 1; k <= bound; ++k) f.at(k) = chi(k);
    return f;
}

ArithmeticFunction ArithmeticFunction::ones(long bound) {
    ArithmeticFunction f(bound);
    for (long k = 1; k <= bound; ++k) f.at(k) = Cyclotomic(Rational(1));
    return f;
}

ArithmeticFunction ArithmeticFunction::delta_one(long bound) {
    ArithmeticFunction f(bound);
    f.at(1) = Cyclotomic(Rational(1));
    return f;
}

ArithmeticFunction dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                      long bound) {
    if (f.bound() < bound || g.bound() < bound)
        throw std::domain_error("convolution operands shorter than bound");
    ArithmeticFunction h(bound);
    for (long d = 1; d <= bound; ++d) {
        if (f.at(d).is_zero()) continue;
        for (long m = d; m <= bound; m += d) h.at(m) += f.at(d) * g.at(m / d);
    }
    return h;
}

std::vector<Cyclotomic> char_divisor_sums(const UnitMap& chi, long bound) {
    std::vector<Cyclotomic> out(bound + 1);
    for (long d = 1; d <= bound; ++d) {
        Cyclotomic cd = chi(d);
        if (cd.is_zero()) continue;
        for (long m = d; m <= bound; m += d) out[m] += cd;
    }
    return out;
}

Cyclotomic bernoulli_b_chi(const UnitMap& chi) {
    UnitMap prim = chi.primitivize();
    long c = prim.modulus();
    Cyclotomic sum;
    for (long a = 1; a <= c; ++a) sum += Rational(a) * prim(a);
    return sum / Cyclotomic(Rational(c));
}

Rational bernoulli_number(long k) {
    static std::vector<Rational> cache = {Rational(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<long>(cache.size()) <= k) {
        long m = static_cast<long>(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational acc(0);
        for (long j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * cache[j];
        Rational bm = -acc / Rational(m + 1);
        bm.canonicalize();
        cache.push_back(bm);
    }
    return cache[k];
}

}  // namespace qmod
