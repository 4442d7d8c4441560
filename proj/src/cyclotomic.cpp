#include "qmod/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qmod {

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        // explicit base 10: leading zeros must not trigger octal parsing
        if (slash == std::string::npos) {
            Integer num(text, 10);
            Rational r(num);
            r.canonicalize();
            return r;
        }
        Integer num(text.substr(0, slash), 10);
        Integer den(text.substr(slash + 1), 10);
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::domain_error("zero to negative power");
    Rational b = e < 0 ? Rational(base.get_den(), base.get_num()) : base;
    b.canonicalize();
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    acc.canonicalize();
    return acc;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long moebius(long n) {
    long mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

namespace {

using IPoly = std::vector<Integer>;

// Exact division of integer polynomials, assuming it is exact and the
// divisor has leading coefficient +-1.
IPoly ipoly_div(const IPoly& num, const IPoly& den) {
    IPoly rem = num;
    IPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Integer(0));
    long dd = static_cast<long>(den.size()) - 1;
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        Integer c = rem[i] / den[dd];
        quot[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
    return quot;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long order) {
    static std::unordered_map<long, IPoly> cache;
    static std::mutex mtx;
    if (order < 1) throw std::domain_error("cyclotomic polynomial needs order >= 1");
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, computed bottom-up.
    std::function<const IPoly&(long)> get = [&](long n) -> const IPoly& {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        IPoly f(n + 1, Integer(0));
        f[0] = -1;
        f[n] = 1;
        for (long d = 1; d < n; ++d) {
            if (n % d == 0) f = ipoly_div(f, get(d));
        }
        return cache.emplace(n, std::move(f)).first->second;
    };
    return get(order);
}

namespace {

using QPoly = std::vector<Rational>;

void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    qpoly_trim(r);
    return r;
}

// Remainder of p modulo the (monic, integer) polynomial phi.
void qpoly_reduce(QPoly& p, const IPoly& phi) {
    long d = static_cast<long>(phi.size()) - 1;
    for (long i = static_cast<long>(p.size()) - 1; i >= d; --i) {
        if (p[i] == 0) continue;
        Rational c = p[i];
        p[i] = 0;
        for (long j = 0; j < d; ++j) {
            if (phi[j] != 0) p[i - d + j] -= c * phi[j];
        }
    }
    qpoly_trim(p);
}

}  // namespace

struct CycOps {
    static QPoly dense(const Cyclotomic& a) {
        QPoly p;
        for (const auto& [e, c] : a.coeffs_) {
            if (static_cast<size_t>(e) >= p.size()) p.resize(e + 1, Rational(0));
            p[e] = c;
        }
        return p;
    }

    static Cyclotomic make(long order, QPoly poly) {
        return Cyclotomic::from_poly(order, std::move(poly));
    }
};

Cyclotomic Cyclotomic::from_poly(long order, std::vector<Rational> poly) {
    if (order > 1) qpoly_reduce(poly, cyclotomic_polynomial(order));
    Cyclotomic r;
    r.order_ = order;
    for (size_t e = 0; e < poly.size(); ++e) {
        if (poly[e] != 0) r.coeffs_.emplace_back(static_cast<long>(e), poly[e]);
    }
    if (order == 1 && !r.coeffs_.empty()) r.coeffs_[0].first = 0;
    return r;
}

Cyclotomic::Cyclotomic(const Rational& r) : order_(1) {
    if (r != 0) coeffs_.emplace_back(0, r);
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n < 1) throw std::domain_error("root_of_unity needs n >= 1");
    k %= n;
    if (k < 0) k += n;
    long g = std::gcd(n, k);
    if (g == 0) g = n;  // k == 0
    long n2 = n / g, k2 = k / g;
    if (n2 == 1) return Cyclotomic(Rational(1));
    if (n2 == 2) return Cyclotomic(Rational(-1));
    QPoly p(k2 + 1, Rational(0));
    p[k2] = 1;
    return from_poly(n2, std::move(p));
}

Cyclotomic Cyclotomic::unit_phase(const Rational& r) {
    Rational x = r - Rational(rational_floor(r));
    return root_of_unity(to_long(Integer(x.get_den())), to_long(Integer(x.get_num())));
}

bool Cyclotomic::is_rational() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0].first == 0);
}

Rational Cyclotomic::rational_value() const {
    if (coeffs_.empty()) return Rational(0);
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return coeffs_[0].second;
}

Cyclotomic Cyclotomic::lifted(long new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0) throw std::domain_error("lift target must be a multiple of the order");
    long f = new_order / order_;
    QPoly p;
    for (const auto& [e, c] : coeffs_) {
        size_t ne = static_cast<size_t>(e * f);
        if (ne >= p.size()) p.resize(ne + 1, Rational(0));
        p[ne] = c;
    }
    return from_poly(new_order, std::move(p));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    long L = std::lcm(a.order_, b.order_);
    if (a.order_ == b.order_ && L == 1) {
        Rational s = (a.coeffs_.empty() ? Rational(0) : a.coeffs_[0].second) +
                     (b.coeffs_.empty() ? Rational(0) : b.coeffs_[0].second);
        return Cyclotomic(s);
    }
    Cyclotomic al = a.lifted(L), bl = b.lifted(L);
    QPoly p = CycOps::dense(al);
    for (const auto& [e, c] : bl.coeffs_) {
        if (static_cast<size_t>(e) >= p.size()) p.resize(e + 1, Rational(0));
        p[e] += c;
    }
    return CycOps::make(L, std::move(p));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Cyclotomic();
    if (a.is_rational()) {
        Cyclotomic r = b;
        for (auto& [e, c] : r.coeffs_) c *= a.coeffs_[0].second;
        return r;
    }
    if (b.is_rational()) return b * a;
    long L = std::lcm(a.order_, b.order_);
    QPoly p = qpoly_mul(CycOps::dense(a.lifted(L)), CycOps::dense(b.lifted(L)));
    return CycOps::make(L, std::move(p));
}

Cyclotomic Cyclotomic::inverse() const {
    if (coeffs_.empty()) throw std::domain_error("division by zero");
    if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0].second);

    // Extended Euclid in Q[x]: s * a + t * Phi = 1, so s is the inverse.
    QPoly a = CycOps::dense(*this);
    const IPoly& phi_i = cyclotomic_polynomial(order_);
    QPoly b(phi_i.size());
    for (size_t i = 0; i < phi_i.size(); ++i) b[i] = Rational(phi_i[i]);

    QPoly r0 = b, r1 = a;
    QPoly s0 = {}, s1 = {Rational(1)};
    while (true) {
        if (r1.empty()) throw std::domain_error("inverse: value not invertible");
        if (r1.size() == 1) break;
        // quotient of r0 by r1
        QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
        QPoly rem = r0;
        long d1 = static_cast<long>(r1.size()) - 1;
        for (long i = static_cast<long>(rem.size()) - 1; i >= d1; --i) {
            if (rem[i] == 0) continue;
            Rational c = rem[i] / r1[d1];
            q[i - d1] = c;
            for (long j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        qpoly_trim(rem);
        QPoly s2_sub = qpoly_mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < s2_sub.size()) s2.resize(s2_sub.size(), Rational(0));
        for (size_t i = 0; i < s2_sub.size(); ++i) s2[i] -= s2_sub[i];
        qpoly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational unit = r1[0];
    for (auto& c : s1) c /= unit;
    return from_poly(order_, std::move(s1));
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    if (b.is_rational()) {
        if (b.coeffs_.empty()) throw std::domain_error("division by zero");
        Cyclotomic r = a;
        for (auto& [e, c] : r.coeffs_) c /= b.coeffs_[0].second;
        return r;
    }
    long L = std::lcm(a.order(), b.order());
    return a.lifted(L) * b.lifted(L).inverse();
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e == 0) return Cyclotomic(Rational(1));
    Cyclotomic base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Cyclotomic acc(Rational(1));
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Cyclotomic Cyclotomic::galois(long t) const {
    long tm = t % order_;
    if (tm < 0) tm += order_;
    if (order_ == 1) return *this;
    if (std::gcd(tm, order_) != 1) throw std::domain_error("galois exponent not coprime to order");
    QPoly p;
    for (const auto& [e, c] : coeffs_) {
        size_t ne = static_cast<size_t>((e * tm) % order_);
        if (ne >= p.size()) p.resize(ne + 1, Rational(0));
        p[ne] += c;
    }
    return from_poly(order_, std::move(p));
}

Cyclotomic Cyclotomic::sigma(long t) const {
    if (order_ == 1) return *this;
    long L = order_;
    long two_part = 1;
    long m = L;
    while (m % 2 == 0) {
        m /= 2;
        two_part *= 2;
    }
    long t2 = ((t % two_part) + two_part) % two_part;
    if (two_part > 1 && std::gcd(t2, two_part) != 1)
        throw std::domain_error("sigma exponent not coprime to 2-power part");
    long tm;
    if (std::gcd(((t % m) + m) % m, m) == 1) {
        tm = ((t % m) + m) % m;
    } else {
        tm = 1;  // fix roots whose order divides the obstructed part
    }
    // CRT: result == t2 mod two_part, tm mod m.
    long r = 0;
    for (long x = 0; x < L; ++x) {
        if (x % two_part == t2 % two_part && x % m == tm % m) {
            r = x;
            break;
        }
    }
    return galois(r);
}

bool Cyclotomic::operator==(const Cyclotomic& b) const {
    if (order_ == b.order_) return coeffs_ == b.coeffs_;
    long L = std::lcm(order_, b.order_);
    return lifted(L).coeffs_ == b.lifted(L).coeffs_;
}

std::optional<std::pair<long, long>> Cyclotomic::as_root_of_unity() const {
    if (is_rational()) {
        Rational v = rational_value();
        if (v == 1) return std::make_pair(1L, 0L);
        if (v == -1) return std::make_pair(2L, 1L);
        return std::nullopt;
    }
    for (long j = 1; j < order_; ++j) {
        Cyclotomic z = root_of_unity(order_, j);
        if (*this == z) return std::make_pair(order_, j);
        if (*this == -z) {
            // -zeta_L^j = zeta_{2L}^{L + 2j}
            long n = 2 * order_, k = (order_ + 2 * j) % n;
            long g = std::gcd(n, k);
            return std::make_pair(n / g, k / g);
        }
    }
    return std::nullopt;
}

std::optional<Cyclotomic> Cyclotomic::nth_root(long n) const {
    if (n < 1) return std::nullopt;
    if (n == 1) return *this;
    if (auto ru = as_root_of_unity()) {
        auto [m, k] = *ru;
        return root_of_unity(m * n, k);
    }
    if (is_rational() && !is_zero()) {
        Rational v = rational_value();
        if (v < 0 && n % 2 == 0) return std::nullopt;
        Integer num, den;
        bool neg = v < 0;
        Integer an = neg ? Integer(-v.get_num()) : Integer(v.get_num());
        if (mpz_root(num.get_mpz_t(), an.get_mpz_t(), n) == 0) return std::nullopt;
        if (mpz_root(den.get_mpz_t(), v.get_den_mpz_t(), n) == 0) return std::nullopt;
        Rational r = make_rational(neg ? Integer(-num) : num, den);
        return Cyclotomic(r);
    }
    return std::nullopt;
}

std::string Cyclotomic::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        Rational a = (!first && c < 0) ? Rational(-c) : c;
        first = false;
        if (e == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "z" << order_;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Cyclotomic cyc_i() { return Cyclotomic::root_of_unity(4, 1); }

Cyclotomic cyc_sqrt2() {
    return Cyclotomic::root_of_unity(8, 1) + Cyclotomic::root_of_unity(8, 7);
}

Cyclotomic cyc_sqrt3_i() {
    return Cyclotomic::root_of_unity(3, 1) - Cyclotomic::root_of_unity(3, 2);
}

Cyclotomic cyc_sqrt5() {
    return Cyclotomic(Rational(1)) +
           Rational(2) * (Cyclotomic::root_of_unity(5, 1) + Cyclotomic::root_of_unity(5, 4));
}

}  // namespace qmod
