#include "qmod/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qmod {

namespace {

long checked_lcm(long a, long b) {
    long g = std::gcd(a, b);
    return a / g * b;
}

// Smallest index m with m/denom >= bound (i.e. exponent cutoff as an index).
long ceil_index(const Rational& bound, long denom) {
    Rational scaled = bound * denom;
    Integer num = scaled.get_num(), den = scaled.get_den();
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return to_long(q);
}

}  // namespace

void PuiseuxSeries::normalize() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
        val_ += static_cast<long>(lead);
    }
    if (static_cast<long>(coeffs_.size()) > prec_ - val_) coeffs_.resize(prec_ - val_);
}

void PuiseuxSeries::compact() {
    if (denom_ == 1) return;
    long g = denom_;
    if (coeffs_.empty()) {
        Rational p = precision();
        denom_ = to_long(Integer(p.get_den()));
        prec_ = to_long(Integer(p.get_num()));
        val_ = prec_;
        return;
    }
    for (size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
        if (!coeffs_[i].is_zero()) g = std::gcd(g, val_ + static_cast<long>(i));
    }
    if (g <= 1) return;
    // g divides val_ because coeffs_[0] != 0 after normalization
    std::vector<Cyclotomic> nc;
    long nv = val_ / g;
    long np = prec_ / g + (prec_ % g != 0 ? 1 : 0);
    nc.reserve(np - nv);
    for (long m = nv; m < np; ++m) {
        long old_index = m * g - val_;
        if (old_index < static_cast<long>(coeffs_.size()))
            nc.push_back(coeffs_[old_index]);
        else
            nc.push_back(Cyclotomic());
    }
    denom_ /= g;
    val_ = nv;
    prec_ = np;
    coeffs_ = std::move(nc);
}

PuiseuxSeries PuiseuxSeries::zero(const Rational& order) {
    PuiseuxSeries s;
    s.denom_ = to_long(Integer(order.get_den()));
    s.prec_ = to_long(Integer(order.get_num()));
    s.val_ = s.prec_;
    return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const Cyclotomic& c, const Rational& exponent,
                                      const Rational& order) {
    if (c.is_zero()) return zero(order);
    long d = checked_lcm(to_long(Integer(exponent.get_den())), to_long(Integer(order.get_den())));
    PuiseuxSeries s;
    s.denom_ = d;
    s.val_ = to_long(Integer(Rational(exponent * d).get_num()));
    s.prec_ = ceil_index(order, d);
    if (s.val_ >= s.prec_) return zero(order);
    s.coeffs_.assign(s.prec_ - s.val_, Cyclotomic());
    s.coeffs_[0] = c;
    return s;
}

PuiseuxSeries PuiseuxSeries::constant(const Cyclotomic& c, const Rational& order) {
    return monomial(c, Rational(0), order);
}

PuiseuxSeries PuiseuxSeries::from_terms(const std::vector<std::pair<Rational, Cyclotomic>>& terms,
                                        const Rational& order) {
    long d = to_long(Integer(order.get_den()));
    for (const auto& [e, c] : terms) d = checked_lcm(d, to_long(Integer(e.get_den())));
    PuiseuxSeries s;
    s.denom_ = d;
    s.prec_ = ceil_index(order, d);
    long lo = s.prec_;
    for (const auto& [e, c] : terms) {
        long idx = to_long(Integer(Rational(e * d).get_num()));
        lo = std::min(lo, idx);
    }
    s.val_ = lo;
    if (s.val_ < s.prec_) s.coeffs_.assign(s.prec_ - s.val_, Cyclotomic());
    for (const auto& [e, c] : terms) {
        long idx = to_long(Integer(Rational(e * d).get_num()));
        if (idx < s.prec_) s.coeffs_[idx - s.val_] += c;
    }
    s.normalize();
    s.compact();
    return s;
}

bool PuiseuxSeries::is_zero_to_prec() const { return coeffs_.empty(); }

Rational PuiseuxSeries::precision() const { return make_rational(prec_, denom_); }

Rational PuiseuxSeries::valuation() const {
    if (coeffs_.empty()) throw std::domain_error("valuation of zero-to-precision series");
    return make_rational(val_, denom_);
}

Cyclotomic PuiseuxSeries::leading_coefficient() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero-to-precision series");
    return coeffs_[0];
}

Cyclotomic PuiseuxSeries::coefficient(const Rational& exponent) const {
    if (exponent >= precision()) throw std::domain_error("coefficient beyond precision");
    Rational scaled = exponent * denom_;
    if (scaled.get_den() != 1) return Cyclotomic();
    long idx = to_long(Integer(scaled.get_num()));
    if (idx < val_ || idx - val_ >= static_cast<long>(coeffs_.size())) return Cyclotomic();
    return coeffs_[idx - val_];
}

PuiseuxSeries PuiseuxSeries::rebased(long new_denom) const {
    if (new_denom == denom_) return *this;
    if (new_denom % denom_ != 0) throw std::domain_error("rebase target not a multiple");
    long f = new_denom / denom_;
    PuiseuxSeries s;
    s.denom_ = new_denom;
    s.val_ = val_ * f;
    s.prec_ = prec_ * f;
    if (!coeffs_.empty()) {
        s.coeffs_.assign(s.prec_ - s.val_, Cyclotomic());
        for (size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * f] = coeffs_[i];
    }
    return s;
}

long PuiseuxSeries::common_denom(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return checked_lcm(a.denom_, b.denom_);
}

PuiseuxSeries PuiseuxSeries::operator-() const {
    PuiseuxSeries s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    long d = PuiseuxSeries::common_denom(a, b);
    PuiseuxSeries x = a.rebased(d), y = b.rebased(d);
    PuiseuxSeries s;
    s.denom_ = d;
    s.prec_ = std::min(x.prec_, y.prec_);
    long lo = std::min(std::min(x.val_, y.val_), s.prec_);
    s.val_ = lo;
    if (lo < s.prec_) s.coeffs_.assign(s.prec_ - lo, Cyclotomic());
    for (long i = x.val_; i < std::min(x.prec_, s.prec_); ++i) {
        if (i - x.val_ < static_cast<long>(x.coeffs_.size()))
            s.coeffs_[i - lo] += x.coeffs_[i - x.val_];
    }
    for (long i = y.val_; i < std::min(y.prec_, s.prec_); ++i) {
        if (i - y.val_ < static_cast<long>(y.coeffs_.size()))
            s.coeffs_[i - lo] += y.coeffs_[i - y.val_];
    }
    s.normalize();
    return s;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    long d = PuiseuxSeries::common_denom(a, b);
    PuiseuxSeries x = a.rebased(d), y = b.rebased(d);
    PuiseuxSeries s;
    s.denom_ = d;
    // tightest sound bound: min(v_f + P_g, v_g + P_f)
    s.prec_ = std::min(x.val_ + y.prec_, y.val_ + x.prec_);
    s.val_ = x.val_ + y.val_;
    if (x.coeffs_.empty() || y.coeffs_.empty()) {
        s.val_ = s.prec_;
        s.compact();
        return s;
    }
    if (s.val_ >= s.prec_) {
        s.val_ = s.prec_;
        s.compact();
        return s;
    }
    s.coeffs_.assign(s.prec_ - s.val_, Cyclotomic());
    // iterate the sparser factor on the outside
    auto nnz = [](const PuiseuxSeries& f) {
        size_t n = 0;
        for (const auto& c : f.coeffs_)
            if (!c.is_zero()) ++n;
        return n;
    };
    const PuiseuxSeries& outer = nnz(x) <= nnz(y) ? x : y;
    const PuiseuxSeries& inner = nnz(x) <= nnz(y) ? y : x;
    long limit = s.prec_ - s.val_;
    for (size_t i = 0; i < outer.coeffs_.size() && static_cast<long>(i) < limit; ++i) {
        if (outer.coeffs_[i].is_zero()) continue;
        long jmax = std::min<long>(inner.coeffs_.size(), limit - static_cast<long>(i));
        for (long j = 0; j < jmax; ++j) {
            if (inner.coeffs_[j].is_zero()) continue;
            s.coeffs_[i + j] += outer.coeffs_[i] * inner.coeffs_[j];
        }
    }
    s.normalize();
    s.compact();
    return s;
}

PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (b.coeffs_.empty()) throw std::domain_error("division by zero-to-precision series");
    long d = PuiseuxSeries::common_denom(a, b);
    PuiseuxSeries x = a.rebased(d), y = b.rebased(d);
    PuiseuxSeries s;
    s.denom_ = d;
    long rel = std::min(x.prec_ - x.val_, y.prec_ - y.val_);
    if (x.coeffs_.empty()) {
        // 0/g: still zero, with precision shifted by the divisor valuation
        s.prec_ = x.prec_ - y.val_;
        s.val_ = s.prec_;
        s.compact();
        return s;
    }
    s.val_ = x.val_ - y.val_;
    s.prec_ = s.val_ + rel;
    s.coeffs_.assign(rel, Cyclotomic());
    Cyclotomic lead_inv = y.coeffs_[0].inverse();
    std::vector<Cyclotomic> rem(x.coeffs_.begin(),
                                x.coeffs_.begin() + std::min<size_t>(x.coeffs_.size(), rel));
    rem.resize(rel, Cyclotomic());
    for (long m = 0; m < rel; ++m) {
        if (rem[m].is_zero()) continue;
        Cyclotomic c = rem[m] * lead_inv;
        s.coeffs_[m] = c;
        long jmax = std::min<long>(y.coeffs_.size(), rel - m);
        for (long j = 1; j < jmax; ++j) {
            if (y.coeffs_[j].is_zero()) continue;
            rem[m + j] -= c * y.coeffs_[j];
        }
    }
    s.normalize();
    s.compact();
    return s;
}

PuiseuxSeries PuiseuxSeries::scaled(const Cyclotomic& c) const {
    if (c.is_zero()) {
        PuiseuxSeries s;
        s.denom_ = denom_;
        s.prec_ = prec_;
        s.val_ = prec_;
        return s;
    }
    PuiseuxSeries s = *this;
    for (auto& a : s.coeffs_) a *= c;
    return s;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rational& exponent) const {
    long q = to_long(Integer(exponent.get_den()));
    long d = checked_lcm(denom_, q);
    PuiseuxSeries s = rebased(d);
    long off = to_long(Integer(Rational(exponent * d).get_num()));
    s.val_ += off;
    s.prec_ += off;
    s.compact();
    return s;
}

PuiseuxSeries PuiseuxSeries::rescale(const Rational& h) const {
    if (h <= 0) throw std::domain_error("rescale factor must be positive");
    long p = to_long(Integer(h.get_num()));
    long q = to_long(Integer(h.get_den()));
    PuiseuxSeries s;
    s.denom_ = denom_ * q;
    s.val_ = val_ * p;
    s.prec_ = prec_ * p;
    if (!coeffs_.empty()) {
        s.coeffs_.assign(s.prec_ - s.val_, Cyclotomic());
        for (size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * p] = coeffs_[i];
    }
    s.compact();
    return s;
}

PuiseuxSeries PuiseuxSeries::twist(const Rational& b) const {
    if (b == 0) return *this;
    PuiseuxSeries s = *this;
    for (size_t i = 0; i < s.coeffs_.size(); ++i) {
        if (s.coeffs_[i].is_zero()) continue;
        Rational turn = b * make_rational(val_ + static_cast<long>(i), denom_);
        turn.canonicalize();
        s.coeffs_[i] *= Cyclotomic::unit_phase(turn);
    }
    return s;
}

PuiseuxSeries PuiseuxSeries::slash_down(long n) const {
    if (coeffs_.empty()) throw std::domain_error("slash operator on zero series");
    return rescale(make_rational(1, n)).pow_int(n) / *this;
}

PuiseuxSeries PuiseuxSeries::slash_up(long n) const {
    if (coeffs_.empty()) throw std::domain_error("slash operator on zero series");
    return rescale(Rational(n)).pow_int(n) / *this;
}

PuiseuxSeries PuiseuxSeries::pow_int(long e) const {
    if (e == 0) return constant(Cyclotomic(Rational(1)), precision());
    if (e < 0) {
        PuiseuxSeries one = constant(Cyclotomic(Rational(1)), precision());
        return (one / *this).pow_int(-e);
    }
    PuiseuxSeries base = *this;
    PuiseuxSeries acc;
    bool started = false;
    long n = e;
    while (n) {
        if (n & 1) {
            acc = started ? acc * base : base;
            started = true;
        }
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

// log of a unit series with leading coefficient 1 at valuation 0.
PuiseuxSeries PuiseuxSeries::unit_log() const {
    long n = prec_ - val_;
    std::vector<Cyclotomic> a(coeffs_);
    a.resize(n, Cyclotomic());
    std::vector<Cyclotomic> l(n, Cyclotomic());
    for (long m = 1; m < n; ++m) {
        // m a_m = m l_m + sum_{k<m} k l_k a_{m-k}
        Cyclotomic acc;
        for (long k = 1; k < m; ++k) {
            if (l[k].is_zero() || a[m - k].is_zero()) continue;
            acc += Rational(k) * (l[k] * a[m - k]);
        }
        l[m] = a[m] - Cyclotomic(make_rational(1, m)) * acc;
    }
    PuiseuxSeries s;
    s.denom_ = denom_;
    s.val_ = 0;
    s.prec_ = n;
    s.coeffs_ = std::move(l);
    s.normalize();
    return s;
}

// exp of a series with positive valuation (index units), constant term 0.
PuiseuxSeries PuiseuxSeries::unit_exp() const {
    long n = prec_;
    std::vector<Cyclotomic> m_(n, Cyclotomic());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        long idx = val_ + static_cast<long>(i);
        if (idx < n) m_[idx] = coeffs_[i];
    }
    std::vector<Cyclotomic> e(n, Cyclotomic());
    e[0] = Cyclotomic(Rational(1));
    for (long k = 1; k < n; ++k) {
        Cyclotomic acc;
        for (long j = 1; j <= k; ++j) {
            if (m_[j].is_zero() || e[k - j].is_zero()) continue;
            acc += Rational(j) * (m_[j] * e[k - j]);
        }
        e[k] = Rational(1, k) * acc;
    }
    PuiseuxSeries s;
    s.denom_ = denom_;
    s.val_ = 0;
    s.prec_ = n;
    s.coeffs_ = std::move(e);
    s.normalize();
    return s;
}

PuiseuxSeries PuiseuxSeries::nth_root(long n, const std::optional<Cyclotomic>& leading_root) const {
    if (n < 1) throw std::domain_error("nth_root needs n >= 1");
    if (coeffs_.empty()) throw std::domain_error("nth_root of zero-to-precision series");
    if (n == 1) return *this;
    Cyclotomic lead = coeffs_[0];
    Cyclotomic r0;
    if (leading_root) {
        r0 = *leading_root;
        if (r0.pow(n) != lead)
            throw std::domain_error("supplied leading_root is not an n-th root of the lead");
    } else {
        auto r = lead.nth_root(n);
        if (!r) throw std::domain_error("leading coefficient has no representable n-th root");
        r0 = *r;
    }
    // unit part with leading coefficient 1
    PuiseuxSeries unit;
    unit.denom_ = denom_;
    unit.val_ = 0;
    unit.prec_ = prec_ - val_;
    unit.coeffs_ = coeffs_;
    Cyclotomic inv = lead.inverse();
    for (auto& c : unit.coeffs_) c *= inv;
    PuiseuxSeries root_unit = unit.unit_log().scaled(Cyclotomic(make_rational(1, n))).unit_exp();
    PuiseuxSeries out = root_unit.scaled(r0).shifted(make_rational(val_, denom_ * n));
    return out;
}

PuiseuxSeries PuiseuxSeries::pow_rational(const Rational& alpha) const {
    if (coeffs_.empty()) throw std::domain_error("rational power of zero-to-precision series");
    if (coeffs_[0] != Cyclotomic(Rational(1)))
        throw std::domain_error("pow_rational requires leading coefficient 1");
    if (is_integer(alpha)) return pow_int(to_long(Integer(alpha.get_num())));
    PuiseuxSeries unit;
    unit.denom_ = denom_;
    unit.val_ = 0;
    unit.prec_ = prec_ - val_;
    unit.coeffs_ = coeffs_;
    PuiseuxSeries powed = unit.unit_log().scaled(Cyclotomic(alpha)).unit_exp();
    return powed.shifted(alpha * make_rational(val_, denom_));
}

PuiseuxSeries PuiseuxSeries::coeff_map_sigma(long t) const {
    PuiseuxSeries s = *this;
    for (auto& c : s.coeffs_) c = c.sigma(t);
    return s;
}

PuiseuxSeries::Compare PuiseuxSeries::equal_to_precision(const PuiseuxSeries& a,
                                                         const PuiseuxSeries& b,
                                                         const Rational& order) {
    Rational avail = std::min(a.precision(), b.precision());
    if (avail < order) return {Compare::Inconclusive, avail, {}, {}};
    long d = common_denom(a, b);
    PuiseuxSeries x = a.rebased(d), y = b.rebased(d);
    long cutoff = ceil_index(order, d);
    long lo = std::min(x.val_, y.val_);
    for (long i = lo; i < cutoff; ++i) {
        Cyclotomic cx = (i >= x.val_ && i - x.val_ < static_cast<long>(x.coeffs_.size()))
                            ? x.coeffs_[i - x.val_]
                            : Cyclotomic();
        Cyclotomic cy = (i >= y.val_ && i - y.val_ < static_cast<long>(y.coeffs_.size()))
                            ? y.coeffs_[i - y.val_]
                            : Cyclotomic();
        if (cx != cy) return {Compare::Unequal, make_rational(i, d), cx, cy};
    }
    return {Compare::Equal, order, {}, {}};
}

std::string PuiseuxSeries::str(long max_terms) const {
    if (coeffs_.empty()) return "O(q^" + to_string(precision()) + ")";
    std::ostringstream os;
    long shown = 0;
    for (size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (shown) os << " + ";
        Rational e = make_rational(val_ + static_cast<long>(i), denom_);
        os << "(" << coeffs_[i].str() << ")";
        if (e != 0) os << "*q^" << to_string(e);
        ++shown;
    }
    os << " + O(q^" << to_string(precision()) << ")";
    return os.str();
}

std::string PuiseuxSeries::to_json() const {
    std::ostringstream os;
    os << "{\"denom\":" << denom_ << ",\"valuation\":" << val_ << ",\"prec\":" << prec_
       << ",\"coeffs\":[";
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << ",";
        first = false;
        os << "[" << (val_ + static_cast<long>(i)) << ",[" << coeffs_[i].order() << ",[";
        bool f2 = true;
        for (const auto& [e, c] : coeffs_[i].terms()) {
            if (!f2) os << ",";
            f2 = false;
            os << "[" << e << "," << c.get_num() << "," << c.get_den() << "]";
        }
        os << "]]]";
    }
    os << "]}";
    return os.str();
}

}  // namespace qmod
