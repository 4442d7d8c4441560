#include "qmod/hilbert.hpp"

#include <cctype>

namespace qmod {

PuiseuxSeries HilbertSeries::expand(const Rational& order) const {
    std::vector<std::pair<Rational, Cyclotomic>> terms;
    for (const auto& [c, e] : numerator) terms.emplace_back(e, Cyclotomic(c));
    PuiseuxSeries num = PuiseuxSeries::from_terms(terms, order);
    for (const Rational& a : denominator) {
        if (a <= 0) throw std::domain_error("denominator exponents must be positive");
        std::vector<std::pair<Rational, Cyclotomic>> f = {{Rational(0), Cyclotomic(Rational(1))},
                                                          {a, Cyclotomic(Rational(-1))}};
        num = num / PuiseuxSeries::from_terms(f, order);
    }
    return num;
}

Rational HilbertSeries::coefficient(const Rational& weight, const Rational& order) const {
    Cyclotomic c = expand(order).coefficient(weight);
    return c.is_zero() ? Rational(0) : c.rational_value();
}

namespace {

// Minimal recursive-descent parser for polynomial expressions in t.
struct TParser {
    const std::string& src;
    size_t pos = 0;
    Rational order;

    explicit TParser(const std::string& s, const Rational& ord) : src(s), order(ord) {}

    void skip() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("hilbert series at position " + std::to_string(pos) + ": " + msg);
    }

    Rational number() {
        skip();
        size_t start = pos;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos + 1 < src.size() && src[pos] == '/' &&
            std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        if (start == pos) fail("expected a number");
        return parse_rational(src.substr(start, pos - start));
    }

    PuiseuxSeries expr() {
        PuiseuxSeries acc = term();
        while (true) {
            skip();
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    PuiseuxSeries term() {
        PuiseuxSeries acc = factor();
        while (true) {
            skip();
            if (eat('*'))
                acc = acc * factor();
            else if (eat('/'))
                acc = acc / factor();
            else
                return acc;
        }
    }

    PuiseuxSeries factor() {
        PuiseuxSeries base = atom();
        skip();
        if (eat('^')) {
            skip();
            if (eat('(')) {
                Rational e = number();
                if (!eat(')')) fail("expected ')'");
                if (!is_integer(e)) fail("series powers must be integers; put rationals on t only");
                return base.pow_int(to_long(Integer(e.get_num())));
            }
            Rational e = number();
            if (!is_integer(e)) fail("series powers must be integers");
            return base.pow_int(to_long(Integer(e.get_num())));
        }
        return base;
    }

    PuiseuxSeries atom() {
        skip();
        if (eat('(')) {
            PuiseuxSeries inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (pos < src.size() && src[pos] == 't') {
            ++pos;
            Rational e(1);
            skip();
            if (pos < src.size() && src[pos] == '^') {
                ++pos;
                skip();
                if (eat('(')) {
                    e = number();
                    if (!eat(')')) fail("expected ')'");
                } else {
                    e = number();
                }
            }
            return PuiseuxSeries::monomial(Cyclotomic(Rational(1)), e, order);
        }
        Rational c = number();
        return PuiseuxSeries::constant(Cyclotomic(c), order);
    }
};

}  // namespace

PuiseuxSeries hilbert_eval(const std::string& text, const Rational& order) {
    TParser p(text, order);
    PuiseuxSeries s = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return s;
}

}  // namespace qmod
