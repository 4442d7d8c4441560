#include "qmod/dsl.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace qmod {
namespace dsl {

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    size_t i = 0;
    auto prev_kind = [&]() -> Token::Kind {
        return out.empty() ? Token::Kind::Sym : out.back().kind;
    };
    auto prev_text = [&]() -> std::string { return out.empty() ? "" : out.back().text; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            // An adjacent "/digits" forms a rational literal unless the
            // context reads as a division of a completed operand (after an
            // ident, an integer, ')' or an exponent caret). In every position
            // where both readings parse they agree in value; the exponent
            // position is the one that must stay an integer.
            bool allow_rat = true;
            if (prev_kind() == Token::Kind::Ident || prev_kind() == Token::Kind::Int ||
                prev_kind() == Token::Kind::Rat || prev_text() == ")" || prev_text() == "^")
                allow_rat = false;
            if (allow_rat && i + 1 < src.size() && src[i] == '/' &&
                std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                ++i;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                out.push_back({Token::Kind::Rat, src.substr(start, i - start), start});
            } else {
                out.push_back({Token::Kind::Int, src.substr(start, i - start), start});
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Token::Kind::Ident, src.substr(start, i - start), start});
            continue;
        }
        static const std::string symbols = "+-*/^<>().,";
        if (symbols.find(c) != std::string::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), i});
            ++i;
            continue;
        }
        throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", src.size()});
    return out;
}

namespace {

using forms::EtaDecoration;

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;

    explicit Parser(const std::string& src) : toks(tokenize(src)) {}

    const Token& peek() const { return toks[at]; }
    Token next() { return toks[at++]; }

    bool eat_sym(const std::string& s) {
        if (peek().kind == Token::Kind::Sym && peek().text == s) {
            ++at;
            return true;
        }
        return false;
    }

    void expect_sym(const std::string& s) {
        if (!eat_sym(s)) throw ParseError(peek().pos, "expected '" + s + "'");
    }

    long expect_int() {
        bool neg = eat_sym("-");
        if (peek().kind != Token::Kind::Int) throw ParseError(peek().pos, "expected an integer");
        Token t = next();
        long v;
        try {
            v = std::stol(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.pos, "integer out of range");
        }
        return neg ? -v : v;
    }

    Rational expect_rational() {
        bool neg = eat_sym("-");
        if (peek().kind == Token::Kind::Rat || peek().kind == Token::Kind::Int) {
            Token t = next();
            try {
                Rational r = parse_rational(t.text);
                return neg ? Rational(-r) : r;
            } catch (const std::exception&) {
                throw ParseError(t.pos, "malformed rational");
            }
        }
        throw ParseError(peek().pos, "expected a rational");
    }

    static ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            if (eat_sym("+")) {
                Expr e{Expr::Kind::Add};
                e.a = lhs;
                e.b = parse_term();
                lhs = make(std::move(e));
            } else if (eat_sym("-")) {
                Expr e{Expr::Kind::Sub};
                e.a = lhs;
                e.b = parse_term();
                lhs = make(std::move(e));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            if (eat_sym("*")) {
                Expr e{Expr::Kind::Mul};
                e.a = lhs;
                e.b = parse_factor();
                lhs = make(std::move(e));
            } else if (eat_sym("/")) {
                Expr e{Expr::Kind::Div};
                e.a = lhs;
                e.b = parse_factor();
                lhs = make(std::move(e));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        if (eat_sym("-")) {
            Expr e{Expr::Kind::Neg};
            e.a = parse_postfixed();
            return make(std::move(e));
        }
        return parse_postfixed();
    }

    Rational parse_exponent() {
        // exponent := ['-'] integer | '(' rational ')'; a chain a^b^c folds
        // right-associatively
        Rational r;
        if (eat_sym("(")) {
            r = expect_rational();
            expect_sym(")");
        } else {
            r = Rational(expect_int());
        }
        if (eat_sym("^")) {
            Rational inner = parse_exponent();
            if (!is_integer(inner)) throw ParseError(peek().pos, "tower exponent must be integral");
            Integer n = inner.get_num();
            if (n > 1024 || n < -1024) throw ParseError(peek().pos, "exponent tower too large");
            r = rational_pow(r, to_long(n));
        }
        return r;
    }

    ExprPtr parse_postfixed() {
        ExprPtr cur = parse_atom();
        while (true) {
            if (eat_sym("^")) {
                Expr e{Expr::Kind::Pow};
                e.a = cur;
                e.rat = parse_exponent();
                cur = make(std::move(e));
            } else if (eat_sym("<")) {
                Expr e{Expr::Kind::Rescale};
                e.a = cur;
                e.rat = expect_rational();
                if (e.rat <= 0) throw ParseError(peek().pos, "rescale factor must be positive");
                expect_sym(">");
                cur = make(std::move(e));
            } else if (eat_sym(".")) {
                if (peek().kind != Token::Kind::Ident)
                    throw ParseError(peek().pos, "expected a decoration name");
                Token t = next();
                Expr e{Expr::Kind::DecorOp};
                e.a = cur;
                if (t.text == "flat")
                    e.decor = EtaDecoration::Flat;
                else if (t.text == "sharp")
                    e.decor = EtaDecoration::Sharp;
                else if (t.text == "natural")
                    e.decor = EtaDecoration::Natural;
                else if (t.text == "bot")
                    e.decor = EtaDecoration::Bot;
                else if (t.text == "top")
                    e.decor = EtaDecoration::Top;
                else if (t.text == "nw")
                    e.decor = EtaDecoration::NW;
                else if (t.text == "sw")
                    e.decor = EtaDecoration::SW;
                else
                    throw ParseError(t.pos, "unknown decoration ." + t.text);
                cur = make(std::move(e));
            } else {
                return cur;
            }
        }
    }

    CharPtr parse_char_expr() {
        CharPtr lhs = parse_char_factor();
        while (eat_sym("*")) {
            auto e = std::make_shared<CharNode>();
            e->kind = CharNode::Kind::Mul;
            e->a = lhs;
            e->b = parse_char_factor();
            lhs = e;
        }
        return lhs;
    }

    CharPtr parse_char_factor() {
        CharPtr base = parse_char_atom();
        if (eat_sym("^")) {
            auto e = std::make_shared<CharNode>();
            e->kind = CharNode::Kind::Pow;
            e->a = base;
            e->k = expect_int();
            return e;
        }
        return base;
    }

    CharPtr parse_char_atom() {
        if (peek().kind != Token::Kind::Ident)
            throw ParseError(peek().pos, "expected a character expression");
        Token t = next();
        auto e = std::make_shared<CharNode>();
        if (t.text == "chi") {
            expect_sym("(");
            e->kind = CharNode::Kind::Chi;
            e->n = expect_int();
            expect_sym(")");
        } else if (t.text == "one") {
            expect_sym("(");
            e->kind = CharNode::Kind::One;
            e->n = expect_int();
            expect_sym(")");
        } else if (t.text == "bar") {
            expect_sym("(");
            e->kind = CharNode::Kind::Bar;
            e->a = parse_char_expr();
            expect_sym(")");
        } else if (t.text == "xi8") {
            e->kind = CharNode::Kind::Xi8;
        } else if (t.text == "sqrt_chi4") {
            e->kind = CharNode::Kind::SqrtChi4;
        } else {
            throw ParseError(t.pos, "unknown character atom " + t.text);
        }
        return e;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int || t.kind == Token::Kind::Rat) {
            Token num = next();
            Expr e{Expr::Kind::Number};
            try {
                e.rat = parse_rational(num.text);
            } catch (const std::exception&) {
                throw ParseError(num.pos, "malformed number");
            }
            return make(std::move(e));
        }
        if (eat_sym("(")) {
            ExprPtr inner = parse_expr();
            expect_sym(")");
            return inner;
        }
        if (t.kind != Token::Kind::Ident) throw ParseError(t.pos, "expected an atom");
        Token name = next();
        auto arg_open = [&]() { expect_sym("("); };
        Expr e{Expr::Kind::Number};
        if (name.text == "q") {
            e.kind = Expr::Kind::QAtom;
        } else if (name.text == "eta") {
            e.kind = Expr::Kind::EtaAtom;
        } else if (name.text == "theta") {
            e.kind = Expr::Kind::ThetaAtom;
        } else if (name.text == "etachi5") {
            e.kind = Expr::Kind::EtaChi5Atom;
        } else if (name.text == "zeta") {
            arg_open();
            e.kind = Expr::Kind::ZetaAtom;
            e.n = expect_int();
            expect_sym(")");
        } else if (name.text == "E1") {
            arg_open();
            e.kind = Expr::Kind::E1Atom;
            e.n = expect_int();
            if (e.n < 2 || e.n % 2) throw ParseError(name.pos, "E1(k) needs even k >= 2");
            expect_sym(")");
        } else if (name.text == "EN") {
            arg_open();
            e.kind = Expr::Kind::ENAtom;
            e.n = expect_int();
            expect_sym(")");
        } else if (name.text == "Echi") {
            arg_open();
            e.kind = Expr::Kind::EchiAtom;
            e.chr = parse_char_expr();
            expect_sym(")");
        } else if (name.text == "G") {
            arg_open();
            e.kind = Expr::Kind::GAtom;
            e.chr = parse_char_expr();
            expect_sym(",");
            e.chr2 = parse_char_expr();
            expect_sym(")");
        } else if (name.text == "thetachi") {
            arg_open();
            e.kind = Expr::Kind::ThetaChiAtom;
            e.chr = parse_char_expr();
            expect_sym(")");
        } else if (name.text == "f") {
            arg_open();
            e.kind = Expr::Kind::FNRAtom;
            e.n = expect_int();
            expect_sym(",");
            e.k = expect_int();
            expect_sym(")");
        } else if (name.text == "br") {
            arg_open();
            if (peek().kind != Token::Kind::Ident)
                throw ParseError(peek().pos, "expected a bracket family");
            e.kind = Expr::Kind::BrAtom;
            e.family = next().text;
            expect_sym(",");
            e.n = expect_int();
            expect_sym(",");
            e.k = expect_int();
            expect_sym(")");
        } else if (name.text == "hex") {
            arg_open();
            e.kind = Expr::Kind::HexAtom;
            e.n = expect_int();
            expect_sym(",");
            e.k = expect_int();
            expect_sym(")");
        } else if (name.text == "qprod" || name.text == "qprodp") {
            arg_open();
            e.kind = Expr::Kind::QprodAtom;
            e.flag = (name.text == "qprodp");
            e.n = expect_int();
            expect_sym(",");
            e.k = expect_int();
            expect_sym(",");
            e.rat = expect_rational();
            if (eat_sym(",")) e.n2 = expect_int();
            expect_sym(")");
        } else if (name.text == "root") {
            arg_open();
            e.kind = Expr::Kind::RootOp;
            e.n = expect_int();
            expect_sym(",");
            e.a = parse_expr();
            if (eat_sym(",")) e.b = parse_expr();
            expect_sym(")");
        } else if (name.text == "twist") {
            arg_open();
            e.kind = Expr::Kind::TwistOp;
            e.rat = expect_rational();
            expect_sym(",");
            e.a = parse_expr();
            expect_sym(")");
        } else if (name.text == "sigma") {
            arg_open();
            e.kind = Expr::Kind::SigmaOp;
            e.n = expect_int();
            expect_sym(",");
            e.a = parse_expr();
            expect_sym(")");
        } else if (name.text == "slashdown") {
            arg_open();
            e.kind = Expr::Kind::SlashDown;
            e.n = expect_int();
            expect_sym(",");
            e.a = parse_expr();
            expect_sym(")");
        } else if (name.text == "slashup") {
            arg_open();
            e.kind = Expr::Kind::SlashUp;
            e.n = expect_int();
            expect_sym(",");
            e.a = parse_expr();
            expect_sym(")");
        } else {
            throw ParseError(name.pos, "unknown name '" + name.text + "'");
        }
        return make(std::move(e));
    }
};

}  // namespace

ExprPtr parse(const std::string& src) {
    Parser p(src);
    try {
        ExprPtr e = p.parse_expr();
        if (p.peek().kind != Token::Kind::End) throw ParseError(p.peek().pos, "trailing input");
        return e;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        // arithmetic limits inside literal folding surface as positioned errors
        throw ParseError(p.peek().pos, ex.what());
    }
}

std::string print_char(const CharPtr& c) {
    switch (c->kind) {
        case CharNode::Kind::Chi: return "chi(" + std::to_string(c->n) + ")";
        case CharNode::Kind::One: return "one(" + std::to_string(c->n) + ")";
        case CharNode::Kind::Bar: return "bar(" + print_char(c->a) + ")";
        case CharNode::Kind::Mul: return print_char(c->a) + "*" + print_char(c->b);
        case CharNode::Kind::Pow: return print_char(c->a) + "^" + std::to_string(c->k);
        case CharNode::Kind::Xi8: return "xi8";
        case CharNode::Kind::SqrtChi4: return "sqrt_chi4";
    }
    return "?";
}

UnitMap eval_char(const CharPtr& c) {
    switch (c->kind) {
        case CharNode::Kind::Chi: return named_chi(c->n);
        case CharNode::Kind::One: return trivial_character(c->n);
        case CharNode::Kind::Bar: return eval_char(c->a).bar();
        case CharNode::Kind::Mul: return eval_char(c->a) * eval_char(c->b);
        case CharNode::Kind::Pow: return eval_char(c->a).pow(c->k);
        case CharNode::Kind::Xi8: return xi8();
        case CharNode::Kind::SqrtChi4: return sqrt_chi4();
    }
    throw EvalError("bad character node");
}

namespace {

const char* decor_name(EtaDecoration d) {
    switch (d) {
        case EtaDecoration::Flat: return "flat";
        case EtaDecoration::Sharp: return "sharp";
        case EtaDecoration::Natural: return "natural";
        case EtaDecoration::Bot: return "bot";
        case EtaDecoration::Top: return "top";
        case EtaDecoration::NW: return "nw";
        case EtaDecoration::SW: return "sw";
    }
    return "?";
}

std::string maybe_paren(const ExprPtr& e, bool need) {
    std::string s = print(e);
    return need ? "(" + s + ")" : s;
}

bool is_atomic(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Neg:
            return false;
        default:
            return true;
    }
}

bool is_mul_level(const ExprPtr& e) {
    return e->kind == Expr::Kind::Mul || e->kind == Expr::Kind::Div || is_atomic(e);
}

}  // namespace

std::string print(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Number: return to_string(e->rat);
        case Expr::Kind::QAtom: return "q";
        case Expr::Kind::ZetaAtom: return "zeta(" + std::to_string(e->n) + ")";
        case Expr::Kind::Add: return print(e->a) + " + " + print(e->b);
        case Expr::Kind::Sub:
            return print(e->a) + " - " +
                   maybe_paren(e->b, e->b->kind == Expr::Kind::Add || e->b->kind == Expr::Kind::Sub);
        case Expr::Kind::Mul:
            return maybe_paren(e->a, !is_mul_level(e->a)) + "*" +
                   maybe_paren(e->b, !is_mul_level(e->b));
        case Expr::Kind::Div:
            return maybe_paren(e->a, !is_mul_level(e->a)) + "/" + maybe_paren(e->b, !is_atomic(e->b));
        case Expr::Kind::Neg: return "-" + maybe_paren(e->a, !is_atomic(e->a));
        case Expr::Kind::Pow: {
            std::string base = maybe_paren(e->a, !is_atomic(e->a));
            if (is_integer(e->rat) && e->rat >= 0) return base + "^" + to_string(e->rat);
            return base + "^(" + to_string(e->rat) + ")";
        }
        case Expr::Kind::Rescale: return maybe_paren(e->a, !is_atomic(e->a)) + "<" + to_string(e->rat) + ">";
        case Expr::Kind::TwistOp:
            return "twist(" + to_string(e->rat) + ", " + print(e->a) + ")";
        case Expr::Kind::SigmaOp:
            return "sigma(" + std::to_string(e->n) + ", " + print(e->a) + ")";
        case Expr::Kind::SlashDown:
            return "slashdown(" + std::to_string(e->n) + ", " + print(e->a) + ")";
        case Expr::Kind::SlashUp:
            return "slashup(" + std::to_string(e->n) + ", " + print(e->a) + ")";
        case Expr::Kind::RootOp:
            return "root(" + std::to_string(e->n) + ", " + print(e->a) +
                   (e->b ? ", " + print(e->b) : "") + ")";
        case Expr::Kind::DecorOp:
            return maybe_paren(e->a, !is_atomic(e->a)) + "." + decor_name(e->decor);
        case Expr::Kind::EtaAtom: return "eta";
        case Expr::Kind::ThetaAtom: return "theta";
        case Expr::Kind::EtaChi5Atom: return "etachi5";
        case Expr::Kind::E1Atom: return "E1(" + std::to_string(e->n) + ")";
        case Expr::Kind::ENAtom: return "EN(" + std::to_string(e->n) + ")";
        case Expr::Kind::EchiAtom: return "Echi(" + print_char(e->chr) + ")";
        case Expr::Kind::GAtom:
            return "G(" + print_char(e->chr) + ", " + print_char(e->chr2) + ")";
        case Expr::Kind::ThetaChiAtom: return "thetachi(" + print_char(e->chr) + ")";
        case Expr::Kind::FNRAtom:
            return "f(" + std::to_string(e->n) + "," + std::to_string(e->k) + ")";
        case Expr::Kind::BrAtom:
            return "br(" + e->family + "," + std::to_string(e->n) + "," + std::to_string(e->k) + ")";
        case Expr::Kind::HexAtom:
            return "hex(" + std::to_string(e->n) + "," + std::to_string(e->k) + ")";
        case Expr::Kind::QprodAtom:
            return std::string(e->flag ? "qprodp" : "qprod") + "(" + std::to_string(e->n) + "," +
                   std::to_string(e->k) + "," + to_string(e->rat) +
                   (e->n2 != 1 ? "," + std::to_string(e->n2) : "") + ")";
    }
    return "?";
}

namespace {

PuiseuxSeries eval_bracket(const Expr& e, const Rational& order) {
    const std::string& fam = e.family;
    long num = e.n, den = e.k;
    if (fam == "eta") return forms::bracket_eta(num, den, order);
    if (fam == "S") {
        if (den != 9) throw EvalError("br(S,k,9) requires denominator 9");
        return forms::bracket_S9(num, order);
    }
    if (fam == "Ecap") {
        if (den != 9) throw EvalError("br(Ecap,k,9) requires denominator 9");
        return forms::bracket_E9(num, order);
    }
    if (fam == "s") {
        if (den == 3 || den == 9) return forms::bracket_s(num, den, order);
        if (4 % den == 0) return forms::bracket_s(num * (4 / den), 4, order);
        throw EvalError("br(s,num,den): denominator must divide 4, or be 3 or 9");
    }
    if (fam == "ms") {
        if (4 % den != 0) throw EvalError("br(ms,num,den): denominator must divide 4");
        return forms::bracket_minus_s(num * (4 / den), order);
    }
    if (fam == "u" && den == 3) return forms::bracket_u3(num, order);
    if (fam == "o" || fam == "u" || fam == "d") {
        if (4 % den != 0) throw EvalError("br(" + fam + ",num,den): denominator must divide 4");
        long k = num * (4 / den);
        if (fam == "o") return forms::bracket_o(k, order);
        if (fam == "u") return forms::bracket_u(k, order);
        return forms::bracket_d(k, order);
    }
    throw EvalError("unknown bracket family " + fam);
}

struct EvalCache {
    std::mutex mtx;
    std::map<std::string, PuiseuxSeries> entries;
};

EvalCache& eval_cache() {
    static EvalCache c;
    return c;
}

PuiseuxSeries eval_rec(const ExprPtr& e, const Rational& order);

PuiseuxSeries eval_cached(const ExprPtr& e, const Rational& order) {
    std::string key = print(e) + " @" + to_string(order);
    {
        std::lock_guard<std::mutex> lock(eval_cache().mtx);
        auto it = eval_cache().entries.find(key);
        if (it != eval_cache().entries.end()) return it->second;
    }
    PuiseuxSeries s = eval_rec(e, order);
    std::lock_guard<std::mutex> lock(eval_cache().mtx);
    eval_cache().entries.emplace(std::move(key), s);
    return s;
}

PuiseuxSeries eval_rec(const ExprPtr& e, const Rational& order) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return PuiseuxSeries::constant(Cyclotomic(e->rat), order);
        case Expr::Kind::QAtom:
            return PuiseuxSeries::monomial(Cyclotomic(Rational(1)), Rational(1), order);
        case Expr::Kind::ZetaAtom:
            return PuiseuxSeries::constant(Cyclotomic::root_of_unity(e->n, 1), order);
        case Expr::Kind::Add:
            return eval_cached(e->a, order) + eval_cached(e->b, order);
        case Expr::Kind::Sub:
            return eval_cached(e->a, order) - eval_cached(e->b, order);
        case Expr::Kind::Mul:
            return eval_cached(e->a, order) * eval_cached(e->b, order);
        case Expr::Kind::Div:
            return eval_cached(e->a, order + 2) / eval_cached(e->b, order + 2);
        case Expr::Kind::Neg:
            return -eval_cached(e->a, order);
        case Expr::Kind::Pow: {
            if (is_integer(e->rat)) {
                long k = to_long(Integer(e->rat.get_num()));
                return eval_cached(e->a, order + (k < 0 ? 2 : 0)).pow_int(k);
            }
            return eval_cached(e->a, order + 2).pow_rational(e->rat);
        }
        case Expr::Kind::Rescale:
            return eval_cached(e->a, order / e->rat).rescale(e->rat);
        case Expr::Kind::TwistOp:
            return eval_cached(e->a, order).twist(e->rat);
        case Expr::Kind::SigmaOp:
            return eval_cached(e->a, order).coeff_map_sigma(e->n);
        case Expr::Kind::SlashDown:
            return eval_cached(e->a, order * Rational(e->n) + 2).slash_down(e->n);
        case Expr::Kind::SlashUp:
            return eval_cached(e->a, order + 2).slash_up(e->n);
        case Expr::Kind::RootOp: {
            PuiseuxSeries base = eval_cached(e->a, order + 2);
            std::optional<Cyclotomic> lead;
            if (e->b) {
                PuiseuxSeries pin = eval_cached(e->b, Rational(1));
                lead = pin.coefficient(Rational(0));
            }
            return base.nth_root(e->n, lead);
        }
        case Expr::Kind::DecorOp: {
            long f = (e->decor == EtaDecoration::Flat || e->decor == EtaDecoration::Sharp ||
                      e->decor == EtaDecoration::Natural)
                         ? 2
                         : 3;
            return forms::decorate(eval_cached(e->a, order * Rational(f) + 2), e->decor);
        }
        case Expr::Kind::EtaAtom:
            return forms::eta(order);
        case Expr::Kind::ThetaAtom:
            return forms::theta(order);
        case Expr::Kind::EtaChi5Atom:
            return forms::eta_chi5(false, order);
        case Expr::Kind::E1Atom:
            return forms::eisenstein_level1(e->n, order);
        case Expr::Kind::ENAtom:
            return forms::eisenstein_levelN_weight2(e->n, order);
        case Expr::Kind::EchiAtom:
            return forms::eisenstein_weight1(eval_char(e->chr), order);
        case Expr::Kind::GAtom:
            return forms::eisenstein_G(eval_char(e->chr), eval_char(e->chr2), order);
        case Expr::Kind::ThetaChiAtom:
            return forms::theta_chi(eval_char(e->chr), order);
        case Expr::Kind::FNRAtom:
            return forms::f_nr(e->n, e->k, order);
        case Expr::Kind::BrAtom:
            return eval_bracket(*e, order);
        case Expr::Kind::HexAtom:
            return forms::hex_lattice(e->n, e->k, order);
        case Expr::Kind::QprodAtom:
            return forms::qprod(e->n, e->k, e->rat, e->n2, e->flag, order);
    }
    throw EvalError("bad expression node");
}

}  // namespace

PuiseuxSeries evaluate(const ExprPtr& e, const Rational& order) {
    Rational slack(2);
    for (int attempt = 0; attempt < 5; ++attempt) {
        PuiseuxSeries s;
        try {
            s = eval_cached(e, order + slack);
        } catch (const std::exception& ex) {
            throw EvalError(std::string(ex.what()) + " [in " + print(e) + "]");
        }
        if (s.precision() >= order) return s;
        slack = slack * 4;
    }
    throw EvalError("could not reach requested precision for " + print(e));
}

PuiseuxSeries evaluate_str(const std::string& src, const Rational& order) {
    return evaluate(parse(src), order);
}

}  // namespace dsl
}  // namespace qmod
