#pragma once

#include "qmod/characters.hpp"
#include "qmod/forms.hpp"
#include "qmod/series.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qmod {
namespace dsl {

struct Token {
    enum class Kind { Ident, Int, Rat, Sym, End };
    Kind kind;
    std::string text;
    size_t pos;
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t p, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(p) + ": " + msg), pos(p) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Token> tokenize(const std::string& src);

struct CharNode;
using CharPtr = std::shared_ptr<const CharNode>;

struct CharNode {
    enum class Kind { Chi, One, Bar, Mul, Pow, Xi8, SqrtChi4 };
    Kind kind;
    long n = 0;
    long k = 0;
    CharPtr a, b;
};

UnitMap eval_char(const CharPtr& c);
std::string print_char(const CharPtr& c);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,
        QAtom,
        ZetaAtom,
        Add,
        Sub,
        Mul,
        Div,
        Neg,
        Pow,
        Rescale,
        TwistOp,
        SigmaOp,
        SlashDown,
        SlashUp,
        RootOp,
        DecorOp,
        EtaAtom,
        ThetaAtom,
        EtaChi5Atom,
        E1Atom,
        ENAtom,
        EchiAtom,
        GAtom,
        ThetaChiAtom,
        FNRAtom,
        BrAtom,
        HexAtom,
        QprodAtom,
    };
    Kind kind;
    Rational rat;     // Number / Pow exponent / Rescale factor / qprod alpha
    long n = 0;       // first integer parameter
    long k = 0;       // second integer parameter
    long n2 = 1;      // third integer parameter (qprod denominator)
    bool flag = false;  // qprodp
    std::string family;
    forms::EtaDecoration decor = forms::EtaDecoration::Flat;
    ExprPtr a, b;
    CharPtr chr, chr2;
};

ExprPtr parse(const std::string& src);
std::string print(const ExprPtr& e);

// Evaluates with precision at least `order` (an exponent bound), retrying
// with extra slack when intermediate operations lose precision.
PuiseuxSeries evaluate(const ExprPtr& e, const Rational& order);
PuiseuxSeries evaluate_str(const std::string& src, const Rational& order);

}  // namespace dsl
}  // namespace qmod
