#include "edsw/parser.hpp"

#include "edsw/errors.hpp"

#include <cctype>

namespace edsw {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    ChartPtr chart;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char ch) {
        skip_ws();
        if (pos < text.size() && text[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        skip_ws();
        if (pos >= text.size() || text[pos] != ch)
            throw SyntaxError(std::string("expected '") + ch + "'", pos);
        ++pos;
    }

    // expr := term (('+'|'-') term)*
    ElemExpr expr() {
        ElemExpr acc = term();
        while (true) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    // term := unary (('*'|'/') unary)*
    ElemExpr term() {
        ElemExpr acc = unary();
        while (true) {
            if (accept('*'))
                acc = acc * unary();
            else if (accept('/'))
                acc = acc / unary();
            else
                return acc;
        }
    }

    // unary := '-' unary | power      (power binds tighter than '-')
    ElemExpr unary() {
        if (accept('-'))
            return -unary();
        return power();
    }

    // power := atom ('^' unary)?      (right associative)
    ElemExpr power() {
        ElemExpr base = atom();
        if (accept('^')) {
            ElemExpr e = unary();
            auto r = e.as_rational();
            std::optional<Rat> c = r ? r->as_constant() : std::nullopt;
            if (!c)
                throw SyntaxError("exponent must be a rational constant", pos);
            return ElemExpr::pow(base, *c);
        }
        return base;
    }

    ElemExpr atom() {
        skip_ws();
        if (pos >= text.size())
            throw SyntaxError("unexpected end of input", pos);
        char ch = text[pos];
        if (ch == '(') {
            ++pos;
            ElemExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)))
            return number();
        if (std::isalpha(static_cast<unsigned char>(ch)))
            return identifier();
        throw SyntaxError(std::string("unexpected character '") + ch + "'", pos);
    }

    ElemExpr number() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        Int ipart(std::string(text.substr(start, pos - start)));
        Rat value(ipart);
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::size_t fstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (pos == fstart)
                throw SyntaxError("expected digits after decimal point", pos);
            Int frac(std::string(text.substr(fstart, pos - fstart)));
            Int scale = 1;
            for (std::size_t i = fstart; i < pos; ++i)
                scale *= 10;
            value += Rat(frac, scale);
        }
        return ElemExpr::constant(chart, value);
    }

    ElemExpr identifier() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name(text.substr(start, pos - start));
        skip_ws();
        bool call = pos < text.size() && text[pos] == '(';
        if (call) {
            auto fn = lookup_fn(name);
            if (fn) {
                ++pos;  // '('
                ElemExpr arg = expr();
                expect(')');
                if (*fn == ElemKind::rational)  // sqrt
                    return ElemExpr::pow(arg, Rat(1, 2));
                return ElemExpr::function(*fn, arg);
            }
        }
        if (chart->find(name))
            return ElemExpr::symbol(chart, name);
        throw UnknownIdentifier(name, start);
    }

    static std::optional<ElemKind> lookup_fn(const std::string& name) {
        if (name == "arctan" || name == "atan")
            return ElemKind::arctan;
        if (name == "ln")
            return ElemKind::ln;
        if (name == "exp")
            return ElemKind::exp;
        if (name == "sech")
            return ElemKind::sech;
        if (name == "tanh")
            return ElemKind::tanh;
        if (name == "sqrt")
            return ElemKind::rational;  // marker: rewrite as ^(1/2)
        return std::nullopt;
    }
};

}  // namespace

ElemExpr parse(std::string_view text, const ChartPtr& chart) {
    Parser p{text, 0, chart};
    if (p.eof())
        throw SyntaxError("empty expression", 0);
    ElemExpr e = p.expr();
    if (!p.eof())
        throw SyntaxError("trailing input", p.pos);
    return e;
}

RatExpr parse_rational(std::string_view text, const ChartPtr& chart) {
    ElemExpr e = parse(text, chart);
    auto r = e.as_rational();
    if (!r)
        throw Error("expression is not rational: " + std::string(text));
    return *r;
}

}  // namespace edsw
