#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/exterior.hpp"
#include "plectic/polynomial.hpp"
#include "plectic/rational.hpp"

namespace plectic {
namespace text {

// Expression grammar shared by scenario files and reports:
//   polynomial   3/2*x^2*y - z
//   form         x*dy^dz + du^dx        (dV is the differential of chart var V)
//   field        2*d/dx - x*d/dy
// '^' binds tighter than '*' and '/' and doubles as wedge between forms;
// '/' is only defined when the divisor reduces to a nonzero rational.

namespace detail {

struct Token {
    enum Kind { Number, Ident, DDVar, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Kind kind;
    std::string textv;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= s_.size()) return {Token::End, "", col};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::Number, s_.substr(start, pos_ - start), col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            // d/dx is lexed as one token
            if (c == 'd' && pos_ + 2 < s_.size() && s_[pos_ + 1] == '/' && s_[pos_ + 2] == 'd') {
                size_t start = pos_ + 3;
                size_t end = start;
                while (end < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                    ++end;
                if (end == start) throw ParseError("expected variable after d/d", 1, col);
                pos_ = end;
                return {Token::DDVar, s_.substr(start, end - start), col};
            }
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, s_.substr(start, pos_ - start), col};
        }
        ++pos_;
        switch (c) {
            case '+': return {Token::Plus, "+", col};
            case '-': return {Token::Minus, "-", col};
            case '*': return {Token::Star, "*", col};
            case '/': return {Token::Slash, "/", col};
            case '^': return {Token::Caret, "^", col};
            case '(': return {Token::LParen, "(", col};
            case ')': return {Token::RParen, ")", col};
            case ',': return {Token::Comma, ",", col};
            default: throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
        }
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    const std::string& s_;
    size_t pos_ = 0;
};

using Value = std::variant<Rational, Polynomial, DifferentialForm, VectorField>;

inline DifferentialForm scale_form(const Polynomial& p, const DifferentialForm& f) {
    DifferentialForm r(f.chart(), f.degree());
    for (const auto& [idx, c] : f.components()) r.add_component(idx, p * c);
    return r;
}

inline VectorField scale_field(const Polynomial& p, const VectorField& v) {
    VectorField r(v.chart());
    for (unsigned i = 0; i < v.chart().dim(); ++i) r.set_component(i, p * v.component(i));
    return r;
}

class Parser {
public:
    Parser(const std::string& s, const Chart& chart) : lexer_(s), chart_(chart) { advance(); }

    Value parse() {
        Value v = expression();
        expect(Token::End, "trailing input after expression");
        return v;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    void expect(Token::Kind k, const std::string& msg) {
        if (tok_.kind != k) throw ParseError(msg, 1, tok_.column);
    }

    Value expression() {
        bool negate = false;
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            if (tok_.kind == Token::Minus) negate = !negate;
            advance();
        }
        Value acc = term();
        if (negate) acc = neg(acc);
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            bool minus = tok_.kind == Token::Minus;
            advance();
            Value rhs = term();
            acc = add(acc, minus ? neg(rhs) : rhs, tok_.column);
        }
        return acc;
    }

    Value term() {
        Value acc = power();
        while (tok_.kind == Token::Star || tok_.kind == Token::Slash) {
            bool divide = tok_.kind == Token::Slash;
            int col = tok_.column;
            advance();
            Value rhs = power();
            acc = divide ? div(acc, rhs, col) : mul(acc, rhs, col);
        }
        return acc;
    }

    Value power() {
        Value acc = primary();
        while (tok_.kind == Token::Caret) {
            int col = tok_.column;
            advance();
            Value rhs = primary();
            if (std::holds_alternative<DifferentialForm>(acc) &&
                std::holds_alternative<DifferentialForm>(rhs)) {
                acc = wedge(std::get<DifferentialForm>(acc), std::get<DifferentialForm>(rhs));
            } else {
                acc = pow(acc, rhs, col);
            }
        }
        return acc;
    }

    Value primary() {
        switch (tok_.kind) {
            case Token::Number: {
                Rational r = Rational::from_string(tok_.textv);
                advance();
                return r;
            }
            case Token::Ident: {
                std::string name = tok_.textv;
                int col = tok_.column;
                advance();
                for (unsigned i = 0; i < chart_.dim(); ++i) {
                    if (chart_.vars[i] == name) return Polynomial::variable(chart_.dim(), i);
                }
                if (name.size() > 1 && name[0] == 'd') {
                    std::string var = name.substr(1);
                    for (unsigned i = 0; i < chart_.dim(); ++i) {
                        if (chart_.vars[i] == var) {
                            DifferentialForm f(chart_, 1);
                            f.add_component({i}, Polynomial::constant(chart_.dim(), Rational(1)));
                            return f;
                        }
                    }
                }
                throw ParseError("unknown identifier '" + name + "' on this chart", 1, col);
            }
            case Token::DDVar: {
                std::string var = tok_.textv;
                int col = tok_.column;
                advance();
                for (unsigned i = 0; i < chart_.dim(); ++i) {
                    if (chart_.vars[i] == var) return VectorField::basis(chart_, i);
                }
                throw ParseError("unknown variable '" + var + "' in d/d" + var, 1, col);
            }
            case Token::Minus: {
                advance();
                return neg(primary());
            }
            case Token::LParen: {
                advance();
                Value v = expression();
                expect(Token::RParen, "expected ')'");
                advance();
                return v;
            }
            default:
                throw ParseError("expected a term", 1, tok_.column);
        }
    }

    Polynomial as_poly(const Value& v, int col) const {
        if (std::holds_alternative<Rational>(v))
            return Polynomial::constant(chart_.dim(), std::get<Rational>(v));
        if (std::holds_alternative<Polynomial>(v)) return std::get<Polynomial>(v);
        if (std::holds_alternative<DifferentialForm>(v) &&
            std::get<DifferentialForm>(v).degree() == 0)
            return std::get<DifferentialForm>(v).as_polynomial();
        throw ParseError("expected a polynomial value", 1, col);
    }

    Value neg(const Value& v) {
        if (std::holds_alternative<Rational>(v)) return -std::get<Rational>(v);
        if (std::holds_alternative<Polynomial>(v)) return -std::get<Polynomial>(v);
        if (std::holds_alternative<DifferentialForm>(v)) return -std::get<DifferentialForm>(v);
        return -std::get<VectorField>(v);
    }

    Value add(const Value& a, const Value& b, int col) {
        if (std::holds_alternative<VectorField>(a) || std::holds_alternative<VectorField>(b)) {
            if (!(std::holds_alternative<VectorField>(a) && std::holds_alternative<VectorField>(b)))
                throw ParseError("cannot add a vector field to a non-field", 1, col);
            return std::get<VectorField>(a) + std::get<VectorField>(b);
        }
        bool fa = std::holds_alternative<DifferentialForm>(a);
        bool fb = std::holds_alternative<DifferentialForm>(b);
        if (fa || fb) {
            DifferentialForm da = fa ? std::get<DifferentialForm>(a)
                                     : DifferentialForm::from_polynomial(chart_, as_poly(a, col));
            DifferentialForm db = fb ? std::get<DifferentialForm>(b)
                                     : DifferentialForm::from_polynomial(chart_, as_poly(b, col));
            if (da.degree() != db.degree()) {
                if (da.is_zero()) return db;
                if (db.is_zero()) return da;
                throw ParseError("cannot add forms of different degrees", 1, col);
            }
            return da + db;
        }
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return std::get<Rational>(a) + std::get<Rational>(b);
        return as_poly(a, col) + as_poly(b, col);
    }

    Value mul(const Value& a, const Value& b, int col) {
        if (std::holds_alternative<DifferentialForm>(a) &&
            std::holds_alternative<DifferentialForm>(b)) {
            const auto& da = std::get<DifferentialForm>(a);
            const auto& db = std::get<DifferentialForm>(b);
            if (da.degree() > 0 && db.degree() > 0)
                throw ParseError("use ^ to wedge two forms", 1, col);
            if (da.degree() == 0) return scale_form(da.as_polynomial(), db);
            return scale_form(db.as_polynomial(), da);
        }
        if (std::holds_alternative<DifferentialForm>(b))
            return scale_form(as_poly(a, col), std::get<DifferentialForm>(b));
        if (std::holds_alternative<DifferentialForm>(a))
            return scale_form(as_poly(b, col), std::get<DifferentialForm>(a));
        if (std::holds_alternative<VectorField>(b))
            return scale_field(as_poly(a, col), std::get<VectorField>(b));
        if (std::holds_alternative<VectorField>(a))
            return scale_field(as_poly(b, col), std::get<VectorField>(a));
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return std::get<Rational>(a) * std::get<Rational>(b);
        return as_poly(a, col) * as_poly(b, col);
    }

    Value div(const Value& a, const Value& b, int col) {
        Rational divisor;
        if (std::holds_alternative<Rational>(b)) {
            divisor = std::get<Rational>(b);
        } else if (std::holds_alternative<Polynomial>(b) &&
                   std::get<Polynomial>(b).total_degree() == 0) {
            divisor = std::get<Polynomial>(b).coefficient(
                Monomial{std::vector<unsigned>(chart_.dim(), 0)});
        } else {
            throw ParseError("division is only defined by a rational constant", 1, col);
        }
        if (divisor.is_zero()) throw ParseError("division by zero", 1, col);
        return mul(a, Value(Rational(1) / divisor), col);
    }

    Value pow(const Value& a, const Value& b, int col) {
        if (!std::holds_alternative<Rational>(b))
            throw ParseError("exponent must be a nonnegative integer", 1, col);
        const Rational& e = std::get<Rational>(b);
        if (e.sign() < 0 || e.denominator_string() != "1")
            throw ParseError("exponent must be a nonnegative integer", 1, col);
        unsigned long exp = std::stoul(e.numerator_string());
        if (std::holds_alternative<Rational>(a))
            return std::get<Rational>(a).pow(static_cast<unsigned>(exp));
        Polynomial base = as_poly(a, col);
        Polynomial r = Polynomial::constant(chart_.dim(), Rational(1));
        for (unsigned long i = 0; i < exp; ++i) r = r * base;
        return r;
    }

    Lexer lexer_;
    Token tok_;
    Chart chart_;
};

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& s, const Chart& chart) {
    detail::Parser p(s, chart);
    auto v = p.parse();
    if (std::holds_alternative<Rational>(v))
        return Polynomial::constant(chart.dim(), std::get<Rational>(v));
    if (std::holds_alternative<Polynomial>(v)) return std::get<Polynomial>(v);
    if (std::holds_alternative<DifferentialForm>(v) &&
        std::get<DifferentialForm>(v).degree() == 0)
        return std::get<DifferentialForm>(v).as_polynomial();
    throw ParseError("expected a polynomial, got a form or field", 1, 1);
}

/// Parses a form; when expected_degree is given, a scalar zero is promoted to
/// the zero form of that degree and the final degree is validated.
inline DifferentialForm parse_form(const std::string& s, const Chart& chart,
                                   std::optional<unsigned> expected_degree = std::nullopt) {
    detail::Parser p(s, chart);
    auto v = p.parse();
    DifferentialForm f(chart, 0);
    if (std::holds_alternative<DifferentialForm>(v)) {
        f = std::get<DifferentialForm>(v);
    } else if (std::holds_alternative<Rational>(v)) {
        const Rational& r = std::get<Rational>(v);
        if (r.is_zero() && expected_degree)
            return DifferentialForm::zero(chart, *expected_degree);
        f = DifferentialForm::from_polynomial(chart, Polynomial::constant(chart.dim(), r));
    } else if (std::holds_alternative<Polynomial>(v)) {
        f = DifferentialForm::from_polynomial(chart, std::get<Polynomial>(v));
    } else {
        throw ParseError("expected a form, got a vector field", 1, 1);
    }
    if (expected_degree && f.degree() != *expected_degree) {
        if (f.is_zero()) return DifferentialForm::zero(chart, *expected_degree);
        throw ParseError("form has degree " + std::to_string(f.degree()) + ", expected " +
                             std::to_string(*expected_degree),
                         1, 1);
    }
    return f;
}

inline VectorField parse_field(const std::string& s, const Chart& chart) {
    detail::Parser p(s, chart);
    auto v = p.parse();
    if (std::holds_alternative<VectorField>(v)) return std::get<VectorField>(v);
    if (std::holds_alternative<Rational>(v) && std::get<Rational>(v).is_zero())
        return VectorField(chart);
    throw ParseError("expected a vector field", 1, 1);
}

/// Parses "(r1, r2, ..., rn)" with rational entries.
inline std::vector<Rational> parse_point(const std::string& s, unsigned dim) {
    detail::Lexer lex(s);
    auto tok = lex.next();
    if (tok.kind != detail::Token::LParen) throw ParseError("expected '('", 1, tok.column);
    std::vector<Rational> out;
    tok = lex.next();
    while (tok.kind != detail::Token::RParen) {
        bool neg = false;
        while (tok.kind == detail::Token::Minus) {
            neg = !neg;
            tok = lex.next();
        }
        if (tok.kind != detail::Token::Number)
            throw ParseError("expected a rational coordinate", 1, tok.column);
        Rational num = Rational::from_string(tok.textv);
        tok = lex.next();
        if (tok.kind == detail::Token::Slash) {
            tok = lex.next();
            if (tok.kind != detail::Token::Number)
                throw ParseError("expected denominator", 1, tok.column);
            Rational den = Rational::from_string(tok.textv);
            num = num / den;
            tok = lex.next();
        }
        out.push_back(neg ? -num : num);
        if (tok.kind == detail::Token::Comma) tok = lex.next();
    }
    tok = lex.next();
    if (tok.kind != detail::Token::End) throw ParseError("trailing input after point", 1, tok.column);
    if (out.size() != dim)
        throw ParseError("point has " + std::to_string(out.size()) + " coordinates, chart needs " +
                             std::to_string(dim),
                         1, 1);
    return out;
}

}  // namespace text
}  // namespace plectic
