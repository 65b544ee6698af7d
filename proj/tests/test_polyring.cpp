#include <map>
#include <vector>

#include "doctest.h"
#include "plectic/polynomial.hpp"
#include "plectic/rational.hpp"
#include "plectic/rng.hpp"
#include "plectic/text.hpp"

using namespace plectic;

namespace {

const Chart kXY{{"x", "y"}};
const Chart kXYZ{{"x", "y", "z"}};

Polynomial P(const std::string& s, const Chart& chart = kXYZ) {
    return text::parse_polynomial(s, chart);
}

// Independent expansion oracle: schoolbook multiply over plain exponent maps,
// no Polynomial involved until the end.
Polynomial naive_product(const Polynomial& a, const Polynomial& b) {
    std::map<std::vector<unsigned>, Rational> acc;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<unsigned> e(ma.exps.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ma.exps[i] + mb.exps[i];
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, ca * cb);
            else
                it->second += ca * cb;
        }
    }
    Polynomial out(a.dim());
    for (const auto& [e, c] : acc) out.add_term(Monomial{e}, c);
    return out;
}

}  // namespace

TEST_SUITE("polyring") {

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0).to_string() == "0");
    CHECK(Rational(3, 2).to_string() == "3/2");
    CHECK(Rational::from_string("-6/4") == Rational(-3, 2));
    CHECK_THROWS_AS(Rational(1, 0), InputError);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(1, 3) * Rational(3, 5)) == Rational(1, 5));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
}

TEST_CASE("addition cancels exactly") {
    // (x + y) + (x - y) = 2x
    CHECK(P("x + y") + P("x - y") == P("2*x"));
}

TEST_CASE("multiplication by zero annihilates") {
    Polynomial prod = P("x") * Polynomial::zero(3);
    CHECK(prod.is_zero());
    CHECK(prod.terms().empty());
}

TEST_CASE("product expansion matches the distributivity oracle") {
    Polynomial a = P("x + 1");
    Polynomial b = P("x - 1");
    CHECK(a * b == naive_product(a, b));
    CHECK(a * b == P("x^2 - 1"));
}

TEST_CASE("partial derivatives") {
    // term-by-term power rule
    CHECK(P("x^2*y").diff(0) == P("2*x*y"));
    CHECK(P("x^2*y").diff(2) == Polynomial::zero(3));
    CHECK(P("7/3").diff(0) == Polynomial::zero(3));
    CHECK_THROWS_AS(P("x").diff(3), InputError);
}

TEST_CASE("exact evaluation") {
    CHECK(P("x^2 - y").eval({Rational(2), Rational(1), Rational(0)}) == Rational(3));
    CHECK(Polynomial::zero(3).eval({Rational(5), Rational(-7), Rational(1, 3)}) == Rational(0));
    Polynomial half_x = text::parse_polynomial("x/2", Chart{{"x"}});
    CHECK(half_x.eval({Rational(1, 3)}) == Rational(1, 6));
    CHECK_THROWS_AS(P("x").eval({Rational(1)}), InputError);
}

TEST_CASE("dimension mismatch is rejected") {
    Polynomial a(2), b(3);
    CHECK_THROWS_AS(a + b, InputError);
    CHECK_THROWS_AS(a * b, InputError);
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
    Rng rng(20240817);
    for (int i = 0; i < 40; ++i) {
        Polynomial a = random_polynomial(rng, 3, 3);
        Polynomial b = random_polynomial(rng, 3, 3);
        Polynomial c = random_polynomial(rng, 3, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("partial derivatives commute") {
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        Polynomial p = random_polynomial(rng, 4, 4);
        for (unsigned a = 0; a < 4; ++a)
            for (unsigned b = a + 1; b < 4; ++b) CHECK(p.diff(a).diff(b) == p.diff(b).diff(a));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    Rng rng(99);
    for (int i = 0; i < 30; ++i) {
        Polynomial p = random_polynomial(rng, 3, 3);
        Polynomial q = random_polynomial(rng, 3, 3);
        std::vector<Rational> pt{rng.rational(10, 5), rng.rational(10, 5), rng.rational(10, 5)};
        CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
        CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
    }
}

TEST_CASE("graded-lex serialization is canonical and parses back") {
    CHECK(P("x^2 - 1").to_string(kXYZ.vars) == "x^2 - 1");
    CHECK(P("3/2*x^2*y - z").to_string(kXYZ.vars) == "3/2*x^2*y - z");
    CHECK(P("y + x^2 + x*y").to_string(kXYZ.vars) == "x^2 + x*y + y");
    Rng rng(1234);
    for (int i = 0; i < 25; ++i) {
        Polynomial p = random_polynomial(rng, 3, 3);
        CHECK(text::parse_polynomial(p.to_string(kXYZ.vars), kXYZ) == p);
    }
}

TEST_CASE("monomial enumeration covers the bound") {
    auto ms = monomials_up_to(2, 2);
    CHECK(ms.size() == 6);  // 1, y, x, y^2, x*y, x^2
    for (const auto& m : ms) CHECK(m.total_degree() <= 2);
}

}  // TEST_SUITE
