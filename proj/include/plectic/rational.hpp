#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "plectic/errors.hpp"

namespace plectic {

/**
 * @brief Arbitrary-precision rational number, always in reduced form.
 *
 * Wraps GMP's mpq_class and keeps the canonical-form invariants everywhere:
 * gcd(|num|, den) = 1, den > 0, zero is 0/1. Equality is therefore structural.
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer literals
    Rational(long n, long d) {
        if (d == 0) throw InputError("rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws InputError on malformed text.
    static Rational from_string(const std::string& s) {
        if (s.empty()) throw InputError("empty rational literal");
        try {
            mpq_class q(s, 10);
            if (q.get_den() == 0) throw InputError("rational with zero denominator: " + s);
            q.canonicalize();
            return Rational(q);
        } catch (const std::invalid_argument&) {
            throw InputError("malformed rational literal: " + s);
        }
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw InputError("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational pow(unsigned e) const {
        Rational r(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1u;
        }
        return r;
    }

    std::string to_string() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    std::string numerator_string() const { return v_.get_num().get_str(); }
    std::string denominator_string() const { return v_.get_den().get_str(); }

private:
    mpq_class v_;
};

}  // namespace plectic
