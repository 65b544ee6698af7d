#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/rational.hpp"

namespace plectic {

/// Exponent vector of one monomial; its length always matches the chart dimension.
struct Monomial {
    std::vector<unsigned> exps;

    unsigned total_degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }

    /// Graded lexicographic order: total degree first, then lexicographic.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exps < b.exps;
    }
};

struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a < b; }
};

/**
 * @brief Exact multivariate polynomial over the rationals, canonical form.
 *
 * Terms are a map from monomials to nonzero rational coefficients; zero
 * coefficients are never stored, so equality is structural. Serialization
 * follows the graded lexicographic order (highest term first).
 */
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit Polynomial(unsigned dim) : dim_(dim) {}

    static Polynomial zero(unsigned dim) { return Polynomial(dim); }

    static Polynomial constant(unsigned dim, const Rational& c) {
        Polynomial p(dim);
        p.add_term(Monomial{std::vector<unsigned>(dim, 0)}, c);
        return p;
    }

    static Polynomial variable(unsigned dim, unsigned index, unsigned exponent = 1) {
        if (index >= dim) throw InputError("variable index out of range");
        Polynomial p(dim);
        Monomial m{std::vector<unsigned>(dim, 0)};
        m.exps[index] = exponent;
        p.add_term(m, Rational(1));
        return p;
    }

    unsigned dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.exps.size() != dim_) throw InputError("monomial length does not match dimension");
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Polynomial operator-() const {
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        require_same_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{std::vector<unsigned>(a.dim_)};
                for (unsigned i = 0; i < a.dim_; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.dim_);
        if (c.is_zero()) return r;
        for (const auto& [m, coef] : p.terms_) r.terms_.emplace(m, c * coef);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Formal partial derivative with respect to variable var_index.
    Polynomial diff(unsigned var_index) const {
        if (var_index >= dim_) throw InputError("diff: variable index out of range");
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            unsigned e = m.exps[var_index];
            if (e == 0) continue;
            Monomial n = m;
            n.exps[var_index] = e - 1;
            r.add_term(n, Rational(static_cast<long>(e)) * c);
        }
        return r;
    }

    /// Exact evaluation at a rational point.
    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != dim_) throw InputError("eval: point length does not match dimension");
        Rational total(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (unsigned i = 0; i < dim_; ++i) {
                if (m.exps[i] != 0) t *= point[i].pow(m.exps[i]);
            }
            total += t;
        }
        return total;
    }

    /// Re-expresses this polynomial on a larger chart; var_map[i] says where
    /// variable i of the current chart lands. The map must be injective.
    Polynomial reindex(unsigned new_dim, const std::vector<unsigned>& var_map) const {
        if (var_map.size() != dim_) throw InputError("reindex: map length does not match dimension");
        std::vector<bool> used(new_dim, false);
        for (unsigned t : var_map) {
            if (t >= new_dim || used[t]) throw InputError("reindex: variable map is not injective");
            used[t] = true;
        }
        Polynomial r(new_dim);
        for (const auto& [m, c] : terms_) {
            Monomial n{std::vector<unsigned>(new_dim, 0)};
            for (unsigned i = 0; i < dim_; ++i) n.exps[var_map[i]] = m.exps[i];
            r.add_term(n, c);
        }
        return r;
    }

    /// True when no term uses any variable with index >= first_dropped.
    bool depends_only_on_prefix(unsigned first_dropped) const {
        for (const auto& [m, c] : terms_) {
            for (unsigned i = first_dropped; i < dim_; ++i) {
                if (m.exps[i] != 0) return false;
            }
        }
        return true;
    }

    /// Drops trailing variables; every term must be independent of them.
    Polynomial restrict_to_prefix(unsigned new_dim) const {
        if (new_dim > dim_) throw InputError("restrict_to_prefix: target dimension too large");
        if (!depends_only_on_prefix(new_dim))
            throw InputError("restrict_to_prefix: polynomial depends on dropped variables");
        Polynomial r(new_dim);
        for (const auto& [m, c] : terms_) {
            Monomial n{std::vector<unsigned>(m.exps.begin(), m.exps.begin() + new_dim)};
            r.add_term(n, c);
        }
        return r;
    }

    std::string to_string(const std::vector<std::string>& var_names) const {
        if (var_names.size() != dim_) throw InputError("to_string: wrong number of variable names");
        if (terms_.empty()) return "0";
        std::string out;
        // Highest graded-lex term first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            bool negative = c.sign() < 0;
            Rational mag = negative ? -c : c;
            if (out.empty()) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            std::string vars;
            for (unsigned i = 0; i < dim_; ++i) {
                if (m.exps[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += var_names[i];
                if (m.exps[i] > 1) vars += "^" + std::to_string(m.exps[i]);
            }
            if (vars.empty()) {
                out += mag.to_string();
            } else if (mag.is_one()) {
                out += vars;
            } else {
                out += mag.to_string() + "*" + vars;
            }
        }
        return out;
    }

private:
    void require_same_dim(const Polynomial& o) const {
        if (dim_ != o.dim_) throw InputError("polynomial dimension mismatch");
    }

    unsigned dim_;
    TermMap terms_;
};

/// All monomials on dim variables with total degree <= bound, in graded-lex order.
inline std::vector<Monomial> monomials_up_to(unsigned dim, unsigned bound) {
    std::vector<Monomial> out;
    Monomial current{std::vector<unsigned>(dim, 0)};
    // Recursive enumeration, degree budget distributed left to right.
    auto rec = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
        if (pos == dim) {
            out.push_back(current);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            current.exps[pos] = e;
            self(self, pos + 1, remaining - e);
        }
        current.exps[pos] = 0;
    };
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return GradedLexLess{}(a, b);
    });
    return out;
}

}  // namespace plectic
