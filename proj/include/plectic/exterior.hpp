#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/polynomial.hpp"

namespace plectic {

/// A named coordinate chart; forms and fields live on exactly one chart.
struct Chart {
    std::vector<std::string> vars;

    explicit Chart(std::vector<std::string> names) : vars(std::move(names)) {
        if (vars.empty()) throw InputError("chart needs at least one variable");
        std::set<std::string> seen;
        for (const auto& v : vars) {
            if (v.empty()) throw InputError("chart variable name is empty");
            if (!seen.insert(v).second) throw InputError("duplicate chart variable: " + v);
        }
    }

    unsigned dim() const { return static_cast<unsigned>(vars.size()); }

    friend bool operator==(const Chart& a, const Chart& b) { return a.vars == b.vars; }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }
};

namespace detail {

/// Sorts indices ascending and returns the permutation parity (+1/-1),
/// or 0 when an index repeats.
inline int sort_with_parity(std::vector<unsigned>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i) {
        if (idx[i] == idx[i - 1]) return 0;
    }
    return sign;
}

}  // namespace detail

/**
 * @brief Degree-k differential form with Polynomial coefficients.
 *
 * Components are stored on strictly increasing index tuples only; tuples with
 * zero coefficient are dropped, so equality is structural. A degree beyond the
 * chart dimension is allowed and is silently the zero form.
 */
class DifferentialForm {
public:
    using ComponentMap = std::map<std::vector<unsigned>, Polynomial>;

    DifferentialForm(Chart chart, unsigned degree) : chart_(std::move(chart)), degree_(degree) {}

    static DifferentialForm zero(const Chart& chart, unsigned degree) {
        return DifferentialForm(chart, degree);
    }

    static DifferentialForm from_polynomial(const Chart& chart, const Polynomial& p) {
        if (p.dim() != chart.dim()) throw InputError("polynomial dimension does not match chart");
        DifferentialForm f(chart, 0);
        f.add_component({}, p);
        return f;
    }

    const Chart& chart() const { return chart_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const ComponentMap& components() const { return comps_; }

    /// Adds coef * dx_{idx[0]} ^ ... ^ dx_{idx[k-1]}; indices may arrive in any
    /// order and are canonicalized with the permutation sign.
    void add_component(std::vector<unsigned> idx, const Polynomial& coef) {
        if (idx.size() != degree_) throw InputError("component arity does not match form degree");
        if (coef.dim() != chart_.dim()) throw InputError("coefficient dimension does not match chart");
        for (unsigned i : idx) {
            if (i >= chart_.dim()) throw InputError("form index out of range");
        }
        if (coef.is_zero()) return;
        int sign = detail::sort_with_parity(idx);
        if (sign == 0) return;
        Polynomial c = sign == 1 ? coef : -coef;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(std::move(idx), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    Polynomial component(const std::vector<unsigned>& idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? Polynomial::zero(chart_.dim()) : it->second;
    }

    /// The underlying polynomial of a 0-form.
    Polynomial as_polynomial() const {
        if (degree_ != 0) throw InputError("as_polynomial requires a 0-form");
        return component({});
    }

    DifferentialForm operator-() const {
        DifferentialForm r(chart_, degree_);
        for (const auto& [idx, c] : comps_) r.comps_.emplace(idx, -c);
        return r;
    }

    DifferentialForm& operator+=(const DifferentialForm& o) {
        require_compatible(o);
        for (const auto& [idx, c] : o.comps_) accumulate(idx, c);
        return *this;
    }

    DifferentialForm& operator-=(const DifferentialForm& o) {
        require_compatible(o);
        for (const auto& [idx, c] : o.comps_) accumulate(idx, -c);
        return *this;
    }

    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }

    friend DifferentialForm operator*(const Rational& c, const DifferentialForm& f) {
        DifferentialForm r(f.chart_, f.degree_);
        if (c.is_zero()) return r;
        for (const auto& [idx, coef] : f.comps_) r.comps_.emplace(idx, c * coef);
        return r;
    }

    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
        return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

    std::string to_string() const {
        if (degree_ == 0) return component({}).to_string(chart_.vars);
        if (comps_.empty()) return "0";
        std::string out;
        for (const auto& [idx, c] : comps_) {
            std::string basis;
            for (unsigned i : idx) {
                if (!basis.empty()) basis += "^";
                basis += "d" + chart_.vars[i];
            }
            std::string cs = c.to_string(chart_.vars);
            std::string term;
            if (cs == "1") {
                term = basis;
            } else if (cs == "-1") {
                term = "-" + basis;
            } else if (c.terms().size() > 1) {
                term = "(" + cs + ")*" + basis;
            } else {
                term = cs + "*" + basis;
            }
            if (out.empty()) {
                out = term;
            } else if (!term.empty() && term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out;
    }

private:
    void require_compatible(const DifferentialForm& o) const {
        if (chart_ != o.chart_) throw InputError("form chart mismatch");
        if (degree_ != o.degree_) throw InputError("form degree mismatch");
    }

    void accumulate(const std::vector<unsigned>& idx, const Polynomial& c) {
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            if (!c.is_zero()) comps_.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    Chart chart_;
    unsigned degree_;
    ComponentMap comps_;
};

/// Vector field with one Polynomial component per chart variable.
class VectorField {
public:
    explicit VectorField(Chart chart)
        : chart_(std::move(chart)), comps_(chart_.dim(), Polynomial::zero(chart_.dim())) {}

    VectorField(Chart chart, std::vector<Polynomial> comps)
        : chart_(std::move(chart)), comps_(std::move(comps)) {
        if (comps_.size() != chart_.dim())
            throw InputError("vector field component count does not match chart");
        for (const auto& p : comps_) {
            if (p.dim() != chart_.dim())
                throw InputError("vector field component dimension does not match chart");
        }
    }

    static VectorField basis(const Chart& chart, unsigned index) {
        VectorField v(chart);
        v.set_component(index, Polynomial::constant(chart.dim(), Rational(1)));
        return v;
    }

    const Chart& chart() const { return chart_; }
    const Polynomial& component(unsigned i) const {
        if (i >= comps_.size()) throw InputError("vector field index out of range");
        return comps_[i];
    }
    void set_component(unsigned i, const Polynomial& p) {
        if (i >= comps_.size()) throw InputError("vector field index out of range");
        if (p.dim() != chart_.dim()) throw InputError("component dimension does not match chart");
        comps_[i] = p;
    }

    bool is_zero() const {
        for (const auto& p : comps_) {
            if (!p.is_zero()) return false;
        }
        return true;
    }

    /// Directional derivative X(f).
    Polynomial apply(const Polynomial& f) const {
        if (f.dim() != chart_.dim()) throw InputError("apply: polynomial dimension mismatch");
        Polynomial r(chart_.dim());
        for (unsigned i = 0; i < chart_.dim(); ++i) {
            if (!comps_[i].is_zero()) r += comps_[i] * f.diff(i);
        }
        return r;
    }

    VectorField operator-() const {
        VectorField r(chart_);
        for (unsigned i = 0; i < comps_.size(); ++i) r.comps_[i] = -comps_[i];
        return r;
    }

    VectorField& operator+=(const VectorField& o) {
        require_same_chart(o);
        for (unsigned i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
        return *this;
    }

    VectorField& operator-=(const VectorField& o) {
        require_same_chart(o);
        for (unsigned i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
        return *this;
    }

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }

    friend VectorField operator*(const Rational& c, const VectorField& v) {
        VectorField r(v.chart_);
        for (unsigned i = 0; i < v.comps_.size(); ++i) r.comps_[i] = c * v.comps_[i];
        return r;
    }

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.chart_ == b.chart_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

    std::string to_string() const {
        std::string out;
        for (unsigned i = 0; i < comps_.size(); ++i) {
            if (comps_[i].is_zero()) continue;
            std::string cs = comps_[i].to_string(chart_.vars);
            std::string term;
            if (cs == "1") {
                term = "d/d" + chart_.vars[i];
            } else if (cs == "-1") {
                term = "-d/d" + chart_.vars[i];
            } else if (comps_[i].terms().size() > 1) {
                term = "(" + cs + ")*d/d" + chart_.vars[i];
            } else {
                term = cs + "*d/d" + chart_.vars[i];
            }
            if (out.empty()) {
                out = term;
            } else if (term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void require_same_chart(const VectorField& o) const {
        if (chart_ != o.chart_) throw InputError("vector field chart mismatch");
    }

    Chart chart_;
    std::vector<Polynomial> comps_;
};

/// Wedge product, with sign bookkeeping by permutation parity on merged tuples.
inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.chart() != b.chart()) throw InputError("wedge: chart mismatch");
    DifferentialForm r(a.chart(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.components()) {
        for (const auto& [ib, cb] : b.components()) {
            std::vector<unsigned> merged = ia;
            merged.insert(merged.end(), ib.begin(), ib.end());
            r.add_component(std::move(merged), ca * cb);
        }
    }
    return r;
}

/// Exterior derivative, computed term by term via partial derivatives.
inline DifferentialForm ext_d(const DifferentialForm& a) {
    DifferentialForm r(a.chart(), a.degree() + 1);
    unsigned n = a.chart().dim();
    for (const auto& [idx, c] : a.components()) {
        for (unsigned v = 0; v < n; ++v) {
            Polynomial dc = c.diff(v);
            if (dc.is_zero()) continue;
            std::vector<unsigned> nidx;
            nidx.reserve(idx.size() + 1);
            nidx.push_back(v);
            nidx.insert(nidx.end(), idx.begin(), idx.end());
            r.add_component(std::move(nidx), dc);
        }
    }
    return r;
}

/// Interior product; X fills the first argument slot of the form.
inline DifferentialForm interior(const VectorField& x, const DifferentialForm& a) {
    if (x.chart() != a.chart()) throw InputError("interior: chart mismatch");
    if (a.degree() == 0) throw InputError("interior: degree-0 form has no argument slot");
    DifferentialForm r(a.chart(), a.degree() - 1);
    for (const auto& [idx, c] : a.components()) {
        for (size_t j = 0; j < idx.size(); ++j) {
            const Polynomial& xc = x.component(idx[j]);
            if (xc.is_zero()) continue;
            std::vector<unsigned> nidx;
            nidx.reserve(idx.size() - 1);
            for (size_t t = 0; t < idx.size(); ++t) {
                if (t != j) nidx.push_back(idx[t]);
            }
            Polynomial coef = c * xc;
            if (j % 2 == 1) coef = -coef;
            r.add_component(std::move(nidx), coef);
        }
    }
    return r;
}

/// Commutator of vector fields: [X,Y]^k = sum_j (X^j dY^k/dx_j - Y^j dX^k/dx_j).
inline VectorField vf_bracket(const VectorField& x, const VectorField& y) {
    if (x.chart() != y.chart()) throw InputError("vf_bracket: chart mismatch");
    unsigned n = x.chart().dim();
    VectorField r(x.chart());
    for (unsigned k = 0; k < n; ++k) {
        Polynomial comp(n);
        for (unsigned j = 0; j < n; ++j) {
            if (!x.component(j).is_zero()) comp += x.component(j) * y.component(k).diff(j);
            if (!y.component(j).is_zero()) comp -= y.component(j) * x.component(k).diff(j);
        }
        r.set_component(k, comp);
    }
    return r;
}

/// Lie derivative via Cartan's magic formula; on 0-forms it is X(f).
inline DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& a) {
    if (x.chart() != a.chart()) throw InputError("lie_derivative: chart mismatch");
    if (a.degree() == 0) {
        return DifferentialForm::from_polynomial(a.chart(), x.apply(a.as_polynomial()));
    }
    return ext_d(interior(x, a)) + interior(x, ext_d(a));
}

/// Full antisymmetric multilinear evaluation a(X_1, ..., X_k) as a Polynomial.
inline Polynomial eval_on_fields(const DifferentialForm& a, const std::vector<VectorField>& xs) {
    if (xs.size() != a.degree()) throw InputError("eval_on_fields: arity does not match degree");
    for (const auto& x : xs) {
        if (x.chart() != a.chart()) throw InputError("eval_on_fields: chart mismatch");
    }
    unsigned n = a.chart().dim();
    if (a.degree() == 0) return a.component({});
    Polynomial total(n);
    // det over the k x k matrix M[r][s] = component idx[r] of field s, by
    // cofactor expansion; k stays tiny here.
    auto det = [&](auto&& self, const std::vector<unsigned>& rows,
                   const std::vector<unsigned>& cols) -> Polynomial {
        if (rows.size() == 1) return xs[cols[0]].component(rows[0]);
        Polynomial d(n);
        std::vector<unsigned> subrows(rows.begin() + 1, rows.end());
        for (size_t s = 0; s < cols.size(); ++s) {
            const Polynomial& pivot = xs[cols[s]].component(rows[0]);
            if (pivot.is_zero()) continue;
            std::vector<unsigned> subcols;
            subcols.reserve(cols.size() - 1);
            for (size_t t = 0; t < cols.size(); ++t) {
                if (t != s) subcols.push_back(cols[t]);
            }
            Polynomial minor = self(self, subrows, subcols);
            Polynomial term = pivot * minor;
            if (s % 2 == 1) term = -term;
            d += term;
        }
        return d;
    };
    std::vector<unsigned> all_cols(xs.size());
    for (unsigned s = 0; s < xs.size(); ++s) all_cols[s] = s;
    for (const auto& [idx, c] : a.components()) {
        total += c * det(det, idx, all_cols);
    }
    return total;
}

/**
 * @brief Pullback along a coordinate projection.
 *
 * Re-indexes a form on the base chart to the total chart; var_map[i] is the
 * total-chart index of base variable i and must be injective. Coefficients
 * are unchanged up to re-indexing.
 */
inline DifferentialForm pullback_projection(const DifferentialForm& a, const Chart& total,
                                            const std::vector<unsigned>& var_map) {
    if (var_map.size() != a.chart().dim())
        throw InputError("pullback_projection: map length does not match base chart");
    std::vector<bool> used(total.dim(), false);
    for (unsigned t : var_map) {
        if (t >= total.dim() || used[t])
            throw InputError("pullback_projection: variable map is not injective");
        used[t] = true;
    }
    DifferentialForm r(total, a.degree());
    for (const auto& [idx, c] : a.components()) {
        std::vector<unsigned> nidx;
        nidx.reserve(idx.size());
        for (unsigned i : idx) nidx.push_back(var_map[i]);
        r.add_component(std::move(nidx), c.reindex(total.dim(), var_map));
    }
    return r;
}

}  // namespace plectic
