#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/lie2.hpp"
#include "plectic/observables.hpp"
#include "plectic/plectic.hpp"
#include "plectic/rng.hpp"

namespace plectic {

/**
 * @brief Finite-dimensional surrogate of a bundle gerbe's curving data.
 *
 * The total chart is the product of a base chart M and a (possibly empty)
 * Euclidean fiber F; omega is a closed 3-form on M and theta a 2-form on the
 * total chart with d(theta) = pullback(omega), verified exactly on
 * construction. Fiber dimension 0 is the reduced picture where theta is a
 * potential for omega on M itself.
 */
class SurrogateBundle {
public:
    SurrogateBundle(Chart base, std::vector<std::string> fiber_vars, DifferentialForm omega,
                    DifferentialForm theta)
        : base_(std::move(base)),
          total_(make_total(base_, fiber_vars)),
          fiber_dim_(static_cast<unsigned>(fiber_vars.size())),
          omega_(std::move(omega)),
          theta_(std::move(theta)) {
        if (omega_.chart() != base_) throw InputError("omega must live on the base chart");
        if (omega_.degree() != 3) throw InputError("omega must be a 3-form");
        if (theta_.chart() != total_) throw InputError("theta must live on the total chart");
        if (theta_.degree() != 2) throw InputError("theta must be a 2-form");
        if (!ext_d(omega_).is_zero()) throw InputError("omega is not closed");
        DifferentialForm residual = ext_d(theta_) - pullback(omega_);
        if (!residual.is_zero())
            throw InputError("d theta != pullback omega; residual " + residual.to_string());
    }

    const Chart& base() const { return base_; }
    const Chart& total() const { return total_; }
    unsigned base_dim() const { return base_.dim(); }
    unsigned fiber_dim() const { return fiber_dim_; }
    const DifferentialForm& omega() const { return omega_; }
    const DifferentialForm& theta() const { return theta_; }

    /// Pullback of a base form along the projection (identity re-indexing).
    DifferentialForm pullback(const DifferentialForm& base_form) const {
        std::vector<unsigned> id_map(base_.dim());
        for (unsigned i = 0; i < base_.dim(); ++i) id_map[i] = i;
        return pullback_projection(base_form, total_, id_map);
    }

    Polynomial pullback(const Polynomial& base_poly) const {
        std::vector<unsigned> id_map(base_.dim());
        for (unsigned i = 0; i < base_.dim(); ++i) id_map[i] = i;
        return base_poly.reindex(total_.dim(), id_map);
    }

    /// True when every component with index in the base block vanishes.
    bool is_vertical(const VectorField& z) const {
        if (z.chart() != total_) return false;
        for (unsigned i = 0; i < base_dim(); ++i) {
            if (!z.component(i).is_zero()) return false;
        }
        return true;
    }

    /// Projectable: base components do not depend on fiber variables.
    bool is_projectable(const VectorField& x) const {
        if (x.chart() != total_) return false;
        for (unsigned i = 0; i < base_dim(); ++i) {
            if (!x.component(i).depends_only_on_prefix(base_dim())) return false;
        }
        return true;
    }

    /// The base vector field a projectable field covers.
    VectorField project(const VectorField& x) const {
        if (!is_projectable(x)) throw InputError("vector field is not projectable");
        VectorField r(base_);
        for (unsigned i = 0; i < base_dim(); ++i)
            r.set_component(i, x.component(i).restrict_to_prefix(base_dim()));
        return r;
    }

    /// Trivial extension of a base field to the total chart (zero fiber part).
    VectorField extend(const VectorField& base_field) const {
        if (base_field.chart() != base_) throw InputError("extend: field is not on the base chart");
        std::vector<unsigned> id_map(base_.dim());
        for (unsigned i = 0; i < base_.dim(); ++i) id_map[i] = i;
        VectorField r(total_);
        for (unsigned i = 0; i < base_dim(); ++i)
            r.set_component(i, base_field.component(i).reindex(total_.dim(), id_map));
        return r;
    }

    /// Drops a total-chart form to the base when it has no fiber content.
    std::optional<DifferentialForm> restrict_to_base(const DifferentialForm& f) const {
        DifferentialForm r(base_, f.degree());
        for (const auto& [idx, c] : f.components()) {
            for (unsigned i : idx) {
                if (i >= base_dim()) return std::nullopt;
            }
            if (!c.depends_only_on_prefix(base_dim())) return std::nullopt;
            r.add_component(idx, c.restrict_to_prefix(base_dim()));
        }
        return r;
    }

private:
    static Chart make_total(const Chart& base, const std::vector<std::string>& fiber_vars) {
        std::vector<std::string> names = base.vars;
        names.insert(names.end(), fiber_vars.begin(), fiber_vars.end());
        return Chart(names);
    }

    Chart base_;
    Chart total_;
    unsigned fiber_dim_;
    DifferentialForm omega_;
    DifferentialForm theta_;
};

/// A section of the surrogate Lie algebroid: vertical field Z plus function h.
struct SectionElement {
    VectorField z;
    Polynomial h;
};

/// Reduced data (X, g) of a multiplicative vector field: X projectable,
/// g a function on the total space, unique up to pullbacks from the base.
struct MultVFData {
    VectorField x;
    Polynomial g;
};

/// A weak infinitesimal symmetry in reduced data: (X, g) plus the 1-form B.
struct WeakSymmetryTriple {
    VectorField x;
    Polynomial g;
    DifferentialForm b;
};

inline SectionElement make_section(const SurrogateBundle& sb, VectorField z, Polynomial h) {
    if (z.chart() != sb.total()) throw InputError("section field must live on the total chart");
    if (h.dim() != sb.total().dim()) throw InputError("section function dimension mismatch");
    if (!sb.is_vertical(z)) throw InputError("section field must be vertical");
    return SectionElement{std::move(z), std::move(h)};
}

/// [(Z,h),(Z',h')] = ([Z,Z'], Z(h') - Z'(h) - theta(Z,Z')).
inline SectionElement section_bracket(const SurrogateBundle& sb, const SectionElement& a,
                                      const SectionElement& b, bool drop_theta_term = false) {
    if (a.z.chart() != sb.total() || b.z.chart() != sb.total())
        throw InputError("section_bracket: chart mismatch");
    VectorField z = vf_bracket(a.z, b.z);
    Polynomial h = a.z.apply(b.h) - b.z.apply(a.h);
    if (!drop_theta_term) h -= eval_on_fields(sb.theta(), {a.z, b.z});
    return SectionElement{std::move(z), std::move(h)};
}

/**
 * @brief Checks that (X, g, B) is a weak symmetry and extracts its base form.
 *
 * The candidate alpha := B - i_X theta - dg must pull back from the base and
 * satisfy d(alpha) = i_{X-bar} omega exactly; on success alpha is returned on
 * the base chart.
 */
inline std::optional<DifferentialForm> is_weak_symmetry(const SurrogateBundle& sb,
                                                        const MultVFData& m,
                                                        const DifferentialForm& b) {
    if (!sb.is_projectable(m.x)) throw InputError("is_weak_symmetry: field is not projectable");
    if (b.degree() != 1 || b.chart() != sb.total())
        throw InputError("is_weak_symmetry: B must be a 1-form on the total chart");
    DifferentialForm dg = ext_d(DifferentialForm::from_polynomial(sb.total(), m.g));
    DifferentialForm candidate = b - interior(m.x, sb.theta()) - dg;
    auto alpha = sb.restrict_to_base(candidate);
    if (!alpha) return std::nullopt;
    VectorField xbar = sb.project(m.x);
    if (ext_d(*alpha) != interior(xbar, sb.omega())) return std::nullopt;
    return alpha;
}

/// Verifies both weak-symmetry invariants exactly and builds the triple.
inline WeakSymmetryTriple make_weak_symmetry(const SurrogateBundle& sb, VectorField x, Polynomial g,
                                             DifferentialForm b) {
    MultVFData data{x, g};
    if (lie_derivative(x, sb.theta()) != ext_d(b))
        throw InputError("weak symmetry rejected: L_X theta != dB");
    if (!is_weak_symmetry(sb, data, b))
        throw InputError(
            "weak symmetry rejected: B - i_X theta - dg is not the pullback of a Hamiltonian base "
            "form");
    return WeakSymmetryTriple{std::move(x), std::move(g), std::move(b)};
}

/// eta(Z,h) = (X=Z, g=h, B = i_Z theta + dh); the result is re-verified.
inline WeakSymmetryTriple eta_map(const SurrogateBundle& sb, const SectionElement& a) {
    DifferentialForm b =
        interior(a.z, sb.theta()) + ext_d(DifferentialForm::from_polynomial(sb.total(), a.h));
    return make_weak_symmetry(sb, a.z, a.h, std::move(b));
}

/// (X,g) acting on (Z,h): ([X,Z], X(h) - Z(g) - theta(X,Z)); result is vertical.
inline SectionElement mult_action(const SurrogateBundle& sb, const MultVFData& m,
                                  const SectionElement& a, bool drop_theta_term = false) {
    if (!sb.is_projectable(m.x)) throw InputError("mult_action: field is not projectable");
    if (!sb.is_vertical(a.z)) throw InputError("mult_action: section field must be vertical");
    VectorField z = vf_bracket(m.x, a.z);
    if (!sb.is_vertical(z))
        throw ConsistencyError("mult_action: bracket of projectable and vertical is not vertical");
    Polynomial h = m.x.apply(a.h) - a.z.apply(m.g);
    if (!drop_theta_term) h -= eval_on_fields(sb.theta(), {m.x, a.z});
    return SectionElement{std::move(z), std::move(h)};
}

/**
 * @brief Bracket of weak symmetries in reduced data.
 *
 * ([X,X'], X(g') - X'(g) - theta(X,X'), L_X B' - L_X' B); the g-component is
 * the reduction of the bracket of the underlying multiplicative fields. The
 * output invariants are re-verified exactly; a violation signals inconsistent
 * input data.
 */
inline WeakSymmetryTriple wsym_bracket(const SurrogateBundle& sb, const WeakSymmetryTriple& p,
                                       const WeakSymmetryTriple& q) {
    VectorField x = vf_bracket(p.x, q.x);
    Polynomial g = p.x.apply(q.g) - q.x.apply(p.g) - eval_on_fields(sb.theta(), {p.x, q.x});
    DifferentialForm b = lie_derivative(p.x, q.b) - lie_derivative(q.x, p.b);
    MultVFData data{x, g};
    if (lie_derivative(x, sb.theta()) != ext_d(b))
        throw ConsistencyError("wsym_bracket output violated L_X theta = dB");
    if (!is_weak_symmetry(sb, data, b))
        throw ConsistencyError("wsym_bracket output violated the weak-symmetry decomposition");
    return WeakSymmetryTriple{std::move(x), std::move(g), std::move(b)};
}

/// Triples are compared with g taken modulo pullbacks from the base: the
/// underlying multiplicative field determines g only up to such pullbacks.
inline bool wsym_equal(const SurrogateBundle& sb, const WeakSymmetryTriple& a,
                       const WeakSymmetryTriple& b) {
    if (a.x != b.x || a.b != b.b) return false;
    Polynomial diff = a.g - b.g;
    return diff.depends_only_on_prefix(sb.base_dim());
}

inline lie2::VecOps<SectionElement> section_ops(const SurrogateBundle& sb) {
    Chart total = sb.total();
    auto vars = total.vars;
    lie2::VecOps<SectionElement> ops;
    ops.add = [](const SectionElement& a, const SectionElement& b) {
        return SectionElement{a.z + b.z, a.h + b.h};
    };
    ops.scale = [](const Rational& c, const SectionElement& a) {
        return SectionElement{c * a.z, c * a.h};
    };
    ops.equal = [](const SectionElement& a, const SectionElement& b) {
        return a.z == b.z && a.h == b.h;
    };
    ops.zero = [total]() { return SectionElement{VectorField(total), Polynomial::zero(total.dim())}; };
    ops.show = [vars](const SectionElement& a) {
        return "(Z = " + a.z.to_string() + ", h = " + a.h.to_string(vars) + ")";
    };
    return ops;
}

inline lie2::VecOps<WeakSymmetryTriple> wsym_ops(std::shared_ptr<const SurrogateBundle> sb) {
    Chart total = sb->total();
    auto vars = total.vars;
    lie2::VecOps<WeakSymmetryTriple> ops;
    ops.add = [](const WeakSymmetryTriple& a, const WeakSymmetryTriple& b) {
        return WeakSymmetryTriple{a.x + b.x, a.g + b.g, a.b + b.b};
    };
    ops.scale = [](const Rational& c, const WeakSymmetryTriple& a) {
        return WeakSymmetryTriple{c * a.x, c * a.g, c * a.b};
    };
    ops.equal = [sb](const WeakSymmetryTriple& a, const WeakSymmetryTriple& b) {
        return wsym_equal(*sb, a, b);
    };
    ops.zero = [total]() {
        return WeakSymmetryTriple{VectorField(total), Polynomial::zero(total.dim()),
                                  DifferentialForm::zero(total, 1)};
    };
    ops.show = [vars](const WeakSymmetryTriple& a) {
        return "(X = " + a.x.to_string() + ", g = " + a.g.to_string(vars) +
               ", B = " + a.b.to_string() + ")";
    };
    return ops;
}

struct SectionCrossedModuleOptions {
    // Sensitivity knobs for the perturbation harness.
    bool drop_theta_in_bracket = false;
    bool drop_theta_in_action = false;
};

/**
 * @brief The crossed module of sections and weak symmetries over a surrogate.
 *
 * h = sections with the theta-twisted bracket, g = weak symmetry triples,
 * eta = eta_map, and triples act through their (X, g) data; the forms B do
 * not act.
 */
inline lie2::CrossedModule<WeakSymmetryTriple, SectionElement> build_section_crossed_module(
    std::shared_ptr<const SurrogateBundle> sb, const SectionCrossedModuleOptions& opt = {}) {
    lie2::CrossedModule<WeakSymmetryTriple, SectionElement> cm;
    cm.ops_g = wsym_ops(sb);
    cm.ops_h = section_ops(*sb);
    bool drop_bracket = opt.drop_theta_in_bracket;
    bool drop_action = opt.drop_theta_in_action;
    cm.bracket_g = [sb](const WeakSymmetryTriple& p, const WeakSymmetryTriple& q) {
        return wsym_bracket(*sb, p, q);
    };
    cm.bracket_h = [sb, drop_bracket](const SectionElement& a, const SectionElement& b) {
        return section_bracket(*sb, a, b, drop_bracket);
    };
    cm.eta = [sb](const SectionElement& a) { return eta_map(*sb, a); };
    cm.action = [sb, drop_action](const WeakSymmetryTriple& t, const SectionElement& a) {
        return mult_action(*sb, MultVFData{t.x, t.g}, a, drop_action);
    };
    cm.eta_image_check = [sb](const SectionElement& a) -> std::string {
        WeakSymmetryTriple t = eta_map(*sb, a);
        if (lie_derivative(t.x, sb->theta()) != ext_d(t.b)) return "eta image violated L_X theta = dB";
        return "";
    };
    return cm;
}

/// Random vertical section with polynomial payloads.
inline SectionElement random_section(Rng& rng, const SurrogateBundle& sb, unsigned max_degree) {
    VectorField z(sb.total());
    for (unsigned i = sb.base_dim(); i < sb.total().dim(); ++i) {
        if (rng.below(3) == 0) continue;
        z.set_component(i, random_polynomial(rng, sb.total().dim(), max_degree));
    }
    Polynomial h = random_polynomial(rng, sb.total().dim(), max_degree);
    return SectionElement{std::move(z), std::move(h)};
}

/**
 * @brief Random weak symmetry triple, valid by construction.
 *
 * Takes a random Hamiltonian pair (alpha, X-bar) on the base, extends X-bar by
 * a random vertical field, draws a random g, and sets B = i_X theta + dg +
 * pullback(alpha). Both symmetry invariants are still re-verified exactly.
 */
inline WeakSymmetryTriple random_weak_symmetry(Rng& rng, const SurrogateBundle& sb,
                                               const HamiltonianPairGenerator& base_gen,
                                               unsigned max_degree) {
    HamiltonianPair base_pair = base_gen(rng);
    VectorField x = sb.extend(base_pair.field);
    for (unsigned i = sb.base_dim(); i < sb.total().dim(); ++i) {
        if (rng.below(2) == 0) continue;
        x.set_component(i, random_polynomial(rng, sb.total().dim(), max_degree));
    }
    Polynomial g = random_polynomial(rng, sb.total().dim(), max_degree);
    DifferentialForm b = interior(x, sb.theta()) +
                         ext_d(DifferentialForm::from_polynomial(sb.total(), g)) +
                         sb.pullback(base_pair.alpha);
    return make_weak_symmetry(sb, std::move(x), std::move(g), std::move(b));
}

}  // namespace plectic
