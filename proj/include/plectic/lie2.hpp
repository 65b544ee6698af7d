#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/linalg.hpp"
#include "plectic/rational.hpp"
#include "plectic/rng.hpp"

namespace plectic {
namespace lie2 {

enum class Status { pass, fail, inconclusive };

inline std::string status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "inconclusive";
    }
}

/// One checked equation: pass/fail with a counterexample, or inconclusive with
/// a reason. Witnesses are rendered through the client algebra's printers.
struct EquationResult {
    std::string id;
    std::string statement;
    Status status = Status::inconclusive;
    int samples = 0;
    std::string witness;  // first failing tuple, empty when passing
    std::string reason;   // set when inconclusive
};

struct CheckReport {
    std::vector<EquationResult> equations;

    bool all_pass() const {
        for (const auto& e : equations) {
            if (e.status != Status::pass) return false;
        }
        return true;
    }
    bool any_fail() const {
        for (const auto& e : equations) {
            if (e.status == Status::fail) return true;
        }
        return false;
    }
    const EquationResult* find(const std::string& id) const {
        for (const auto& e : equations) {
            if (e.id == id) return &e;
        }
        return nullptr;
    }
};

/// Vector-space operations of one graded component, supplied by the client.
template <class T>
struct VecOps {
    std::function<T(const T&, const T&)> add;
    std::function<T(const Rational&, const T&)> scale;
    std::function<bool(const T&, const T&)> equal;
    std::function<T()> zero;
    std::function<std::string(const T&)> show;

    T sub(const T& a, const T& b) const { return add(a, scale(Rational(-1), b)); }
    T neg(const T& a) const { return scale(Rational(-1), a); }
    bool is_zero(const T& a) const { return equal(a, zero()); }
};

/**
 * @brief A concrete 2-term L-infinity algebra over client payload types.
 *
 * D0 is the degree-0 component, Dm1 the degree -1 component. l2 on mixed
 * degrees is given as l2(x, u) with x in degree 0; the other order follows by
 * graded antisymmetry, l2(u, x) = -l2(x, u).
 */
template <class D0, class Dm1>
struct Algebra {
    VecOps<D0> deg0;
    VecOps<Dm1> degm1;
    std::function<D0(const Dm1&)> l1;
    std::function<D0(const D0&, const D0&)> l2;
    std::function<Dm1(const D0&, const Dm1&)> l2_mixed;
    std::function<Dm1(const D0&, const D0&, const D0&)> l3;
};

/// Crossed module (h, g, eta, action); both payload types carry Lie brackets.
template <class G, class H>
struct CrossedModule {
    VecOps<G> ops_g;
    VecOps<H> ops_h;
    std::function<G(const G&, const G&)> bracket_g;
    std::function<H(const H&, const H&)> bracket_h;
    std::function<G(const H&)> eta;
    std::function<H(const G&, const H&)> action;
    // Optional extra validity check on eta images (e.g. symmetry invariants);
    // empty message means valid.
    std::function<std::string(const H&)> eta_image_check;
};

/// The strict Lie 2-algebra of a crossed module: l1 = eta, l3 = 0.
template <class G, class H>
Algebra<G, H> crossed_to_lie2(const CrossedModule<G, H>& cm) {
    Algebra<G, H> a;
    a.deg0 = cm.ops_g;
    a.degm1 = cm.ops_h;
    a.l1 = cm.eta;
    a.l2 = cm.bracket_g;
    a.l2_mixed = cm.action;
    auto ops_h = cm.ops_h;
    a.l3 = [ops_h](const G&, const G&, const G&) { return ops_h.zero(); };
    return a;
}

namespace detail {

template <class T>
std::string show_tuple(const std::vector<std::pair<std::string, std::string>>& parts) {
    std::string out;
    for (const auto& [k, v] : parts) {
        if (!out.empty()) out += ", ";
        out += k + " = " + v;
    }
    return out;
}

struct EquationTracker {
    EquationResult result;

    EquationTracker(std::string id, std::string statement) {
        result.id = std::move(id);
        result.statement = std::move(statement);
        result.status = Status::inconclusive;
        result.reason = "no samples evaluated";
    }

    void record(bool ok, const std::function<std::string()>& witness) {
        if (result.status == Status::fail) return;
        ++result.samples;
        if (ok) {
            result.status = Status::pass;
            result.reason.clear();
        } else {
            result.status = Status::fail;
            result.reason.clear();
            result.witness = witness();
        }
    }
};

}  // namespace detail

/**
 * @brief Evaluates the five Lie 2-algebra equations on random tuples.
 *
 * Every equality is exact. Each equation reports pass/fail with the first
 * counterexample tuple, or inconclusive when no samples were drawn. The two
 * structural properties (graded antisymmetry of l2, total antisymmetry of l3)
 * and linearity spot-checks ride along as extra report lines.
 */
template <class D0, class Dm1>
CheckReport check_lie2_axioms(const Algebra<D0, Dm1>& alg, const std::function<D0(Rng&)>& gen0,
                              const std::function<Dm1(Rng&)>& genm1, int count, Rng& rng) {
    using detail::EquationTracker;
    EquationTracker eq1("alg-1", "l1(l2(x,u)) = l2(x,l1(u))");
    EquationTracker eq2("alg-2", "l2(l1(u),v) = l2(u,l1(v))");
    EquationTracker eq3("alg-3",
                        "jacobiator: l1(l3(x,y,z)) + l2(l2(x,y),z) - l2(l2(x,z),y) + l2(l2(y,z),x) = 0");
    EquationTracker eq4("alg-4", "l3(l1(u),x,y) + l2(l2(x,y),u) - l2(l2(x,u),y) + l2(l2(y,u),x) = 0");
    EquationTracker eq5("alg-5", "l3 coherence (homotopy Jacobi identity in four variables)");
    EquationTracker anti2("alg-l2-antisym", "l2(x,y) = -l2(y,x)");
    EquationTracker anti3("alg-l3-antisym", "l3 is totally antisymmetric");
    EquationTracker lin("alg-linearity", "l1, l2, l3 are linear in each slot");

    const auto& d0 = alg.deg0;
    const auto& dm1 = alg.degm1;

    for (int s = 0; s < count; ++s) {
        D0 x = gen0(rng), y = gen0(rng), z = gen0(rng), t = gen0(rng);
        Dm1 u = genm1(rng), v = genm1(rng);

        auto witness = [&]() {
            return detail::show_tuple<D0>({{"x", d0.show(x)},
                                           {"y", d0.show(y)},
                                           {"z", d0.show(z)},
                                           {"t", d0.show(t)},
                                           {"u", dm1.show(u)},
                                           {"v", dm1.show(v)}});
        };

        // (1) l1(l2(x,u)) = l2(x, l1(u))
        eq1.record(d0.equal(alg.l1(alg.l2_mixed(x, u)), alg.l2(x, alg.l1(u))), witness);

        // (2) l2(l1(u), v) = l2(u, l1(v)) = -l2(l1(v), u)
        eq2.record(dm1.equal(alg.l2_mixed(alg.l1(u), v), dm1.neg(alg.l2_mixed(alg.l1(v), u))),
                   witness);

        // (3) l1(l3(x,y,z)) + l2(l2(x,y),z) - l2(l2(x,z),y) + l2(l2(y,z),x) = 0
        {
            D0 acc = alg.l1(alg.l3(x, y, z));
            acc = d0.add(acc, alg.l2(alg.l2(x, y), z));
            acc = d0.sub(acc, alg.l2(alg.l2(x, z), y));
            acc = d0.add(acc, alg.l2(alg.l2(y, z), x));
            eq3.record(d0.is_zero(acc), witness);
        }

        // (4) l3(l1(u),x,y) + l2(l2(x,y),u) - l2(l2(x,u),y) + l2(l2(y,u),x) = 0
        {
            Dm1 acc = alg.l3(alg.l1(u), x, y);
            acc = dm1.add(acc, alg.l2_mixed(alg.l2(x, y), u));
            // -l2(l2(x,u),y) = +l2_mixed(y, l2_mixed(x,u)) by graded antisymmetry
            acc = dm1.add(acc, alg.l2_mixed(y, alg.l2_mixed(x, u)));
            acc = dm1.sub(acc, alg.l2_mixed(x, alg.l2_mixed(y, u)));
            eq4.record(dm1.is_zero(acc), witness);
        }

        // (5) sum l3(l2(.,.),.,.) = sum l2(l3(.,.,.),.)
        {
            Dm1 lhs = alg.l3(alg.l2(x, y), z, t);
            lhs = dm1.sub(lhs, alg.l3(alg.l2(x, z), y, t));
            lhs = dm1.add(lhs, alg.l3(alg.l2(x, t), y, z));
            lhs = dm1.add(lhs, alg.l3(alg.l2(y, z), x, t));
            lhs = dm1.sub(lhs, alg.l3(alg.l2(y, t), x, z));
            lhs = dm1.add(lhs, alg.l3(alg.l2(z, t), x, y));
            // l2(w, t) with w in degree -1 is -l2_mixed(t, w)
            Dm1 rhs = dm1.neg(alg.l2_mixed(t, alg.l3(x, y, z)));
            rhs = dm1.add(rhs, alg.l2_mixed(z, alg.l3(x, y, t)));
            rhs = dm1.sub(rhs, alg.l2_mixed(y, alg.l3(x, z, t)));
            rhs = dm1.add(rhs, alg.l2_mixed(x, alg.l3(y, z, t)));
            eq5.record(dm1.equal(lhs, rhs), witness);
        }

        anti2.record(d0.equal(alg.l2(x, y), d0.neg(alg.l2(y, x))), witness);
        {
            bool ok = dm1.equal(alg.l3(x, y, z), dm1.neg(alg.l3(y, x, z))) &&
                      dm1.equal(alg.l3(x, y, z), dm1.neg(alg.l3(x, z, y))) &&
                      dm1.is_zero(alg.l3(x, x, y));
            anti3.record(ok, witness);
        }
        {
            Rational c = rng.nonzero_rational(9, 5);
            bool ok = d0.equal(alg.l1(dm1.add(u, dm1.scale(c, v))),
                               d0.add(alg.l1(u), d0.scale(c, alg.l1(v))));
            ok = ok && d0.equal(alg.l2(d0.add(x, d0.scale(c, y)), z),
                                d0.add(alg.l2(x, z), d0.scale(c, alg.l2(y, z))));
            ok = ok && dm1.equal(alg.l3(d0.add(x, d0.scale(c, y)), z, t),
                                 dm1.add(alg.l3(x, z, t), dm1.scale(c, alg.l3(y, z, t))));
            lin.record(ok, witness);
        }
    }

    CheckReport report;
    report.equations = {eq1.result, eq2.result, eq3.result, eq4.result,
                        eq5.result, anti2.result, anti3.result, lin.result};
    return report;
}

/**
 * @brief Verifies the crossed-module laws on random tuples, exactly.
 *
 * Covers (A1), (A2), both Jacobi identities, antisymmetry of both brackets,
 * eta being a Lie algebra morphism, the action property, action by
 * derivations, and the client's validity check on eta images.
 */
template <class G, class H>
CheckReport check_crossed_module(const CrossedModule<G, H>& cm, const std::function<G(Rng&)>& gen_g,
                                 const std::function<H(Rng&)>& gen_h, int count, Rng& rng) {
    using detail::EquationTracker;
    EquationTracker a1("cm-A1", "A1: action(eta(v), w) = [v,w]_h");
    EquationTracker a2("cm-A2", "A2: eta(action(X, w)) = [X, eta(w)]_g");
    EquationTracker jh("cm-jacobi-h", "[v,[w,r]] + [w,[r,v]] + [r,[v,w]] = 0 in h");
    EquationTracker jg("cm-jacobi-g", "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0 in g");
    EquationTracker antih("cm-antisym-h", "[v,w]_h = -[w,v]_h");
    EquationTracker antig("cm-antisym-g", "[X,Y]_g = -[Y,X]_g");
    EquationTracker etam("cm-eta-morphism", "eta([v,w]_h) = [eta(v), eta(w)]_g");
    EquationTracker actp("cm-action-property", "action([X,Y], v) = action(X, action(Y,v)) - action(Y, action(X,v))");
    EquationTracker actd("cm-action-derivation", "action(X, [v,w]) = [action(X,v), w] + [v, action(X,w)]");
    EquationTracker etal("cm-eta-linear", "eta(v + c w) = eta(v) + c eta(w)");
    EquationTracker actb("cm-action-bilinear", "the action is bilinear in each slot");
    EquationTracker etav("cm-eta-validity", "eta(v) satisfies the degree-0 validity invariants");

    const auto& og = cm.ops_g;
    const auto& oh = cm.ops_h;

    for (int s = 0; s < count; ++s) {
        G X = gen_g(rng), Y = gen_g(rng), Z = gen_g(rng);
        H v = gen_h(rng), w = gen_h(rng), r = gen_h(rng);
        auto witness = [&]() {
            return detail::show_tuple<G>({{"X", og.show(X)},
                                          {"Y", og.show(Y)},
                                          {"Z", og.show(Z)},
                                          {"v", oh.show(v)},
                                          {"w", oh.show(w)},
                                          {"r", oh.show(r)}});
        };

        a1.record(oh.equal(cm.action(cm.eta(v), w), cm.bracket_h(v, w)), witness);
        a2.record(og.equal(cm.eta(cm.action(X, w)), cm.bracket_g(X, cm.eta(w))), witness);
        {
            H acc = cm.bracket_h(v, cm.bracket_h(w, r));
            acc = oh.add(acc, cm.bracket_h(w, cm.bracket_h(r, v)));
            acc = oh.add(acc, cm.bracket_h(r, cm.bracket_h(v, w)));
            jh.record(oh.is_zero(acc), witness);
        }
        {
            G acc = cm.bracket_g(X, cm.bracket_g(Y, Z));
            acc = og.add(acc, cm.bracket_g(Y, cm.bracket_g(Z, X)));
            acc = og.add(acc, cm.bracket_g(Z, cm.bracket_g(X, Y)));
            jg.record(og.is_zero(acc), witness);
        }
        antih.record(oh.equal(cm.bracket_h(v, w), oh.neg(cm.bracket_h(w, v))), witness);
        antig.record(og.equal(cm.bracket_g(X, Y), og.neg(cm.bracket_g(Y, X))), witness);
        etam.record(og.equal(cm.eta(cm.bracket_h(v, w)), cm.bracket_g(cm.eta(v), cm.eta(w))),
                    witness);
        {
            H lhs = cm.action(cm.bracket_g(X, Y), v);
            H rhs = oh.sub(cm.action(X, cm.action(Y, v)), cm.action(Y, cm.action(X, v)));
            actp.record(oh.equal(lhs, rhs), witness);
        }
        {
            H lhs = cm.action(X, cm.bracket_h(v, w));
            H rhs = oh.add(cm.bracket_h(cm.action(X, v), w), cm.bracket_h(v, cm.action(X, w)));
            actd.record(oh.equal(lhs, rhs), witness);
        }
        {
            Rational c = rng.nonzero_rational(9, 5);
            etal.record(og.equal(cm.eta(oh.add(v, oh.scale(c, w))),
                                 og.add(cm.eta(v), og.scale(c, cm.eta(w)))),
                        witness);
            bool ok = oh.equal(cm.action(og.add(X, og.scale(c, Y)), v),
                               oh.add(cm.action(X, v), oh.scale(c, cm.action(Y, v))));
            ok = ok && oh.equal(cm.action(X, oh.add(v, oh.scale(c, w))),
                                oh.add(cm.action(X, v), oh.scale(c, cm.action(X, w))));
            actb.record(ok, witness);
        }
        if (cm.eta_image_check) {
            std::string err = cm.eta_image_check(v);
            etav.record(err.empty(), [&]() { return err + " | v = " + oh.show(v); });
        } else {
            etav.record(true, witness);
        }
    }

    CheckReport report;
    report.equations = {a1.result,    a2.result,   jh.result,   jg.result,   antih.result,
                        antig.result, etam.result, actp.result, actd.result, etal.result,
                        actb.result,  etav.result};
    return report;
}

/// A Lie 2-algebra morphism between two concrete algebras.
template <class A0, class Am1, class B0, class Bm1>
struct Morphism {
    Algebra<A0, Am1> source;
    Algebra<B0, Bm1> target;
    std::function<B0(const A0&)> phi1_0;
    std::function<Bm1(const Am1&)> phi1_1;
    std::function<Bm1(const A0&, const A0&)> phi2;
};

/// Evaluates the four morphism equations on random tuples, exactly.
template <class A0, class Am1, class B0, class Bm1>
CheckReport check_morphism(const Morphism<A0, Am1, B0, Bm1>& m, const std::function<A0(Rng&)>& gen0,
                           const std::function<Am1(Rng&)>& genm1, int count, Rng& rng) {
    using detail::EquationTracker;
    EquationTracker eq1("mor-1", "Phi1(l1(u)) = l1'(Phi1(u))");
    EquationTracker eq2("mor-2", "Phi1(l2(x,y)) = l2'(Phi1(x),Phi1(y)) + l1'(Phi2(x,y))");
    EquationTracker eq3("mor-3", "Phi1(l2(u,x)) = l2'(Phi1(u),Phi1(x)) + Phi2(l1(u),x)");
    EquationTracker eq4("mor-4",
                        "sum Phi2(l2(.,.),.) + Phi1(l3(x,y,z)) = sum l2'(Phi1(.),Phi2(.,.)) + "
                        "l3'(Phi1(x),Phi1(y),Phi1(z))");
    EquationTracker anti("mor-phi2-antisym", "Phi2(x,y) = -Phi2(y,x)");
    EquationTracker lin("mor-linearity", "Phi1 is linear on both components, Phi2 bilinear");

    const auto& sa = m.source;
    const auto& ta = m.target;

    for (int s = 0; s < count; ++s) {
        A0 x = gen0(rng), y = gen0(rng), z = gen0(rng);
        Am1 u = genm1(rng);
        auto witness = [&]() {
            return detail::show_tuple<A0>({{"x", sa.deg0.show(x)},
                                           {"y", sa.deg0.show(y)},
                                           {"z", sa.deg0.show(z)},
                                           {"u", sa.degm1.show(u)}});
        };

        eq1.record(ta.deg0.equal(m.phi1_0(sa.l1(u)), ta.l1(m.phi1_1(u))), witness);

        {
            B0 lhs = m.phi1_0(sa.l2(x, y));
            B0 rhs = ta.deg0.add(ta.l2(m.phi1_0(x), m.phi1_0(y)), ta.l1(m.phi2(x, y)));
            eq2.record(ta.deg0.equal(lhs, rhs), witness);
        }

        {
            // l2(u,x) = -l2(x,u) on the source; l2'(Phi1(u),Phi1(x)) = -l2'(Phi1(x),Phi1(u)).
            Bm1 lhs = m.phi1_1(sa.degm1.neg(sa.l2_mixed(x, u)));
            Bm1 rhs = ta.degm1.add(ta.degm1.neg(ta.l2_mixed(m.phi1_0(x), m.phi1_1(u))),
                                   m.phi2(sa.l1(u), x));
            eq3.record(ta.degm1.equal(lhs, rhs), witness);
        }

        {
            Bm1 lhs = m.phi2(sa.l2(x, y), z);
            lhs = ta.degm1.sub(lhs, m.phi2(sa.l2(x, z), y));
            lhs = ta.degm1.add(lhs, m.phi2(sa.l2(y, z), x));
            lhs = ta.degm1.add(lhs, m.phi1_1(sa.l3(x, y, z)));
            Bm1 rhs = ta.l2_mixed(m.phi1_0(x), m.phi2(y, z));
            rhs = ta.degm1.sub(rhs, ta.l2_mixed(m.phi1_0(y), m.phi2(x, z)));
            rhs = ta.degm1.add(rhs, ta.l2_mixed(m.phi1_0(z), m.phi2(x, y)));
            rhs = ta.degm1.add(rhs, ta.l3(m.phi1_0(x), m.phi1_0(y), m.phi1_0(z)));
            eq4.record(ta.degm1.equal(lhs, rhs), witness);
        }

        anti.record(ta.degm1.equal(m.phi2(x, y), ta.degm1.neg(m.phi2(y, x))), witness);
        {
            Rational c = rng.nonzero_rational(9, 5);
            bool ok = ta.deg0.equal(m.phi1_0(sa.deg0.add(x, sa.deg0.scale(c, y))),
                                    ta.deg0.add(m.phi1_0(x), ta.deg0.scale(c, m.phi1_0(y))));
            Am1 u2 = genm1(rng);
            ok = ok && ta.degm1.equal(
                           m.phi1_1(sa.degm1.add(u, sa.degm1.scale(c, u2))),
                           ta.degm1.add(m.phi1_1(u), ta.degm1.scale(c, m.phi1_1(u2))));
            ok = ok && ta.degm1.equal(
                           m.phi2(sa.deg0.add(x, sa.deg0.scale(c, y)), z),
                           ta.degm1.add(m.phi2(x, z), ta.degm1.scale(c, m.phi2(y, z))));
            lin.record(ok, witness);
        }
    }

    CheckReport report;
    report.equations = {eq1.result, eq2.result, eq3.result, eq4.result, anti.result, lin.result};
    return report;
}

/**
 * @brief Finite-dimensional truncation data for the quasi-isomorphism probe.
 *
 * The client supplies spanning elements of the degree -1 truncations on both
 * sides together with exact coordinate maps, plus a decomposition callback
 * that writes a degree-0 target element as Phi1(source) + l1'(correction).
 */
template <class A0, class Am1, class B0, class Bm1>
struct TruncationProbe {
    std::vector<Am1> source_degm1_basis;
    std::function<std::vector<Rational>(const Am1&)> source_degm1_coords;
    std::function<std::vector<Rational>(const A0&)> source_deg0_coords;
    std::vector<Bm1> target_degm1_basis;
    std::function<std::vector<Rational>(const Bm1&)> target_degm1_coords;
    std::function<std::vector<Rational>(const B0&)> target_deg0_coords;
    std::function<std::optional<std::pair<A0, Bm1>>(const B0&)> decompose;
    std::function<B0(Rng&)> target_deg0_gen;
};

namespace detail {

/// Kernel of the linear map determined column-by-column, as coefficient
/// vectors over the supplied basis.
template <class T>
RationalMatrix kernel_in_basis(const std::vector<T>& basis,
                               const std::function<std::vector<Rational>(const T&)>& image_coords) {
    if (basis.empty()) return {};
    std::vector<std::vector<Rational>> cols;
    size_t rows = 0;
    for (const auto& b : basis) {
        cols.push_back(image_coords(b));
        rows = std::max(rows, cols.back().size());
    }
    RationalMatrix mat(rows, std::vector<Rational>(basis.size(), Rational(0)));
    for (size_t c = 0; c < cols.size(); ++c) {
        for (size_t r = 0; r < cols[c].size(); ++r) mat[r][c] = cols[c][r];
    }
    return nullspace(mat);
}

}  // namespace detail

/**
 * @brief Desk-scale quasi-isomorphism checks on polynomial truncations.
 *
 * Confirms that Phi1 restricts to a bijection ker(l1) -> ker(l1') within the
 * truncations, and that sampled degree-0 target elements decompose as a
 * Phi1-image plus an l1'-image with exact zero residual.
 */
template <class A0, class Am1, class B0, class Bm1>
CheckReport kernel_cokernel_probe(const Morphism<A0, Am1, B0, Bm1>& m,
                                  const TruncationProbe<A0, Am1, B0, Bm1>& probe, int samples,
                                  Rng& rng) {
    CheckReport report;
    EquationResult kercheck;
    kercheck.id = "qiso-kernel";
    kercheck.statement = "Phi1 maps ker(l1) bijectively onto ker(l1') on the truncation";

    if (probe.source_degm1_basis.empty() || probe.target_degm1_basis.empty()) {
        kercheck.status = Status::inconclusive;
        kercheck.reason = "empty truncation basis";
        report.equations.push_back(kercheck);
        return report;
    }

    auto l1_coords = [&](const Am1& e) { return probe.source_deg0_coords(m.source.l1(e)); };
    auto l1p_coords = [&](const Bm1& e) { return probe.target_deg0_coords(m.target.l1(e)); };
    RationalMatrix ker_src = detail::kernel_in_basis<Am1>(
        probe.source_degm1_basis, std::function<std::vector<Rational>(const Am1&)>(l1_coords));
    RationalMatrix ker_tgt = detail::kernel_in_basis<Bm1>(
        probe.target_degm1_basis, std::function<std::vector<Rational>(const Bm1&)>(l1p_coords));

    if (ker_src.size() != ker_tgt.size()) {
        kercheck.status = Status::fail;
        kercheck.witness = "dim ker(l1) = " + std::to_string(ker_src.size()) +
                           ", dim ker(l1') = " + std::to_string(ker_tgt.size());
        kercheck.samples = 1;
    } else if (ker_src.empty()) {
        kercheck.status = Status::pass;
        kercheck.samples = 1;
    } else {
        // Column c of M: coordinates of Phi1(kernel basis vector c) over the
        // target degree -1 truncation.
        auto combine_src = [&](const std::vector<Rational>& coeffs) {
            Am1 acc = m.source.degm1.zero();
            for (size_t i = 0; i < coeffs.size(); ++i) {
                acc = m.source.degm1.add(
                    acc, m.source.degm1.scale(coeffs[i], probe.source_degm1_basis[i]));
            }
            return acc;
        };
        size_t ambient = probe.target_degm1_coords(probe.target_degm1_basis.front()).size();
        // Solve [ker_tgt-basis | images]: every image must be a combination of
        // the target kernel basis, and the coefficient matrix must have full rank.
        RationalMatrix tgt_cols(ambient, std::vector<Rational>(ker_tgt.size(), Rational(0)));
        for (size_t c = 0; c < ker_tgt.size(); ++c) {
            Bm1 acc = m.target.degm1.zero();
            for (size_t i = 0; i < ker_tgt[c].size(); ++i) {
                acc = m.target.degm1.add(
                    acc, m.target.degm1.scale(ker_tgt[c][i], probe.target_degm1_basis[i]));
            }
            auto coords = probe.target_degm1_coords(acc);
            for (size_t r = 0; r < coords.size() && r < ambient; ++r) tgt_cols[r][c] = coords[r];
        }
        RationalMatrix coeff_matrix;
        bool images_in_kernel = true;
        for (const auto& kvec : ker_src) {
            Bm1 image = m.phi1_1(combine_src(kvec));
            auto coords = probe.target_degm1_coords(image);
            std::vector<Rational> rhs(ambient, Rational(0));
            for (size_t r = 0; r < coords.size() && r < ambient; ++r) rhs[r] = coords[r];
            LinearSolution sol = solve_linear_system(tgt_cols, rhs);
            if (!sol.consistent) {
                images_in_kernel = false;
                break;
            }
            coeff_matrix.push_back(sol.particular);
        }
        kercheck.samples = static_cast<int>(ker_src.size());
        if (!images_in_kernel) {
            kercheck.status = Status::fail;
            kercheck.witness = "Phi1 image of a kernel element leaves ker(l1')";
        } else if (matrix_rank(coeff_matrix) != ker_src.size()) {
            kercheck.status = Status::fail;
            kercheck.witness = "Phi1 restricted to ker(l1) is not injective onto ker(l1')";
        } else {
            kercheck.status = Status::pass;
        }
    }
    report.equations.push_back(kercheck);

    EquationResult surj;
    surj.id = "qiso-surjective-H0";
    surj.statement = "every degree-0 target element is Phi1(source) + l1'(correction), exactly";
    if (!probe.decompose || !probe.target_deg0_gen || samples <= 0) {
        surj.status = Status::inconclusive;
        surj.reason = samples <= 0 ? "no samples requested" : "no decomposition supplied";
    } else {
        surj.status = Status::pass;
        for (int s = 0; s < samples; ++s) {
            B0 t = probe.target_deg0_gen(rng);
            auto dec = probe.decompose(t);
            ++surj.samples;
            if (!dec) {
                surj.status = Status::fail;
                surj.witness = "decomposition failed on " + m.target.deg0.show(t);
                break;
            }
            B0 rebuilt = m.target.deg0.add(m.phi1_0(dec->first), m.target.l1(dec->second));
            if (!m.target.deg0.equal(t, rebuilt)) {
                surj.status = Status::fail;
                surj.witness = "residual nonzero on " + m.target.deg0.show(t);
                break;
            }
        }
    }
    report.equations.push_back(surj);
    return report;
}

}  // namespace lie2
}  // namespace plectic
