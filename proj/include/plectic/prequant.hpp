#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "plectic/gerbe.hpp"
#include "plectic/lie2.hpp"
#include "plectic/observables.hpp"
#include "plectic/plectic.hpp"

namespace plectic {

/// Raised by decompose_weak_symmetry when the input violates its invariant.
class NotAWeakSymmetry : public InputError {
public:
    using InputError::InputError;
};

/**
 * @brief A 2-plectic structure together with an exact potential, d(chi) = omega.
 *
 * The reduced symmetry algebra it induces is the fiber-dimension-0 surrogate
 * with theta = chi.
 */
class ExactScenario {
public:
    ExactScenario(std::shared_ptr<const PlecticStructure> ps, DifferentialForm chi)
        : ps_(std::move(ps)), chi_(std::move(chi)) {
        if (chi_.degree() != 2) throw InputError("chi must be a 2-form");
        if (chi_.chart() != ps_->chart()) throw InputError("chi must live on the base chart");
        DifferentialForm residual = ext_d(chi_) - ps_->omega();
        if (!residual.is_zero())
            throw InputError("d chi != omega; residual " + residual.to_string());
        bundle_ = std::make_shared<SurrogateBundle>(ps_->chart(), std::vector<std::string>{},
                                                    ps_->omega(), chi_);
    }

    const PlecticStructure& ps() const { return *ps_; }
    std::shared_ptr<const PlecticStructure> ps_ptr() const { return ps_; }
    const DifferentialForm& chi() const { return chi_; }
    const SurrogateBundle& bundle() const { return *bundle_; }
    std::shared_ptr<const SurrogateBundle> bundle_ptr() const { return bundle_; }

private:
    std::shared_ptr<const PlecticStructure> ps_;
    DifferentialForm chi_;
    std::shared_ptr<const SurrogateBundle> bundle_;
};

enum class Phi2Mode {
    full,          // chi(X_a, X_b) + a(X_b) - b(X_a)
    drop_pairing,  // chi(X_a, X_b) only
    drop_chi,      // a(X_b) - b(X_a) only
    zero           // 0
};

/// Phi1 on degree -1: f maps to the section (Z = 0, h = f).
inline SectionElement phi1_function(const ExactScenario& es, const Polynomial& f) {
    return SectionElement{VectorField(es.bundle().total()), f};
}

/// Phi1 on degree 0: (alpha, X) maps to (X, g = 0, B = i_X chi + alpha),
/// verified as a weak symmetry exactly.
inline WeakSymmetryTriple phi1_pair(const ExactScenario& es, const HamiltonianPair& a) {
    DifferentialForm b = interior(a.field, es.chi()) + a.alpha;
    return make_weak_symmetry(es.bundle(), a.field, Polynomial::zero(es.ps().chart().dim()),
                              std::move(b));
}

/// Phi2(a, b) = (0, chi(X_a, X_b) + a(X_b) - b(X_a)).
inline SectionElement phi2(const ExactScenario& es, const HamiltonianPair& a,
                           const HamiltonianPair& b, Phi2Mode mode = Phi2Mode::full) {
    unsigned dim = es.ps().chart().dim();
    Polynomial h(dim);
    if (mode == Phi2Mode::full || mode == Phi2Mode::drop_pairing)
        h += eval_on_fields(es.chi(), {a.field, b.field});
    if (mode == Phi2Mode::full || mode == Phi2Mode::drop_chi) {
        h += eval_on_fields(a.alpha, {b.field});
        h -= eval_on_fields(b.alpha, {a.field});
    }
    return SectionElement{VectorField(es.bundle().total()), std::move(h)};
}

/// The reduced weak-symmetry Lie 2-algebra: the fiber-0 crossed module of the
/// scenario's bundle, passed through the strict construction.
inline lie2::Algebra<WeakSymmetryTriple, SectionElement> build_reduced_wsym_algebra(
    const ExactScenario& es) {
    return lie2::crossed_to_lie2(build_section_crossed_module(es.bundle_ptr()));
}

/// The prequantisation morphism from observables to reduced weak symmetries.
inline lie2::Morphism<HamiltonianPair, Polynomial, WeakSymmetryTriple, SectionElement>
build_prequant_morphism(std::shared_ptr<const ExactScenario> es, Phi2Mode mode = Phi2Mode::full,
                        const ObservablesOptions& source_opt = {}) {
    lie2::Morphism<HamiltonianPair, Polynomial, WeakSymmetryTriple, SectionElement> m;
    m.source = build_observables(es->ps_ptr(), source_opt);
    m.target = build_reduced_wsym_algebra(*es);
    m.phi1_0 = [es](const HamiltonianPair& a) { return phi1_pair(*es, a); };
    m.phi1_1 = [es](const Polynomial& f) { return phi1_function(*es, f); };
    m.phi2 = [es, mode](const HamiltonianPair& a, const HamiltonianPair& b) {
        return phi2(*es, a, b, mode);
    };
    return m;
}

/**
 * @brief Writes a reduced weak symmetry as Phi1(alpha) + eta(0, h), exactly.
 *
 * Returns alpha := B - i_X chi - dg on the base and h := g, after certifying
 * d(alpha) = i_X omega. The round trip t = Phi1(alpha) + eta(0, h) then holds
 * componentwise by construction and is what the quasi-isomorphism suite
 * re-checks.
 */
inline std::pair<DifferentialForm, Polynomial> decompose_weak_symmetry(
    const ExactScenario& es, const WeakSymmetryTriple& t) {
    const SurrogateBundle& sb = es.bundle();
    DifferentialForm dg = ext_d(DifferentialForm::from_polynomial(sb.total(), t.g));
    DifferentialForm alpha = t.b - interior(t.x, es.chi()) - dg;
    if (ext_d(alpha) != interior(t.x, es.ps().omega()))
        throw NotAWeakSymmetry("decompose: d(alpha) != i_X omega for alpha = B - i_X chi - dg");
    return {alpha, t.g};
}

}  // namespace plectic
