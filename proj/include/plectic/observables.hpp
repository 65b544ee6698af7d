#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "plectic/lie2.hpp"
#include "plectic/plectic.hpp"
#include "plectic/rng.hpp"

namespace plectic {

struct ObservablesOptions {
    // Sensitivity knob: scales l3 so the axiom checker can demonstrate that a
    // wrong homotopy term is caught. 1 is the honest algebra.
    Rational l3_scale = Rational(1);
};

inline lie2::VecOps<HamiltonianPair> hamiltonian_pair_ops(const Chart& chart) {
    lie2::VecOps<HamiltonianPair> ops;
    ops.add = [](const HamiltonianPair& a, const HamiltonianPair& b) {
        return HamiltonianPair{a.alpha + b.alpha, a.field + b.field};
    };
    ops.scale = [](const Rational& c, const HamiltonianPair& a) {
        return HamiltonianPair{c * a.alpha, c * a.field};
    };
    ops.equal = [](const HamiltonianPair& a, const HamiltonianPair& b) {
        return a.alpha == b.alpha && a.field == b.field;
    };
    ops.zero = [chart]() {
        return HamiltonianPair{DifferentialForm::zero(chart, 1), VectorField(chart)};
    };
    ops.show = [](const HamiltonianPair& a) {
        return "(" + a.alpha.to_string() + " ; X = " + a.field.to_string() + ")";
    };
    return ops;
}

inline lie2::VecOps<Polynomial> polynomial_ops(const Chart& chart) {
    lie2::VecOps<Polynomial> ops;
    unsigned dim = chart.dim();
    auto vars = chart.vars;
    ops.add = [](const Polynomial& a, const Polynomial& b) { return a + b; };
    ops.scale = [](const Rational& c, const Polynomial& p) { return c * p; };
    ops.equal = [](const Polynomial& a, const Polynomial& b) { return a == b; };
    ops.zero = [dim]() { return Polynomial::zero(dim); };
    ops.show = [vars](const Polynomial& p) { return p.to_string(vars); };
    return ops;
}

/**
 * @brief The Lie 2-algebra of observables of (M, omega).
 *
 * Degree -1 is polynomial functions, degree 0 is verified Hamiltonian pairs;
 * l1(f) = (df, 0), l2 is the pair bracket, l2 on mixed degrees vanishes, and
 * l3(a,b,c) = omega(X_a, X_b, X_c).
 */
inline lie2::Algebra<HamiltonianPair, Polynomial> build_observables(
    std::shared_ptr<const PlecticStructure> ps, const ObservablesOptions& opt = {}) {
    lie2::Algebra<HamiltonianPair, Polynomial> alg;
    const Chart chart = ps->chart();
    alg.deg0 = hamiltonian_pair_ops(chart);
    alg.degm1 = polynomial_ops(chart);
    alg.l1 = [ps, chart](const Polynomial& f) {
        DifferentialForm df = ext_d(DifferentialForm::from_polynomial(chart, f));
        return make_verified_pair(*ps, df, VectorField(chart));
    };
    alg.l2 = [ps](const HamiltonianPair& a, const HamiltonianPair& b) {
        return l2_bracket(*ps, a, b);
    };
    alg.l2_mixed = [chart](const HamiltonianPair&, const Polynomial&) {
        return Polynomial::zero(chart.dim());
    };
    Rational scale = opt.l3_scale;
    alg.l3 = [ps, scale](const HamiltonianPair& a, const HamiltonianPair& b,
                         const HamiltonianPair& c) { return scale * l3_triple(*ps, a, b, c); };
    return alg;
}

/// Wraps solve_hamiltonian for callers that think in graded elements; throws
/// InputError when no solution exists at the given bound.
inline HamiltonianPair ham_element(const PlecticStructure& ps, const DifferentialForm& alpha,
                                   unsigned degree_bound) {
    HamiltonianSolve sol = solve_hamiltonian(ps, alpha, degree_bound);
    if (!sol.pair) {
        throw InputError(
            "no Hamiltonian vector field found: the form is not Hamiltonian or the degree bound is "
            "too small");
    }
    return *sol.pair;
}

/**
 * @brief Seeded generator of verified Hamiltonian pairs.
 *
 * Draws from three sources: exact forms df (whose field is zero), solved
 * random 1-forms, and rational combinations of a fixture pool. Solving can
 * fail on a general omega, so solved fixtures seed the pool and random draws
 * fall back to combinations when the solver reports NoSolution.
 */
class HamiltonianPairGenerator {
public:
    HamiltonianPairGenerator(std::shared_ptr<const PlecticStructure> ps, unsigned degree_bound,
                             std::vector<HamiltonianPair> pool)
        : ps_(std::move(ps)), degree_bound_(degree_bound), pool_(std::move(pool)) {}

    HamiltonianPair operator()(Rng& rng) const {
        const Chart& chart = ps_->chart();
        switch (rng.below(4)) {
            case 0: {
                Polynomial f = random_polynomial(rng, chart.dim(), degree_bound_);
                DifferentialForm df = ext_d(DifferentialForm::from_polynomial(chart, f));
                return make_verified_pair(*ps_, df, VectorField(chart));
            }
            case 1:
                return combination(rng);
            default: {
                // solved random forms carry the richest vector fields, so they
                // dominate the mix
                for (int attempt = 0; attempt < 4; ++attempt) {
                    DifferentialForm alpha = random_form(rng, chart, 1, degree_bound_);
                    HamiltonianSolve sol = solve_hamiltonian(*ps_, alpha, degree_bound_);
                    if (sol.pair) return *sol.pair;
                }
                return combination(rng);
            }
        }
    }

private:
    HamiltonianPair combination(Rng& rng) const {
        const Chart& chart = ps_->chart();
        HamiltonianPair acc{DifferentialForm::zero(chart, 1), VectorField(chart)};
        if (pool_.empty()) {
            Polynomial f = random_polynomial(rng, chart.dim(), degree_bound_);
            DifferentialForm df = ext_d(DifferentialForm::from_polynomial(chart, f));
            return make_verified_pair(*ps_, df, VectorField(chart));
        }
        for (const auto& p : pool_) {
            Rational c = rng.rational(9, 4);
            if (c.is_zero()) continue;
            // only rational-linear combinations keep the pair property
            acc.alpha += c * p.alpha;
            acc.field += c * p.field;
        }
        return make_verified_pair(*ps_, acc.alpha, acc.field);
    }

    std::shared_ptr<const PlecticStructure> ps_;
    unsigned degree_bound_;
    std::vector<HamiltonianPair> pool_;
};

}  // namespace plectic
