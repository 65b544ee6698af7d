#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/exterior.hpp"
#include "plectic/linalg.hpp"
#include "plectic/polynomial.hpp"

namespace plectic {

/// True iff d(omega) is the zero form, exactly. Input must be a 3-form.
inline bool check_closed(const DifferentialForm& omega) {
    if (omega.degree() != 3) throw InputError("check_closed expects a 3-form");
    return ext_d(omega).is_zero();
}

struct NondegeneracyResult {
    bool nondegenerate = false;
    std::optional<std::vector<Rational>> bad_point;       // where the kernel is nontrivial
    std::optional<std::vector<Rational>> kernel_vector;   // a witness kernel direction
};

/**
 * @brief Pointwise non-degeneracy certificate for a 3-form.
 *
 * At each sample point the linear map v -> i_v omega is assembled as a
 * C(n,2) x n rational matrix and its kernel computed exactly. Degeneracy is
 * reported with the offending point and a kernel vector.
 */
inline NondegeneracyResult check_nondegenerate(const DifferentialForm& omega,
                                               const std::vector<std::vector<Rational>>& points) {
    if (omega.degree() != 3) throw InputError("check_nondegenerate expects a 3-form");
    if (points.empty()) throw InputError("check_nondegenerate needs at least one sample point");
    const unsigned n = omega.chart().dim();
    for (const auto& pt : points) {
        if (pt.size() != n) throw InputError("sample point dimension mismatch");
        // rows: index pairs i<j; cols: basis direction v
        std::vector<std::pair<unsigned, unsigned>> pairs;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        RationalMatrix mat(pairs.size(), std::vector<Rational>(n, Rational(0)));
        for (unsigned v = 0; v < n; ++v) {
            DifferentialForm iv = interior(VectorField::basis(omega.chart(), v), omega);
            for (size_t r = 0; r < pairs.size(); ++r) {
                Polynomial c = iv.component({pairs[r].first, pairs[r].second});
                if (!c.is_zero()) mat[r][v] = c.eval(pt);
            }
        }
        RationalMatrix kernel = nullspace(mat);
        if (!kernel.empty()) {
            NondegeneracyResult res;
            res.nondegenerate = false;
            res.bad_point = pt;
            res.kernel_vector = kernel.front();
            return res;
        }
    }
    return NondegeneracyResult{true, std::nullopt, std::nullopt};
}

/**
 * @brief A closed 3-form certified non-degenerate at finitely many sample points.
 *
 * Closedness is exact; non-degeneracy is certified pointwise only, and reports
 * say so. Values are immutable after construction.
 */
class PlecticStructure {
public:
    PlecticStructure(DifferentialForm omega, std::vector<std::vector<Rational>> witness_points)
        : omega_(std::move(omega)), points_(std::move(witness_points)) {
        if (!check_closed(omega_)) throw InputError("2-plectic form is not closed");
        auto res = check_nondegenerate(omega_, points_);
        if (!res.nondegenerate) {
            throw InputError("2-plectic form is degenerate at a witness point");
        }
    }

    const Chart& chart() const { return omega_.chart(); }
    const DifferentialForm& omega() const { return omega_; }
    const std::vector<std::vector<Rational>>& witness_points() const { return points_; }

private:
    DifferentialForm omega_;
    std::vector<std::vector<Rational>> points_;
};

/// A 1-form together with its Hamiltonian vector field, d(alpha) = i_X omega.
struct HamiltonianPair {
    DifferentialForm alpha;
    VectorField field;
};

/// Verifies the pair property exactly and returns the pair, else rejects.
inline HamiltonianPair make_verified_pair(const PlecticStructure& ps, const DifferentialForm& alpha,
                                          const VectorField& x) {
    if (alpha.degree() != 1) throw InputError("Hamiltonian form must have degree 1");
    if (alpha.chart() != ps.chart() || x.chart() != ps.chart())
        throw InputError("Hamiltonian pair chart mismatch");
    if (ext_d(alpha) != interior(x, ps.omega()))
        throw InputError("pair rejected: d(alpha) != i_X omega");
    return HamiltonianPair{alpha, x};
}

struct HamiltonianSolve {
    std::optional<HamiltonianPair> pair;  // empty means NoSolution at this degree bound
    bool unique = false;                  // homogeneous system has trivial kernel
};

/**
 * @brief Solves d(alpha) = i_X omega for X with a total-degree ansatz.
 *
 * Each component of X is an unknown polynomial of total degree <= degree_bound;
 * the resulting exact linear system over Q is solved by Gaussian elimination.
 * NoSolution means alpha is not Hamiltonian or the bound is too small; the two
 * are indistinguishable and reported as such by the caller.
 */
inline HamiltonianSolve solve_hamiltonian(const PlecticStructure& ps, const DifferentialForm& alpha,
                                          unsigned degree_bound) {
    if (alpha.degree() != 1) throw InputError("solve_hamiltonian expects a 1-form");
    if (alpha.chart() != ps.chart()) throw InputError("solve_hamiltonian: chart mismatch");
    const unsigned n = ps.chart().dim();
    const std::vector<Monomial> basis = monomials_up_to(n, degree_bound);
    const size_t unknowns = static_cast<size_t>(n) * basis.size();

    // i_X omega with X = sum_c sum_m u(c,m) m d/dx_c is linear in the unknowns.
    // Expand each i_{d/dx_c} omega once, then shift monomials.
    std::vector<DifferentialForm> contractions;
    contractions.reserve(n);
    for (unsigned c = 0; c < n; ++c)
        contractions.push_back(interior(VectorField::basis(ps.chart(), c), ps.omega()));

    DifferentialForm target = ext_d(alpha);

    // Row key: (2-form index pair, monomial). Collect into a dense system.
    std::map<std::pair<std::vector<unsigned>, Monomial>, size_t> row_of;
    std::vector<std::map<size_t, Rational>> sparse_rows;
    std::vector<Rational> rhs;
    auto row_index = [&](const std::vector<unsigned>& idx, const Monomial& m) -> size_t {
        auto key = std::make_pair(idx, m);
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        size_t r = sparse_rows.size();
        row_of.emplace(key, r);
        sparse_rows.emplace_back();
        rhs.emplace_back(0);
        return r;
    };

    for (unsigned c = 0; c < n; ++c) {
        for (size_t bi = 0; bi < basis.size(); ++bi) {
            size_t col = static_cast<size_t>(c) * basis.size() + bi;
            for (const auto& [idx, coefpoly] : contractions[c].components()) {
                for (const auto& [m, coef] : coefpoly.terms()) {
                    Monomial shifted{std::vector<unsigned>(n)};
                    for (unsigned i = 0; i < n; ++i) shifted.exps[i] = m.exps[i] + basis[bi].exps[i];
                    size_t r = row_index(idx, shifted);
                    auto [it, inserted] = sparse_rows[r].emplace(col, coef);
                    if (!inserted) {
                        it->second += coef;
                        if (it->second.is_zero()) sparse_rows[r].erase(it);
                    }
                }
            }
        }
    }
    for (const auto& [idx, coefpoly] : target.components()) {
        for (const auto& [m, coef] : coefpoly.terms()) {
            size_t r = row_index(idx, m);
            rhs[r] = coef;
        }
    }

    RationalMatrix mat(sparse_rows.size(), std::vector<Rational>(unknowns, Rational(0)));
    for (size_t r = 0; r < sparse_rows.size(); ++r) {
        for (const auto& [col, coef] : sparse_rows[r]) mat[r][col] = coef;
    }

    LinearSolution sol = solve_linear_system(mat, rhs);
    HamiltonianSolve out;
    if (!sol.consistent) return out;
    VectorField x(ps.chart());
    for (unsigned c = 0; c < n; ++c) {
        Polynomial comp(n);
        for (size_t bi = 0; bi < basis.size(); ++bi) {
            const Rational& u = sol.particular[static_cast<size_t>(c) * basis.size() + bi];
            if (!u.is_zero()) comp.add_term(basis[bi], u);
        }
        x.set_component(c, comp);
    }
    out.pair = make_verified_pair(ps, alpha, x);
    out.unique = sol.kernel.empty();
    return out;
}

/**
 * @brief The observable bracket l2(a,b) = (i_{X_a} i_{X_b} omega, [X_a, X_b]).
 *
 * The interior products compose in operator order: X_b fills the first slot,
 * then X_a. The pair property d{a,b} = i_{[X_a,X_b]} omega is re-asserted
 * exactly on the result.
 */
inline HamiltonianPair l2_bracket(const PlecticStructure& ps, const HamiltonianPair& a,
                                  const HamiltonianPair& b) {
    DifferentialForm form = interior(a.field, interior(b.field, ps.omega()));
    VectorField field = vf_bracket(a.field, b.field);
    if (ext_d(form) != interior(field, ps.omega()))
        throw ConsistencyError("l2 bracket violated d{a,b} = i_[Xa,Xb] omega");
    return HamiltonianPair{form, field};
}

/// l3(a,b,c) = omega(X_a, X_b, X_c).
inline Polynomial l3_triple(const PlecticStructure& ps, const HamiltonianPair& a,
                            const HamiltonianPair& b, const HamiltonianPair& c) {
    return eval_on_fields(ps.omega(), {a.field, b.field, c.field});
}

}  // namespace plectic
