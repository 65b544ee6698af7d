#pragma once

#include <cstddef>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/rational.hpp"

namespace plectic {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
    bool consistent = false;
    std::vector<Rational> particular;       // one solution when consistent
    RationalMatrix kernel;                  // basis of the homogeneous solutions
    size_t rank = 0;
};

/**
 * @brief Solves A x = b exactly over the rationals by Gauss-Jordan elimination.
 *
 * Returns a particular solution, the full kernel basis and the rank. No
 * rounding anywhere; fractions grow as needed.
 */
inline LinearSolution solve_linear_system(RationalMatrix a, std::vector<Rational> b) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a) {
        if (row.size() != cols) throw InputError("ragged matrix");
    }
    if (b.size() != rows) throw InputError("right-hand side length mismatch");

    std::vector<size_t> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        std::swap(b[pivot], b[r]);
        Rational inv = Rational(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational factor = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            b[i] -= factor * b[r];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }

    LinearSolution sol;
    sol.rank = r;
    for (size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) return sol;  // inconsistent
    }
    sol.consistent = true;
    sol.particular.assign(cols, Rational(0));
    for (size_t i = 0; i < r; ++i) sol.particular[pivot_col_of_row[i]] = b[i];

    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col_of_row) is_pivot[c] = true;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> k(cols, Rational(0));
        k[c] = Rational(1);
        for (size_t i = 0; i < r; ++i) k[pivot_col_of_row[i]] = -a[i][c];
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

inline size_t matrix_rank(const RationalMatrix& a) {
    if (a.empty()) return 0;
    return solve_linear_system(a, std::vector<Rational>(a.size(), Rational(0))).rank;
}

inline RationalMatrix nullspace(const RationalMatrix& a) {
    if (a.empty()) return {};
    return solve_linear_system(a, std::vector<Rational>(a.size(), Rational(0))).kernel;
}

}  // namespace plectic
