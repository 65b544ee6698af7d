#pragma once

#include <cstdint>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/polynomial.hpp"
#include "plectic/rational.hpp"

namespace plectic {

/**
 * @brief Deterministic seeded generator (splitmix64).
 *
 * The standard library distributions are not bit-reproducible across
 * implementations, so every draw here is defined arithmetically. Reports
 * depend on this stream being stable.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    long int_range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    /// Nonzero rational with |numerator| <= max_num and denominator <= max_den.
    Rational nonzero_rational(long max_num = 100, long max_den = 100) {
        long num = int_range(1, max_num);
        if (below(2) == 0) num = -num;
        long den = int_range(1, max_den);
        return Rational(num, den);
    }

    Rational rational(long max_num = 100, long max_den = 100) {
        if (below(4) == 0) return Rational(0);
        return nonzero_rational(max_num, max_den);
    }

private:
    uint64_t state_;
};

/// Random polynomial with total degree <= max_degree and small coefficients.
inline Polynomial random_polynomial(Rng& rng, unsigned dim, unsigned max_degree,
                                    unsigned max_terms = 3) {
    Polynomial p(dim);
    unsigned terms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m{std::vector<unsigned>(dim, 0)};
        unsigned budget = static_cast<unsigned>(rng.below(max_degree + 1));
        for (unsigned used = 0; used < budget; ++used) {
            m.exps[rng.below(dim)] += 1;
        }
        p.add_term(m, rng.nonzero_rational());
    }
    return p;
}

inline VectorField random_vector_field(Rng& rng, const Chart& chart, unsigned max_degree) {
    VectorField v(chart);
    for (unsigned i = 0; i < chart.dim(); ++i) {
        if (rng.below(4) == 0) continue;  // keep some components zero
        v.set_component(i, random_polynomial(rng, chart.dim(), max_degree));
    }
    return v;
}

inline DifferentialForm random_form(Rng& rng, const Chart& chart, unsigned degree,
                                    unsigned max_degree, unsigned max_components = 3) {
    DifferentialForm f(chart, degree);
    if (degree > chart.dim()) return f;
    unsigned count = 1 + static_cast<unsigned>(rng.below(max_components));
    for (unsigned c = 0; c < count; ++c) {
        std::vector<unsigned> idx;
        // draw distinct indices
        std::vector<unsigned> pool(chart.dim());
        for (unsigned i = 0; i < chart.dim(); ++i) pool[i] = i;
        for (unsigned k = 0; k < degree; ++k) {
            size_t pick = rng.below(pool.size());
            idx.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<long>(pick));
        }
        f.add_component(idx, random_polynomial(rng, chart.dim(), max_degree));
    }
    return f;
}

}  // namespace plectic
