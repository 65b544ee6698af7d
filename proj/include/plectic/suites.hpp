#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/gerbe.hpp"
#include "plectic/lie2.hpp"
#include "plectic/observables.hpp"
#include "plectic/prequant.hpp"
#include "plectic/report.hpp"
#include "plectic/scenario.hpp"

namespace plectic {

struct RunOptions {
    std::optional<int> samples;
    std::optional<uint64_t> seed;
    std::optional<unsigned> degree_bound;
    std::string perturb;  // empty: honest run
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"exterior-laws", "observables-axioms",
                                                "crossed-module", "prequant-morphism", "quasi-iso",
                                                "all"};
    return names;
}

inline const std::vector<std::string>& perturbation_names() {
    static const std::vector<std::string> names{"l3-scale-2",       "bracket-drop-theta",
                                                "action-drop-theta", "phi2-drop-pairing",
                                                "phi2-drop-chi",     "phi2-zero"};
    return names;
}

namespace detail_suites {

/// Second route for the Lie derivative on coordinate forms, used to
/// cross-check the Cartan-formula implementation:
/// L_X (p dx_I) = X(p) dx_I + p sum_j dx_{i_1} ^ .. ^ d(X^{i_j}) ^ .. ^ dx_{i_k}.
inline DifferentialForm lie_by_component_expansion(const VectorField& x,
                                                   const DifferentialForm& a) {
    const Chart& chart = a.chart();
    if (a.degree() == 0)
        return DifferentialForm::from_polynomial(chart, x.apply(a.as_polynomial()));
    DifferentialForm out(chart, a.degree());
    for (const auto& [idx, p] : a.components()) {
        out.add_component(idx, x.apply(p));
        for (size_t j = 0; j < idx.size(); ++j) {
            DifferentialForm acc = DifferentialForm::from_polynomial(
                chart, Polynomial::constant(chart.dim(), Rational(1)));
            for (size_t t = 0; t < idx.size(); ++t) {
                DifferentialForm piece(chart, 1);
                if (t == j) {
                    piece = ext_d(DifferentialForm::from_polynomial(chart, x.component(idx[j])));
                } else {
                    piece.add_component({idx[t]}, Polynomial::constant(chart.dim(), Rational(1)));
                }
                acc = wedge(acc, piece);
            }
            DifferentialForm scaled(chart, acc.degree());
            for (const auto& [widx, wc] : acc.components()) scaled.add_component(widx, p * wc);
            out += scaled;
        }
    }
    return out;
}

struct SuiteContext {
    const Scenario& sc;
    int samples;
    uint64_t seed;
    unsigned degree_bound;
    std::string perturb;
};

inline SuiteResult inconclusive_suite(const std::string& suite, const std::string& reason) {
    lie2::EquationResult eq;
    eq.id = suite;
    eq.statement = "suite prerequisites";
    eq.status = lie2::Status::inconclusive;
    eq.reason = reason;
    return SuiteResult{suite, {eq}};
}

inline SuiteResult run_exterior_laws(const SuiteContext& ctx) {
    using lie2::detail::EquationTracker;
    EquationTracker dd("ext-dd", "d(d a) = 0");
    EquationTracker comm("ext-graded-comm", "a^b = (-1)^{kl} b^a");
    EquationTracker leib("ext-graded-leibniz", "d(a^b) = da^b + (-1)^k a^db");
    EquationTracker cartan("ext-cartan", "Cartan route equals component-expansion route for L_X");
    EquationTracker ider("ext-interior-derivation", "i_X(a^b) = (i_X a)^b + (-1)^k a^(i_X b)");
    EquationTracker isq("ext-interior-squared", "i_X i_X a = 0");
    EquationTracker lcomm("ext-lie-commutator", "L_[X,Y] = L_X L_Y - L_Y L_X");
    EquationTracker ibr("ext-interior-bracket", "i_[X,Y] = L_X i_Y - i_Y L_X");
    EquationTracker jac("ext-vf-jacobi", "[[X,Y],Z] cyclic sum = 0");

    Rng rng(ctx.seed);
    for (int s = 0; s < ctx.samples; ++s) {
        unsigned dim = 1 + static_cast<unsigned>(rng.below(5));
        std::vector<std::string> names;
        for (unsigned i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
        Chart chart(names);
        unsigned ka = static_cast<unsigned>(rng.below(dim + 1));
        unsigned kb = static_cast<unsigned>(rng.below(dim + 1));
        DifferentialForm a = random_form(rng, chart, ka, 3);
        DifferentialForm b = random_form(rng, chart, kb, 3);
        VectorField x = random_vector_field(rng, chart, 3);
        VectorField y = random_vector_field(rng, chart, 3);
        VectorField z = random_vector_field(rng, chart, 2);
        auto witness = [&]() {
            return "chart dim " + std::to_string(dim) + ", a = " + a.to_string() +
                   ", b = " + b.to_string() + ", X = " + x.to_string() + ", Y = " + y.to_string();
        };

        dd.record(ext_d(ext_d(a)).is_zero(), witness);

        {
            DifferentialForm ab = wedge(a, b);
            DifferentialForm ba = wedge(b, a);
            if ((ka * kb) % 2 == 1) ba = -ba;
            comm.record(ab == ba, witness);

            DifferentialForm rhs = wedge(ext_d(a), b);
            DifferentialForm adb = wedge(a, ext_d(b));
            rhs += (ka % 2 == 1) ? -adb : adb;
            leib.record(ext_d(ab) == rhs, witness);
        }

        cartan.record(lie_derivative(x, a) == lie_by_component_expansion(x, a), witness);
        lcomm.record(lie_derivative(vf_bracket(x, y), a) ==
                         lie_derivative(x, lie_derivative(y, a)) -
                             lie_derivative(y, lie_derivative(x, a)),
                     witness);

        // the interior laws need degree >= 1 on each factor
        DifferentialForm a1 = ka >= 1 ? a : random_form(rng, chart, 1, 3);
        DifferentialForm b1 = kb >= 1 ? b : random_form(rng, chart, 1, 3);
        {
            unsigned k1 = a1.degree();
            DifferentialForm lhs = interior(x, wedge(a1, b1));
            DifferentialForm rhs = wedge(interior(x, a1), b1);
            DifferentialForm a1xb = wedge(a1, interior(x, b1));
            rhs += (k1 % 2 == 1) ? -a1xb : a1xb;
            ider.record(lhs == rhs, witness);
            if (a1.degree() >= 2) {
                isq.record(interior(x, interior(x, a1)).is_zero(), witness);
            } else {
                DifferentialForm two = random_form(rng, chart, std::min(2u, dim), 3);
                isq.record(two.degree() < 2 || interior(x, interior(x, two)).is_zero(), witness);
            }
            ibr.record(interior(vf_bracket(x, y), a1) ==
                           lie_derivative(x, interior(y, a1)) -
                               interior(y, lie_derivative(x, a1)),
                       witness);
        }

        VectorField cyc = vf_bracket(x, vf_bracket(y, z)) + vf_bracket(y, vf_bracket(z, x)) +
                          vf_bracket(z, vf_bracket(x, y));
        jac.record(cyc.is_zero(), witness);
    }

    SuiteResult out{"exterior-laws", {}};
    out.equations = {dd.result,  comm.result,  leib.result, cartan.result, ider.result,
                     isq.result, lcomm.result, ibr.result,  jac.result};
    return out;
}

struct ScenarioAlgebra {
    std::shared_ptr<PlecticStructure> ps;
    std::vector<HamiltonianPair> pool;
    std::vector<Polynomial> function_pool;  // base-chart fixture functions
};

inline ScenarioAlgebra build_scenario_algebra(const SuiteContext& ctx) {
    ScenarioAlgebra out;
    out.ps = std::make_shared<PlecticStructure>(ctx.sc.omega, ctx.sc.nondeg_points);
    for (const auto& alpha : ctx.sc.hamiltonian_forms) {
        HamiltonianSolve sol = solve_hamiltonian(*out.ps, alpha, ctx.degree_bound);
        if (!sol.pair)
            throw InputError("scenario form " + alpha.to_string() +
                             " is not Hamiltonian at degree bound " +
                             std::to_string(ctx.degree_bound));
        out.pool.push_back(*sol.pair);
    }
    for (const auto& [alpha, x] : ctx.sc.hamiltonian_pairs)
        out.pool.push_back(make_verified_pair(*out.ps, alpha, x));
    for (const auto& [name, fx] : ctx.sc.fixtures) {
        if (fx.kind != "function") continue;
        try {
            out.function_pool.push_back(text::parse_polynomial(fx.source, ctx.sc.base));
        } catch (const ParseError&) {
            // fixture uses fiber variables; it cannot seed the base pool
        }
    }
    return out;
}

inline std::function<Polynomial(Rng&)> base_function_gen(const ScenarioAlgebra& sa, unsigned dim,
                                                         unsigned degree_bound) {
    auto pool = sa.function_pool;
    return [pool, dim, degree_bound](Rng& rng) {
        if (!pool.empty() && rng.below(4) == 0) {
            return rng.nonzero_rational(9, 4) * pool[rng.below(pool.size())];
        }
        return random_polynomial(rng, dim, degree_bound);
    };
}

inline SuiteResult run_observables_axioms(const SuiteContext& ctx) {
    ScenarioAlgebra sa = build_scenario_algebra(ctx);
    ObservablesOptions opt;
    if (ctx.perturb == "l3-scale-2") opt.l3_scale = Rational(2);
    auto alg = build_observables(sa.ps, opt);
    HamiltonianPairGenerator gen0(sa.ps, ctx.degree_bound, sa.pool);
    auto genm1 = base_function_gen(sa, ctx.sc.base.dim(), ctx.degree_bound);
    Rng rng(ctx.seed);
    auto report = lie2::check_lie2_axioms<HamiltonianPair, Polynomial>(
        alg, [gen0](Rng& r) { return gen0(r); }, genm1, ctx.samples, rng);
    return SuiteResult{"observables-axioms", report.equations};
}

inline SuiteResult run_crossed_module(const SuiteContext& ctx) {
    auto theta = ctx.sc.effective_theta();
    if (!theta)
        return inconclusive_suite("crossed-module",
                                  "scenario provides neither theta nor chi for the bundle");
    ScenarioAlgebra sa = build_scenario_algebra(ctx);
    auto sb = std::make_shared<SurrogateBundle>(ctx.sc.base, ctx.sc.fiber_vars, ctx.sc.omega,
                                                *theta);
    SectionCrossedModuleOptions opt;
    if (ctx.perturb == "bracket-drop-theta") opt.drop_theta_in_bracket = true;
    if (ctx.perturb == "action-drop-theta") opt.drop_theta_in_action = true;
    auto cm = build_section_crossed_module(sb, opt);
    HamiltonianPairGenerator base_gen(sa.ps, ctx.degree_bound, sa.pool);
    unsigned payload_degree = std::min(ctx.degree_bound, 2u);
    Rng rng(ctx.seed);
    auto report = lie2::check_crossed_module<WeakSymmetryTriple, SectionElement>(
        cm,
        [sb, base_gen, payload_degree](Rng& r) {
            return random_weak_symmetry(r, *sb, base_gen, payload_degree);
        },
        [sb, payload_degree](Rng& r) { return random_section(r, *sb, payload_degree); },
        ctx.samples, rng);
    return SuiteResult{"crossed-module", report.equations};
}

inline Phi2Mode phi2_mode_from(const std::string& perturb) {
    if (perturb == "phi2-drop-pairing") return Phi2Mode::drop_pairing;
    if (perturb == "phi2-drop-chi") return Phi2Mode::drop_chi;
    if (perturb == "phi2-zero") return Phi2Mode::zero;
    return Phi2Mode::full;
}

inline SuiteResult run_prequant_morphism(const SuiteContext& ctx) {
    if (!ctx.sc.chi)
        return inconclusive_suite("prequant-morphism", "scenario provides no chi");
    ScenarioAlgebra sa = build_scenario_algebra(ctx);
    auto es = std::make_shared<ExactScenario>(sa.ps, *ctx.sc.chi);
    auto m = build_prequant_morphism(es, phi2_mode_from(ctx.perturb));
    HamiltonianPairGenerator gen0(sa.ps, ctx.degree_bound, sa.pool);
    auto genm1 = base_function_gen(sa, ctx.sc.base.dim(), ctx.degree_bound);
    Rng rng(ctx.seed);
    auto report =
        lie2::check_morphism<HamiltonianPair, Polynomial, WeakSymmetryTriple, SectionElement>(
            m, [gen0](Rng& r) { return gen0(r); }, genm1, ctx.samples, rng);
    return SuiteResult{"prequant-morphism", report.equations};
}

inline SuiteResult run_quasi_iso(const SuiteContext& ctx) {
    if (!ctx.sc.chi) return inconclusive_suite("quasi-iso", "scenario provides no chi");
    ScenarioAlgebra sa = build_scenario_algebra(ctx);
    auto es = std::make_shared<ExactScenario>(sa.ps, *ctx.sc.chi);
    auto m = build_prequant_morphism(es);
    const Chart chart = ctx.sc.base;
    const unsigned dim = chart.dim();
    HamiltonianPairGenerator gen0(sa.ps, ctx.degree_bound, sa.pool);

    lie2::TruncationProbe<HamiltonianPair, Polynomial, WeakSymmetryTriple, SectionElement> probe;
    auto monomial_basis = monomials_up_to(dim, ctx.degree_bound);
    for (const auto& mono : monomial_basis) {
        Polynomial p(dim);
        p.add_term(mono, Rational(1));
        probe.source_degm1_basis.push_back(p);
        probe.target_degm1_basis.push_back(SectionElement{VectorField(chart), p});
    }
    auto poly_coords = [monomial_basis](const Polynomial& p) {
        std::vector<Rational> v;
        v.reserve(monomial_basis.size());
        for (const auto& mono : monomial_basis) v.push_back(p.coefficient(mono));
        return v;
    };
    auto form_coords = [monomial_basis, dim](const DifferentialForm& f) {
        std::vector<Rational> v;
        for (unsigned slot = 0; slot < dim; ++slot) {
            Polynomial comp = f.component({slot});
            for (const auto& mono : monomial_basis) v.push_back(comp.coefficient(mono));
        }
        return v;
    };
    probe.source_degm1_coords = poly_coords;
    probe.target_degm1_coords = [poly_coords](const SectionElement& s) { return poly_coords(s.h); };
    probe.source_deg0_coords = [form_coords](const HamiltonianPair& p) {
        return form_coords(p.alpha);
    };
    probe.target_deg0_coords = [form_coords, poly_coords, dim](const WeakSymmetryTriple& t) {
        auto v = form_coords(t.b);
        for (unsigned slot = 0; slot < dim; ++slot) {
            auto comp = poly_coords(t.x.component(slot));
            v.insert(v.end(), comp.begin(), comp.end());
        }
        return v;
    };
    probe.decompose = [es](const WeakSymmetryTriple& t)
        -> std::optional<std::pair<HamiltonianPair, SectionElement>> {
        try {
            auto [alpha, h] = decompose_weak_symmetry(*es, t);
            HamiltonianPair pre = make_verified_pair(es->ps(), alpha, t.x);
            return std::make_pair(pre,
                                  SectionElement{VectorField(es->ps().chart()), h});
        } catch (const NotAWeakSymmetry&) {
            return std::nullopt;
        }
    };
    unsigned payload_degree = ctx.degree_bound;
    probe.target_deg0_gen = [es, gen0, chart, payload_degree](Rng& rng) {
        HamiltonianPair a = gen0(rng);
        Polynomial h = random_polynomial(rng, chart.dim(), payload_degree);
        WeakSymmetryTriple t = phi1_pair(*es, a);
        WeakSymmetryTriple e = eta_map(es->bundle(), SectionElement{VectorField(chart), h});
        return WeakSymmetryTriple{t.x + e.x, t.g + e.g, t.b + e.b};
    };

    Rng rng(ctx.seed);
    auto report = lie2::kernel_cokernel_probe(m, probe, ctx.samples, rng);

    // exact recovery of (alpha, h) from Phi1(alpha) + eta(0, h)
    lie2::detail::EquationTracker roundtrip(
        "qiso-roundtrip", "decompose recovers (alpha, h) from Phi1(alpha) + eta(0,h) exactly");
    for (int s = 0; s < ctx.samples; ++s) {
        HamiltonianPair a0 = gen0(rng);
        Polynomial h0 = random_polynomial(rng, dim, ctx.degree_bound);
        WeakSymmetryTriple t = phi1_pair(*es, a0);
        WeakSymmetryTriple e = eta_map(es->bundle(), SectionElement{VectorField(chart), h0});
        WeakSymmetryTriple sum{t.x + e.x, t.g + e.g, t.b + e.b};
        auto [alpha, h] = decompose_weak_symmetry(*es, sum);
        bool ok = (alpha == a0.alpha) && (h == h0);
        roundtrip.record(ok, [&]() {
            return "alpha0 = " + a0.alpha.to_string() + ", h0 = " + h0.to_string(chart.vars);
        });
    }
    report.equations.push_back(roundtrip.result);
    return SuiteResult{"quasi-iso", report.equations};
}

}  // namespace detail_suites

/**
 * @brief Runs one suite (or all) against a scenario, deterministically.
 *
 * Option overrides shadow the scenario's samples/seed/degree_bound. Unknown
 * suite or perturbation names are rejected. Perturbation knobs only touch the
 * suite that owns the perturbed formula.
 */
inline Report run_suite(const Scenario& sc, const std::string& suite,
                        const RunOptions& opt = {}) {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == suite;
    if (!known) throw InputError("unknown suite '" + suite + "'");
    if (!opt.perturb.empty()) {
        bool ok = false;
        for (const auto& n : perturbation_names()) ok = ok || n == opt.perturb;
        if (!ok) throw InputError("unknown perturbation '" + opt.perturb + "'");
    }

    detail_suites::SuiteContext ctx{sc, opt.samples.value_or(sc.samples),
                                    opt.seed.value_or(sc.seed),
                                    opt.degree_bound.value_or(sc.degree_bound), opt.perturb};

    auto started = std::chrono::steady_clock::now();
    Report report;
    report.scenario = sc.name;
    report.seed = ctx.seed;

    if (suite == "exterior-laws" || suite == "all")
        report.suites.push_back(detail_suites::run_exterior_laws(ctx));
    if (suite == "observables-axioms" || suite == "all")
        report.suites.push_back(detail_suites::run_observables_axioms(ctx));
    if (suite == "crossed-module" || suite == "all")
        report.suites.push_back(detail_suites::run_crossed_module(ctx));
    if (suite == "prequant-morphism" || suite == "all")
        report.suites.push_back(detail_suites::run_prequant_morphism(ctx));
    if (suite == "quasi-iso" || suite == "all")
        report.suites.push_back(detail_suites::run_quasi_iso(ctx));

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace plectic
