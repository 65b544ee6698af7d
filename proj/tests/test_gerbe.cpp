#include <memory>

#include "doctest.h"
#include "plectic/gerbe.hpp"
#include "plectic/observables.hpp"
#include "plectic/text.hpp"

using namespace plectic;

namespace {

const Chart kBase{{"x", "y", "z"}};

std::shared_ptr<PlecticStructure> volume_r3() {
    return std::make_shared<PlecticStructure>(
        text::parse_form("dx^dy^dz", kBase),
        std::vector<std::vector<Rational>>{{Rational(0), Rational(0), Rational(0)}});
}

/// (R^3 x R_u, theta = x dy^dz + du^dx)
std::shared_ptr<SurrogateBundle> fixture_r3xr() {
    Chart total{{"x", "y", "z", "u"}};
    return std::make_shared<SurrogateBundle>(kBase, std::vector<std::string>{"u"},
                                             text::parse_form("dx^dy^dz", kBase),
                                             text::parse_form("x*dy^dz + du^dx", total));
}

/// (R^3 x R^2, theta = x dy^dz + du^dx + du^dv): nonzero theta on vertical pairs
std::shared_ptr<SurrogateBundle> fixture_r3xr2() {
    Chart total{{"x", "y", "z", "u", "v"}};
    return std::make_shared<SurrogateBundle>(kBase, std::vector<std::string>{"u", "v"},
                                             text::parse_form("dx^dy^dz", kBase),
                                             text::parse_form("x*dy^dz + du^dx + du^dv", total));
}

SectionElement S(const SurrogateBundle& sb, const std::string& z, const std::string& h) {
    return make_section(sb, text::parse_field(z, sb.total()), text::parse_polynomial(h, sb.total()));
}

}  // namespace

TEST_SUITE("gerbe_sections") {

TEST_CASE("surrogate bundle validates its curving relation") {
    CHECK_NOTHROW(fixture_r3xr());
    Chart total{{"x", "y", "z", "u"}};
    // d theta misses pullback(omega)
    CHECK_THROWS_WITH_AS(
        SurrogateBundle(kBase, {"u"}, text::parse_form("dx^dy^dz", kBase),
                        text::parse_form("du^dx", total)),
        doctest::Contains("d theta != pullback omega"), InputError);
    // omega not closed
    Chart base4{{"x", "y", "z", "w"}};
    CHECK_THROWS_AS(SurrogateBundle(base4, {}, text::parse_form("w*dx^dy^dz", base4),
                                    text::parse_form("0", base4, 2)),
                    InputError);
}

TEST_CASE("verticality and projectability guards") {
    auto sb = fixture_r3xr();
    CHECK(sb->is_vertical(text::parse_field("u*d/du", sb->total())));
    CHECK_FALSE(sb->is_vertical(text::parse_field("d/dx", sb->total())));
    CHECK(sb->is_projectable(text::parse_field("x*d/dy + u*d/du", sb->total())));
    CHECK_FALSE(sb->is_projectable(text::parse_field("u*d/dx", sb->total())));
    CHECK_THROWS_AS(make_section(*sb, text::parse_field("d/dx", sb->total()),
                                 Polynomial::zero(4)),
                    InputError);
    CHECK(sb->project(text::parse_field("x*d/dy + u*d/du", sb->total())) ==
          text::parse_field("x*d/dy", kBase));
}

TEST_CASE("section bracket fixtures") {
    auto sb = fixture_r3xr();
    SectionElement a = S(*sb, "d/du", "0");
    SectionElement b = S(*sb, "u*d/du", "0");
    SectionElement r = section_bracket(*sb, a, b);
    CHECK(r.z == text::parse_field("d/du", sb->total()));
    CHECK(r.h.is_zero());

    SectionElement c = S(*sb, "0", "x*u");
    SectionElement r2 = section_bracket(*sb, a, c);
    CHECK(r2.z.is_zero());
    CHECK(r2.h == text::parse_polynomial("x", sb->total()));

    SectionElement r3 = section_bracket(*sb, a, a);
    CHECK(r3.z.is_zero());
    CHECK(r3.h.is_zero());
}

TEST_CASE("eta map fixtures and validity") {
    auto sb = fixture_r3xr();
    WeakSymmetryTriple t = eta_map(*sb, S(*sb, "d/du", "0"));
    CHECK(t.x == text::parse_field("d/du", sb->total()));
    CHECK(t.g.is_zero());
    CHECK(t.b == text::parse_form("dx", sb->total()));

    WeakSymmetryTriple t2 = eta_map(*sb, S(*sb, "0", "x*y + u^2"));
    CHECK(t2.x.is_zero());
    CHECK(t2.g == text::parse_polynomial("x*y + u^2", sb->total()));
    CHECK(t2.b == ext_d(text::parse_form("x*y + u^2", sb->total())));

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        SectionElement s = random_section(rng, *sb, 3);
        WeakSymmetryTriple e = eta_map(*sb, s);
        CHECK(lie_derivative(e.x, sb->theta()) == ext_d(e.b));
    }
}

TEST_CASE("action fixtures") {
    auto sb = fixture_r3xr();
    MultVFData dz{text::parse_field("d/dz", sb->total()), Polynomial::zero(4)};
    MultVFData dx{text::parse_field("d/dx", sb->total()), Polynomial::zero(4)};
    SectionElement du = S(*sb, "d/du", "0");

    SectionElement r = mult_action(*sb, dz, du);
    CHECK(r.z.is_zero());
    CHECK(r.h.is_zero());

    SectionElement r2 = mult_action(*sb, dx, du);
    CHECK(r2.z.is_zero());
    CHECK(r2.h == Polynomial::constant(4, Rational(1)));  // -theta(d/dx, d/du) = 1

    // constants are killed by any action
    SectionElement one = S(*sb, "0", "1");
    SectionElement r3 = mult_action(*sb, MultVFData{text::parse_field("x*d/dy", sb->total()),
                                                    text::parse_polynomial("y", sb->total())},
                                    one);
    CHECK(r3.z.is_zero());
    CHECK(r3.h.is_zero());

    CHECK_THROWS_AS(mult_action(*sb, MultVFData{text::parse_field("u*d/dx", sb->total()),
                                                Polynomial::zero(4)},
                                du),
                    InputError);
}

TEST_CASE("action result is independent of the pullback ambiguity in g") {
    auto sb = fixture_r3xr();
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        VectorField x = sb->extend(random_vector_field(rng, kBase, 2));
        Polynomial g = random_polynomial(rng, 4, 3);
        Polynomial base_f = sb->pullback(random_polynomial(rng, 3, 3));
        SectionElement s = random_section(rng, *sb, 3);
        SectionElement r1 = mult_action(*sb, MultVFData{x, g}, s);
        SectionElement r2 = mult_action(*sb, MultVFData{x, g + base_f}, s);
        CHECK(r1.z == r2.z);
        CHECK(r1.h == r2.h);
    }
}

TEST_CASE("weak symmetry recognition extracts the base form") {
    auto sb = fixture_r3xr();
    // B = i_dz theta + pullback(x dy) = -x dy + x dy = 0
    MultVFData m{text::parse_field("d/dz", sb->total()), Polynomial::zero(4)};
    DifferentialForm b = interior(m.x, sb->theta()) + sb->pullback(text::parse_form("x*dy", kBase));
    CHECK(b.is_zero());
    auto alpha = is_weak_symmetry(*sb, m, b);
    REQUIRE(alpha.has_value());
    CHECK(*alpha == text::parse_form("x*dy", kBase));

    // vertical data with B = i_Z theta + dg is a symmetry over alpha = 0
    SectionElement s = S(*sb, "u*d/du", "x*u");
    WeakSymmetryTriple t = eta_map(*sb, s);
    auto alpha2 = is_weak_symmetry(*sb, MultVFData{t.x, t.g}, t.b);
    REQUIRE(alpha2.has_value());
    CHECK(alpha2->is_zero());

    // B = 0 fails only when the cancellation does not happen
    auto bad = is_weak_symmetry(*sb, MultVFData{text::parse_field("d/dx", sb->total()),
                                                Polynomial::zero(4)},
                                DifferentialForm::zero(sb->total(), 1));
    CHECK_FALSE(bad.has_value());
}

TEST_CASE("weak symmetry recognition with a theta lacking the du term") {
    // theta' = x dy^dz on the base alone (fiber dim 0): B = 0 still recognizes
    // d/dz because B - i_X theta' = x dy is Hamiltonian for d/dz.
    auto sb0 = std::make_shared<SurrogateBundle>(kBase, std::vector<std::string>{},
                                                 text::parse_form("dx^dy^dz", kBase),
                                                 text::parse_form("x*dy^dz", kBase));
    MultVFData m{text::parse_field("d/dz", sb0->total()), Polynomial::zero(3)};
    auto alpha = is_weak_symmetry(*sb0, m, DifferentialForm::zero(sb0->total(), 1));
    REQUIRE(alpha.has_value());
    CHECK(*alpha == text::parse_form("x*dy", kBase));
}

TEST_CASE("wsym bracket fixture collapses to the zero triple") {
    auto sb = fixture_r3xr();
    WeakSymmetryTriple p = make_weak_symmetry(
        *sb, text::parse_field("d/dz", sb->total()), Polynomial::zero(4),
        DifferentialForm::zero(sb->total(), 1));
    DifferentialForm b2 = interior(text::parse_field("d/dx", sb->total()), sb->theta()) +
                          sb->pullback(text::parse_form("y*dz", kBase));
    CHECK(b2 == text::parse_form("y*dz - du", sb->total()));
    WeakSymmetryTriple q =
        make_weak_symmetry(*sb, text::parse_field("d/dx", sb->total()), Polynomial::zero(4), b2);
    WeakSymmetryTriple br = wsym_bracket(*sb, p, q);
    CHECK(br.x.is_zero());
    CHECK(br.g.is_zero());
    CHECK(br.b.is_zero());

    WeakSymmetryTriple self = wsym_bracket(*sb, p, p);
    CHECK(self.x.is_zero());
    CHECK(self.g.is_zero());
    CHECK(self.b.is_zero());
}

TEST_CASE("crossed module passes all checks on 50 random tuples") {
    auto sb = fixture_r3xr();
    auto ps = volume_r3();
    auto cm = build_section_crossed_module(sb);
    HamiltonianPairGenerator base_gen(ps, 3, {});
    Rng rng(4242);
    auto report = lie2::check_crossed_module<WeakSymmetryTriple, SectionElement>(
        cm,
        [&](Rng& r) { return random_weak_symmetry(r, *sb, base_gen, 2); },
        [&](Rng& r) { return random_section(r, *sb, 2); }, 50, rng);
    for (const auto& eq : report.equations) {
        INFO(eq.id, ": ", eq.witness);
        CHECK(eq.status == lie2::Status::pass);
    }
}

TEST_CASE("crossed module on a 2-dimensional fiber passes as well") {
    auto sb = fixture_r3xr2();
    auto ps = volume_r3();
    auto cm = build_section_crossed_module(sb);
    HamiltonianPairGenerator base_gen(ps, 2, {});
    Rng rng(777);
    auto report = lie2::check_crossed_module<WeakSymmetryTriple, SectionElement>(
        cm,
        [&](Rng& r) { return random_weak_symmetry(r, *sb, base_gen, 2); },
        [&](Rng& r) { return random_section(r, *sb, 2); }, 25, rng);
    for (const auto& eq : report.equations) {
        INFO(eq.id, ": ", eq.witness);
        CHECK(eq.status == lie2::Status::pass);
    }
}

TEST_CASE("dropping theta from the section bracket breaks A1 with a witness") {
    // Needs a fiber where theta pairs verticals nontrivially; on a
    // 1-dimensional fiber theta(Z,Z') vanishes identically.
    auto sb = fixture_r3xr2();
    auto ps = volume_r3();
    SectionCrossedModuleOptions opt;
    opt.drop_theta_in_bracket = true;
    auto cm = build_section_crossed_module(sb, opt);
    HamiltonianPairGenerator base_gen(ps, 2, {});
    Rng rng(4242);
    auto report = lie2::check_crossed_module<WeakSymmetryTriple, SectionElement>(
        cm,
        [&](Rng& r) { return random_weak_symmetry(r, *sb, base_gen, 2); },
        [&](Rng& r) { return random_section(r, *sb, 2); }, 25, rng);
    const auto* a1 = report.find("cm-A1");
    REQUIRE(a1 != nullptr);
    CHECK(a1->status == lie2::Status::fail);
    CHECK_FALSE(a1->witness.empty());
}

TEST_CASE("dropping theta from the action breaks A2") {
    auto sb = fixture_r3xr();
    auto ps = volume_r3();
    SectionCrossedModuleOptions opt;
    opt.drop_theta_in_action = true;
    auto cm = build_section_crossed_module(sb, opt);
    HamiltonianPairGenerator base_gen(ps, 2, {});
    Rng rng(4242);
    auto report = lie2::check_crossed_module<WeakSymmetryTriple, SectionElement>(
        cm,
        [&](Rng& r) { return random_weak_symmetry(r, *sb, base_gen, 2); },
        [&](Rng& r) { return random_section(r, *sb, 2); }, 25, rng);
    const auto* a2 = report.find("cm-A2");
    REQUIRE(a2 != nullptr);
    CHECK(a2->status == lie2::Status::fail);
}

TEST_CASE("a passing crossed module yields a strict algebra passing all axioms") {
    auto sb = fixture_r3xr();
    auto ps = volume_r3();
    auto cm = build_section_crossed_module(sb);
    auto alg = lie2::crossed_to_lie2(cm);
    HamiltonianPairGenerator base_gen(ps, 2, {});
    Rng rng(314);
    auto report = lie2::check_lie2_axioms<WeakSymmetryTriple, SectionElement>(
        alg,
        [&](Rng& r) { return random_weak_symmetry(r, *sb, base_gen, 2); },
        [&](Rng& r) { return random_section(r, *sb, 2); }, 20, rng);
    for (const auto& eq : report.equations) {
        INFO(eq.id, ": ", eq.witness);
        CHECK(eq.status == lie2::Status::pass);
    }
}

TEST_CASE("fiber dimension zero collapses to the reduced picture") {
    auto sb0 = std::make_shared<SurrogateBundle>(kBase, std::vector<std::string>{},
                                                 text::parse_form("dx^dy^dz", kBase),
                                                 text::parse_form("x*dy^dz", kBase));
    CHECK(sb0->total() == kBase);
    // sections have Z = 0, the bracket is abelian, the action is (0, X(h))
    SectionElement a{VectorField(sb0->total()), text::parse_polynomial("x*y", kBase)};
    SectionElement b{VectorField(sb0->total()), text::parse_polynomial("z^2", kBase)};
    SectionElement br = section_bracket(*sb0, a, b);
    CHECK(br.z.is_zero());
    CHECK(br.h.is_zero());
    MultVFData m{text::parse_field("d/dx", kBase), Polynomial::zero(3)};
    SectionElement acted = mult_action(*sb0, m, a);
    CHECK(acted.h == m.x.apply(a.h));
}

TEST_CASE("adding a closed pullback to theta leaves vertical brackets unchanged") {
    auto sb = fixture_r3xr();
    Chart total = sb->total();
    DifferentialForm theta2 = sb->theta() + sb->pullback(text::parse_form("dx^dy", kBase));
    auto sb2 = std::make_shared<SurrogateBundle>(kBase, std::vector<std::string>{"u"},
                                                 sb->omega(), theta2);
    Rng rng(31);
    for (int i = 0; i < 15; ++i) {
        SectionElement a = random_section(rng, *sb, 2);
        SectionElement b = random_section(rng, *sb, 2);
        SectionElement r1 = section_bracket(*sb, a, b);
        SectionElement r2 = section_bracket(*sb2, a, b);
        CHECK(r1.z == r2.z);
        CHECK(r1.h == r2.h);
    }
}

TEST_CASE("wsym equality compares g modulo base pullbacks") {
    auto sb = fixture_r3xr();
    auto ops = wsym_ops(sb);
    WeakSymmetryTriple t = eta_map(*sb, S(*sb, "d/du", "0"));
    WeakSymmetryTriple shifted = t;
    shifted.g = t.g + sb->pullback(text::parse_polynomial("x^2 - y", kBase));
    CHECK(ops.equal(t, shifted));
    WeakSymmetryTriple fiber_shifted = t;
    fiber_shifted.g = t.g + text::parse_polynomial("u", sb->total());
    CHECK_FALSE(ops.equal(t, fiber_shifted));
}

}  // TEST_SUITE
