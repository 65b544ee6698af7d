#include <memory>

#include "doctest.h"
#include "plectic/observables.hpp"
#include "plectic/plectic.hpp"
#include "plectic/rng.hpp"
#include "plectic/text.hpp"

using namespace plectic;

namespace {

const Chart kXYZ{{"x", "y", "z"}};
const Chart kXYZW{{"x", "y", "z", "w"}};

DifferentialForm F(const std::string& s, const Chart& chart = kXYZ) {
    return text::parse_form(s, chart);
}

VectorField V(const std::string& s, const Chart& chart = kXYZ) {
    return text::parse_field(s, chart);
}

std::shared_ptr<PlecticStructure> volume_r3() {
    return std::make_shared<PlecticStructure>(
        F("dx^dy^dz"),
        std::vector<std::vector<Rational>>{{Rational(0), Rational(0), Rational(0)},
                                           {Rational(1), Rational(2), Rational(3)}});
}

}  // namespace

TEST_SUITE("plectic") {

TEST_CASE("closedness check") {
    CHECK(check_closed(F("dx^dy^dz")));
    CHECK(check_closed(F("x*dx^dy^dz")));  // top degree on R^3
    CHECK(check_closed(F("x*dx^dy^dz", kXYZW)));
    // d(x * dy^dz^dw) = dx^dy^dz^dw != 0 on R^4
    CHECK_FALSE(check_closed(F("x*dy^dz^dw", kXYZW)));
    CHECK(ext_d(F("x*dy^dz^dw", kXYZW)) == F("dx^dy^dz^dw", kXYZW));
    CHECK_FALSE(check_closed(F("w*dx^dy^dz", kXYZW)));
    // cancellation between two non-closed pieces
    CHECK(check_closed(F("x*dy^dz^dw + y*dx^dz^dw", kXYZW)));
    CHECK_THROWS_AS(check_closed(F("dx^dy")), InputError);
}

TEST_CASE("pointwise non-degeneracy") {
    auto origin3 = std::vector<std::vector<Rational>>{{Rational(0), Rational(0), Rational(0)}};
    CHECK(check_nondegenerate(F("dx^dy^dz"), origin3).nondegenerate);

    auto origin4 =
        std::vector<std::vector<Rational>>{{Rational(0), Rational(0), Rational(0), Rational(0)}};
    auto res = check_nondegenerate(F("dx^dy^dz", kXYZW), origin4);
    CHECK_FALSE(res.nondegenerate);
    REQUIRE(res.kernel_vector.has_value());
    // the kernel contains the d/dw direction
    CHECK((*res.kernel_vector)[3] != Rational(0));
    CHECK((*res.kernel_vector)[0] == Rational(0));

    CHECK_FALSE(check_nondegenerate(DifferentialForm::zero(kXYZ, 3), origin3).nondegenerate);
    CHECK_THROWS_AS(check_nondegenerate(F("dx^dy^dz"), {}), InputError);
}

TEST_CASE("plectic structure construction validates") {
    CHECK_NOTHROW(volume_r3());
    CHECK_THROWS_AS(PlecticStructure(F("w*dx^dy^dz", kXYZW),
                                     {{Rational(0), Rational(0), Rational(0), Rational(0)}}),
                    InputError);
    CHECK_THROWS_AS(PlecticStructure(F("dx^dy^dz", kXYZW),
                                     {{Rational(0), Rational(0), Rational(0), Rational(0)}}),
                    InputError);
}

TEST_CASE("hamiltonian solver reproduces the fixtures") {
    auto ps = volume_r3();
    SUBCASE("x dy -> d/dz") {
        auto sol = solve_hamiltonian(*ps, F("x*dy"), 3);
        REQUIRE(sol.pair.has_value());
        CHECK(sol.pair->field == V("d/dz"));
        CHECK(sol.unique);
    }
    SUBCASE("closed form -> zero field") {
        auto sol = solve_hamiltonian(*ps, F("dx"), 3);
        REQUIRE(sol.pair.has_value());
        CHECK(sol.pair->field.is_zero());
        CHECK(sol.unique);
    }
    SUBCASE("x^2 dy -> 2x d/dz") {
        auto sol = solve_hamiltonian(*ps, F("x^2*dy"), 3);
        REQUIRE(sol.pair.has_value());
        CHECK(sol.pair->field == V("2*x*d/dz"));
        CHECK(sol.unique);
    }
}

TEST_CASE("solver output always re-verifies the pair property") {
    auto ps = volume_r3();
    Rng rng(5150);
    int solved = 0;
    for (int i = 0; i < 40; ++i) {
        DifferentialForm alpha = random_form(rng, kXYZ, 1, 3);
        auto sol = solve_hamiltonian(*ps, alpha, 3);
        if (!sol.pair) continue;
        ++solved;
        CHECK(ext_d(sol.pair->alpha) == interior(sol.pair->field, ps->omega()));
        CHECK(sol.unique);  // volume form: trivial homogeneous kernel
    }
    CHECK(solved > 30);  // on the volume form nearly every 1-form is Hamiltonian
}

TEST_CASE("verified pair factory rejects wrong fields") {
    auto ps = volume_r3();
    CHECK_THROWS_AS(make_verified_pair(*ps, F("x*dy"), V("d/dx")), InputError);
    CHECK_NOTHROW(make_verified_pair(*ps, F("x*dy"), V("d/dz")));
    CHECK_THROWS_AS(make_verified_pair(*ps, F("dx^dy"), V("d/dz")), InputError);
}

TEST_CASE("l2 bracket fixtures") {
    auto ps = volume_r3();
    HamiltonianPair a = make_verified_pair(*ps, F("x*dy"), V("d/dz"));
    HamiltonianPair b = make_verified_pair(*ps, F("y*dz"), V("d/dx"));
    HamiltonianPair c = make_verified_pair(*ps, F("z*dx"), V("d/dy"));

    HamiltonianPair ab = l2_bracket(*ps, a, b);
    CHECK(ab.alpha == F("-dy"));
    CHECK(ab.field.is_zero());

    HamiltonianPair aa = l2_bracket(*ps, a, a);
    CHECK(aa.alpha.is_zero());
    CHECK(aa.field.is_zero());

    HamiltonianPair closed = make_verified_pair(*ps, F("dx"), VectorField(kXYZ));
    CHECK(l2_bracket(*ps, a, closed).alpha.is_zero());

    CHECK(l3_triple(*ps, a, b, c) == Polynomial::constant(3, Rational(1)));
    CHECK(l3_triple(*ps, a, a, b).is_zero());
    CHECK(l3_triple(*ps, a, b, closed).is_zero());
}

TEST_CASE("l2 and l3 are antisymmetric on random pairs") {
    auto ps = volume_r3();
    HamiltonianPairGenerator gen(ps, 3, {});
    Rng rng(33);
    for (int i = 0; i < 20; ++i) {
        HamiltonianPair a = gen(rng);
        HamiltonianPair b = gen(rng);
        HamiltonianPair c = gen(rng);
        HamiltonianPair ab = l2_bracket(*ps, a, b);
        HamiltonianPair ba = l2_bracket(*ps, b, a);
        CHECK(ab.alpha == -ba.alpha);
        CHECK(ab.field == -ba.field);
        CHECK(ab.field == vf_bracket(a.field, b.field));
        CHECK(l3_triple(*ps, a, b, c) == -l3_triple(*ps, b, a, c));
        CHECK(l3_triple(*ps, a, b, c) == -l3_triple(*ps, a, c, b));
    }
}

TEST_CASE("ham_element wraps the solver") {
    auto ps = volume_r3();
    CHECK(ham_element(*ps, F("x*dy"), 3).field == V("d/dz"));
    CHECK(ham_element(*ps, F("dx"), 3).field.is_zero());
    CHECK(ham_element(*ps, F("y*dz"), 3).field == V("d/dx"));
}

}  // TEST_SUITE
