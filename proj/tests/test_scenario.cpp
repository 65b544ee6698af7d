#include <string>

#include "doctest.h"
#include "plectic/scenario.hpp"
#include "plectic/suites.hpp"

using namespace plectic;

namespace {

const std::string kVolumeText = R"(# comment line
name: t_volume
base_vars: x y z
omega: dx^dy^dz
chi: x*dy^dz
hamiltonian_forms: x*dy ; y*dz
degree_bound: 3
samples: 8
seed: 7
nondeg_points: (0,0,0)
)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("scenario text parses into validated data") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    CHECK(sc.name == "t_volume");
    CHECK(sc.base.dim() == 3);
    CHECK(sc.fiber_vars.empty());
    CHECK(sc.omega.degree() == 3);
    REQUIRE(sc.chi.has_value());
    CHECK(sc.hamiltonian_forms.size() == 2);
    CHECK(sc.samples == 8);
    CHECK(sc.seed == 7);
    CHECK(sc.nondeg_points.size() == 1);
    REQUIRE(sc.effective_theta().has_value());  // chi in reduced mode
}

TEST_CASE("bundled scenario files load") {
    Scenario volume = parse_scenario(std::string(SCENARIO_DIR) + "/r3_volume.scn");
    CHECK(volume.name == "r3_volume");
    CHECK(volume.fixtures.size() == 2);
    Scenario gerbe = parse_scenario(std::string(SCENARIO_DIR) + "/r3xr_gerbe.scn");
    CHECK(gerbe.fiber_vars == std::vector<std::string>{"u"});
    REQUIRE(gerbe.theta.has_value());
    Scenario gerbe2 = parse_scenario(std::string(SCENARIO_DIR) + "/r3xr2_gerbe.scn");
    CHECK(gerbe2.fiber_vars.size() == 2);
}

TEST_CASE("load errors carry positions and name the failed identity") {
    CHECK_THROWS_AS(parse_scenario_text("name x\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_scenario_text("name: a\nbase_vars: x y z\n", "t"), ParseError);

    // d chi != omega names the residual
    std::string bad_chi = "name: a\nbase_vars: x y z\nomega: dx^dy^dz\nchi: y*dx^dz\n";
    CHECK_THROWS_WITH_AS(parse_scenario_text(bad_chi, "t"), doctest::Contains("d chi != omega"),
                         ParseError);
    try {
        parse_scenario_text(bad_chi, "t");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }

    std::string bad_theta =
        "name: a\nbase_vars: x y z\nfiber_vars: u\nomega: dx^dy^dz\ntheta: du^dx\n";
    CHECK_THROWS_WITH_AS(parse_scenario_text(bad_theta, "t"),
                         doctest::Contains("d theta != pullback omega"), ParseError);

    std::string not_closed = "name: a\nbase_vars: x y z w\nomega: w*dx^dy^dz\n";
    CHECK_THROWS_WITH_AS(parse_scenario_text(not_closed, "t"), doctest::Contains("d omega != 0"),
                         ParseError);

    std::string unknown = kVolumeText + "mystery: 1\n";
    CHECK_THROWS_WITH_AS(parse_scenario_text(unknown, "t"), doctest::Contains("unknown key"),
                         ParseError);

    std::string bad_expr = "name: a\nbase_vars: x y z\nomega: dx^dq^dz\n";
    CHECK_THROWS_AS(parse_scenario_text(bad_expr, "t"), ParseError);
}

TEST_CASE("directly supplied pairs are verified, not solved") {
    std::string with_pairs =
        "name: a\nbase_vars: x y z\nomega: dx^dy^dz\nchi: x*dy^dz\n"
        "hamiltonian_pairs: x*dy | d/dz ; x^2*dy | 2*x*d/dz\nsamples: 5\n";
    Scenario sc = parse_scenario_text(with_pairs, "inline");
    CHECK(sc.hamiltonian_pairs.size() == 2);
    Report report = run_suite(sc, "observables-axioms");
    CHECK_FALSE(report.any_fail());

    // a wrong field is rejected at suite setup, exactly
    std::string bad_pair =
        "name: a\nbase_vars: x y z\nomega: dx^dy^dz\n"
        "hamiltonian_pairs: x*dy | d/dx\nsamples: 5\n";
    Scenario sc2 = parse_scenario_text(bad_pair, "inline");
    CHECK_THROWS_AS(run_suite(sc2, "observables-axioms"), InputError);
}

TEST_CASE("the full suite passes on the inline volume scenario") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    RunOptions opt;
    opt.samples = 6;
    Report report = run_suite(sc, "all", opt);
    CHECK(report.suites.size() == 5);
    INFO(report.to_text());
    CHECK_FALSE(report.any_fail());
    CHECK(report.exit_code() == 0);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    RunOptions opt;
    opt.samples = 5;
    opt.seed = 123;
    std::string a = run_suite(sc, "all", opt).to_machine();
    std::string b = run_suite(sc, "all", opt).to_machine();
    CHECK(a == b);
    opt.seed = 124;
    // a different seed reaches different witnesses/tuples but still passes
    Report r2 = run_suite(sc, "all", opt);
    CHECK_FALSE(r2.any_fail());
}

TEST_CASE("zero samples yield inconclusive results, exit code 3") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    RunOptions opt;
    opt.samples = 0;
    Report report = run_suite(sc, "observables-axioms", opt);
    CHECK_FALSE(report.any_fail());
    CHECK(report.any_inconclusive());
    CHECK(report.exit_code() == 3);
}

TEST_CASE("suites that lack scenario data are inconclusive, not failed") {
    std::string no_chi = "name: a\nbase_vars: x y z\nomega: dx^dy^dz\nsamples: 3\n";
    Scenario sc = parse_scenario_text(no_chi, "inline");
    Report report = run_suite(sc, "prequant-morphism");
    REQUIRE(report.suites.size() == 1);
    CHECK(report.suites[0].equations.size() == 1);
    CHECK(report.suites[0].equations[0].status == lie2::Status::inconclusive);
    CHECK(report.exit_code() == 3);
    Report report2 = run_suite(sc, "crossed-module");
    CHECK(report2.exit_code() == 3);
}

TEST_CASE("unknown suite or perturbation is rejected") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    CHECK_THROWS_AS(run_suite(sc, "nonsense"), InputError);
    RunOptions opt;
    opt.perturb = "mystery-knob";
    CHECK_THROWS_AS(run_suite(sc, "all", opt), InputError);
}

TEST_CASE("perturbations make the owning suite fail") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    RunOptions opt;
    opt.samples = 8;

    opt.perturb = "l3-scale-2";
    Report r1 = run_suite(sc, "observables-axioms", opt);
    CHECK(r1.any_fail());
    CHECK(r1.exit_code() == 1);

    opt.perturb = "phi2-drop-pairing";
    Report r2 = run_suite(sc, "prequant-morphism", opt);
    CHECK(r2.any_fail());

    opt.perturb = "phi2-drop-chi";
    Report r3 = run_suite(sc, "prequant-morphism", opt);
    CHECK(r3.any_fail());

    // an unperturbed run of the same suites stays green
    opt.perturb.clear();
    CHECK_FALSE(run_suite(sc, "observables-axioms", opt).any_fail());
    CHECK_FALSE(run_suite(sc, "prequant-morphism", opt).any_fail());
}

TEST_CASE("machine format is stable json with fixed key order") {
    Scenario sc = parse_scenario_text(kVolumeText, "inline");
    RunOptions opt;
    opt.samples = 2;
    std::string js = run_suite(sc, "exterior-laws", opt).to_machine();
    CHECK(js.find("\"format\": \"plectic-verify/1\"") != std::string::npos);
    CHECK(js.find("\"scenario\": \"t_volume\"") != std::string::npos);
    CHECK(js.find("elapsed") == std::string::npos);  // timing never enters machine output
}

}  // TEST_SUITE
