/**
 * @file verify.cpp
 * @brief CLI for the exact verification suites.
 *
 * verify --scenario <path> --suite <name> [--samples N] [--seed S]
 *        [--degree-bound D] [--format text|machine] [--perturb <knob>]
 *
 * Exit codes: 0 all pass; 1 any equation failed; 2 usage or parse error;
 * 3 no failures but inconclusive results present.
 */

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "plectic/scenario.hpp"
#include "plectic/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic verification of 2-plectic observable algebras, "
                 "section/symmetry crossed modules, and the prequantisation morphism"};
    app.name("verify");

    std::string scenario_path;
    std::string suite = "all";
    std::string format = "text";
    std::string perturb;
    plectic::RunOptions opt;
    int samples = -1;
    long long seed = -1;
    int degree_bound = -1;

    app.add_option("--scenario", scenario_path, "Scenario file (.scn)")->required();
    app.add_option("--suite", suite,
                   "Suite: exterior-laws, observables-axioms, crossed-module, "
                   "prequant-morphism, quasi-iso, all");
    app.add_option("--samples", samples, "Override the scenario's sample count");
    app.add_option("--seed", seed, "Override the scenario's random seed");
    app.add_option("--degree-bound", degree_bound, "Override the scenario's degree bound");
    app.add_option("--format", format, "Report format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--perturb", perturb,
                   "Deliberately break one named term to demonstrate checker sensitivity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (samples >= 0) opt.samples = samples;
    if (seed >= 0) opt.seed = static_cast<uint64_t>(seed);
    if (degree_bound >= 0) opt.degree_bound = static_cast<unsigned>(degree_bound);
    opt.perturb = perturb;

    try {
        plectic::Scenario sc = plectic::parse_scenario(scenario_path);
        plectic::Report report = plectic::run_suite(sc, suite, opt);
        if (format == "machine") {
            std::cout << report.to_machine();
        } else {
            std::cout << report.to_text();
        }
        return report.exit_code();
    } catch (const plectic::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const plectic::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
