#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "plectic/lie2.hpp"

namespace plectic {

struct SuiteResult {
    std::string suite;
    std::vector<lie2::EquationResult> equations;
};

/**
 * @brief Deterministic verification report.
 *
 * The machine format carries no timing so that two runs with the same seed
 * and scenario are byte-identical; the human format appends elapsed time.
 */
struct Report {
    std::string scenario;
    uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    double elapsed_seconds = 0.0;

    bool any_fail() const {
        for (const auto& s : suites)
            for (const auto& e : s.equations)
                if (e.status == lie2::Status::fail) return true;
        return false;
    }

    bool any_inconclusive() const {
        for (const auto& s : suites)
            for (const auto& e : s.equations)
                if (e.status == lie2::Status::inconclusive) return true;
        return false;
    }

    /// 0 all pass; 1 any fail; 3 no failures but inconclusive results present.
    int exit_code() const {
        if (any_fail()) return 1;
        if (any_inconclusive()) return 3;
        return 0;
    }

    std::string to_text() const {
        std::string out;
        out += "scenario: " + scenario + "\n";
        out += "seed: " + std::to_string(seed) + "\n";
        for (const auto& s : suites) {
            out += "suite " + s.suite + "\n";
            for (const auto& e : s.equations) {
                out += "  [" + lie2::status_name(e.status) + "] " + e.id + ": " + e.statement +
                       " (samples " + std::to_string(e.samples) + ")\n";
                if (!e.witness.empty()) out += "    witness: " + e.witness + "\n";
                if (!e.reason.empty()) out += "    reason: " + e.reason + "\n";
            }
        }
        out += "elapsed: " + std::to_string(elapsed_seconds) + " s\n";
        return out;
    }

    std::string to_machine() const {
        nlohmann::json j;
        j["format"] = "plectic-verify/1";
        j["scenario"] = scenario;
        j["seed"] = seed;
        j["suites"] = nlohmann::json::array();
        for (const auto& s : suites) {
            nlohmann::json js;
            js["suite"] = s.suite;
            js["equations"] = nlohmann::json::array();
            for (const auto& e : s.equations) {
                nlohmann::json je;
                je["id"] = e.id;
                je["statement"] = e.statement;
                je["status"] = lie2::status_name(e.status);
                je["samples"] = e.samples;
                je["witness"] = e.witness;
                je["reason"] = e.reason;
                js["equations"].push_back(je);
            }
            j["suites"].push_back(js);
        }
        return j.dump(2) + "\n";
    }
};

}  // namespace plectic
