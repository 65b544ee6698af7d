#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "plectic/errors.hpp"
#include "plectic/exterior.hpp"
#include "plectic/plectic.hpp"
#include "plectic/text.hpp"

namespace plectic {

/// One named fixture element, kept as validated payloads of the right kind.
struct Fixture {
    std::string kind;  // "function", "form" or "field"
    std::string source;
};

/**
 * @brief A coordinate-chart verification scenario.
 *
 * Scenario files are line-oriented `key: value` text; lists are separated by
 * ';'. All expressions use the polynomial/form grammars. The consistency
 * identities d(omega) = 0, d(chi) = omega and d(theta) = pullback(omega) are
 * checked exactly at load time.
 */
struct Scenario {
    std::string name;
    Chart base{std::vector<std::string>{"x"}};
    std::vector<std::string> fiber_vars;
    DifferentialForm omega{Chart{std::vector<std::string>{"x"}}, 3};
    std::optional<DifferentialForm> chi;    // on the base chart
    std::optional<DifferentialForm> theta;  // on the total chart
    std::vector<DifferentialForm> hamiltonian_forms;
    std::vector<std::pair<DifferentialForm, VectorField>> hamiltonian_pairs;
    std::map<std::string, Fixture> fixtures;
    unsigned degree_bound = 3;
    int samples = 50;
    uint64_t seed = 42;
    std::vector<std::vector<Rational>> nondeg_points;

    Chart total() const {
        std::vector<std::string> names = base.vars;
        names.insert(names.end(), fiber_vars.begin(), fiber_vars.end());
        return Chart(names);
    }

    /// theta for the surrogate bundle: the explicit theta, or chi in the
    /// reduced fiber-dimension-0 mode.
    std::optional<DifferentialForm> effective_theta() const {
        if (theta) return theta;
        if (chi && fiber_vars.empty()) return chi;
        return std::nullopt;
    }
};

namespace detail_scenario {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
    return out;
}

inline std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

}  // namespace detail_scenario

inline Scenario parse_scenario_text(const std::string& contents, const std::string& display_name) {
    using detail_scenario::split_list;
    using detail_scenario::split_words;
    using detail_scenario::trim;

    std::map<std::string, std::pair<std::string, int>> keys;  // key -> (value, line)
    {
        std::istringstream in(contents);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            size_t colon = t.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected 'key: value'", lineno, 1);
            std::string key = trim(t.substr(0, colon));
            std::string value = trim(t.substr(colon + 1));
            if (key.empty()) throw ParseError("empty key", lineno, 1);
            if (keys.count(key)) throw ParseError("duplicate key '" + key + "'", lineno, 1);
            keys[key] = {value, lineno};
        }
    }

    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = keys.find(key);
        if (it == keys.end()) return std::nullopt;
        auto v = it->second;
        keys.erase(it);
        return v;
    };
    auto require = [&](const std::string& key) {
        auto v = take(key);
        if (!v) throw ParseError("missing required key '" + key + "'", 1, 1);
        return *v;
    };
    auto rethrow_at = [](const ParseError& e, int line) -> void {
        throw ParseError(std::string(e.what()), line, e.column());
    };

    Scenario sc;
    sc.name = require("name").first;
    if (sc.name.empty()) throw ParseError("scenario name is empty", 1, 1);

    auto [base_text, base_line] = require("base_vars");
    auto base_names = split_words(base_text);
    if (base_names.empty()) throw ParseError("base_vars is empty", base_line, 1);
    sc.base = Chart(base_names);

    if (auto fv = take("fiber_vars")) sc.fiber_vars = split_words(fv->first);
    Chart total = sc.total();

    auto [omega_text, omega_line] = require("omega");
    try {
        sc.omega = text::parse_form(omega_text, sc.base, 3);
    } catch (const ParseError& e) {
        rethrow_at(e, omega_line);
    }
    if (!ext_d(sc.omega).is_zero())
        throw ParseError("d omega != 0; residual " + ext_d(sc.omega).to_string(), omega_line, 1);

    if (auto chi = take("chi")) {
        DifferentialForm c(sc.base, 2);
        try {
            c = text::parse_form(chi->first, sc.base, 2);
        } catch (const ParseError& e) {
            rethrow_at(e, chi->second);
        }
        DifferentialForm residual = ext_d(c) - sc.omega;
        if (!residual.is_zero())
            throw ParseError("d chi != omega; residual " + residual.to_string(), chi->second, 1);
        sc.chi = c;
    }

    if (auto th = take("theta")) {
        DifferentialForm t(total, 2);
        try {
            t = text::parse_form(th->first, total, 2);
        } catch (const ParseError& e) {
            rethrow_at(e, th->second);
        }
        std::vector<unsigned> id_map(sc.base.dim());
        for (unsigned i = 0; i < sc.base.dim(); ++i) id_map[i] = i;
        DifferentialForm residual = ext_d(t) - pullback_projection(sc.omega, total, id_map);
        if (!residual.is_zero())
            throw ParseError("d theta != pullback omega; residual " + residual.to_string(),
                             th->second, 1);
        sc.theta = t;
    }

    if (auto hf = take("hamiltonian_forms")) {
        for (const auto& item : split_list(hf->first)) {
            try {
                sc.hamiltonian_forms.push_back(text::parse_form(item, sc.base, 1));
            } catch (const ParseError& e) {
                rethrow_at(e, hf->second);
            }
        }
    }

    if (auto hp = take("hamiltonian_pairs")) {
        for (const auto& item : split_list(hp->first)) {
            size_t bar = item.find('|');
            if (bar == std::string::npos)
                throw ParseError("hamiltonian_pairs entries are 'form | field'", hp->second, 1);
            try {
                DifferentialForm alpha = text::parse_form(trim(item.substr(0, bar)), sc.base, 1);
                VectorField x = text::parse_field(trim(item.substr(bar + 1)), sc.base);
                sc.hamiltonian_pairs.emplace_back(std::move(alpha), std::move(x));
            } catch (const ParseError& e) {
                rethrow_at(e, hp->second);
            }
        }
    }

    if (auto fx = take("fixtures")) {
        for (const auto& item : split_list(fx->first)) {
            size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw ParseError("fixtures entries are 'name = kind expression'", fx->second, 1);
            std::string fname = trim(item.substr(0, eq));
            std::string rest = trim(item.substr(eq + 1));
            size_t sp = rest.find(' ');
            if (fname.empty() || sp == std::string::npos)
                throw ParseError("fixtures entries are 'name = kind expression'", fx->second, 1);
            Fixture f{trim(rest.substr(0, sp)), trim(rest.substr(sp + 1))};
            try {
                if (f.kind == "function") {
                    text::parse_polynomial(f.source, total);
                } else if (f.kind == "form") {
                    text::parse_form(f.source, total);
                } else if (f.kind == "field") {
                    text::parse_field(f.source, total);
                } else {
                    throw ParseError("unknown fixture kind '" + f.kind + "'", fx->second, 1);
                }
            } catch (const ParseError& e) {
                rethrow_at(e, fx->second);
            }
            sc.fixtures[fname] = f;
        }
    }

    if (auto db = take("degree_bound"))
        sc.degree_bound = static_cast<unsigned>(std::stoul(db->first));
    if (auto sm = take("samples")) sc.samples = std::stoi(sm->first);
    if (auto sd = take("seed")) sc.seed = std::stoull(sd->first);

    if (auto np = take("nondeg_points")) {
        for (const auto& item : split_list(np->first)) {
            try {
                sc.nondeg_points.push_back(text::parse_point(item, sc.base.dim()));
            } catch (const ParseError& e) {
                rethrow_at(e, np->second);
            }
        }
    }
    if (sc.nondeg_points.empty())
        sc.nondeg_points.push_back(std::vector<Rational>(sc.base.dim(), Rational(0)));

    if (!keys.empty()) {
        const auto& [key, val] = *keys.begin();
        throw ParseError("unknown key '" + key + "'", val.second, 1);
    }
    (void)display_name;
    return sc;
}

inline Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

}  // namespace plectic
