/*
 * fixtures.hpp
 * ------------
 * Fixture documents (JSON) and the small textual forms shared with the CLI:
 *
 *   {
 *     "name": "Fk2",
 *     "variables": ["x", "y", "z"],
 *     "pair": {"f": "y*(x+z^2)", "g": "x"},      or  "expression": "..."
 *     "assert_icis": false,
 *     "branches": ["u = t; v = t"],              optional, n >= 3 pairs
 *     "strata": [{"label": "y-axis", "point": "0,1,0", "lines": ["0,1,0"],
 *                 "curves": ["t,1,0"]}],         curves omitted: default battery
 *     "expected": {...}                          free-form, checked by tests
 *   }
 */
#pragma once

#include "discgeom.hpp"
#include "milnorprobe.hpp"
#include "parser.hpp"
#include "thomprobe.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace mixsing {

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Identifiers used in the expressions, minus `i` and `conj`, sorted.
inline std::vector<std::string> infer_variables(const std::vector<std::string>& texts) {
    std::set<std::string> names;
    for (const auto& s : texts) {
        for (std::size_t k = 0; k < s.size();) {
            if (detail::is_ident_start(s[k])) {
                std::size_t e = k;
                while (e < s.size() && detail::is_ident_char(s[e])) ++e;
                std::string id = s.substr(k, e - k);
                if (id != "i" && id != "conj") names.insert(id);
                k = e;
            } else {
                ++k;
            }
        }
    }
    if (names.empty()) names.insert("x");
    return {names.begin(), names.end()};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream ss(s);
    while (std::getline(ss, piece, sep)) out.push_back(piece);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline ComplexRational parse_constant(const std::string& text) {
    const auto p = parse_real_parameter_polynomial(text, "t");
    for (const auto& [e, c] : p)
        if (e != 0) throw ParseError(0, "expected a constant, got '" + text + "'");
    return p.empty() ? ComplexRational(0) : p.begin()->second;
}

/// "a,b,c" with complex-rational entries.
inline ComplexPoint parse_point(const std::string& text, std::size_t n) {
    ComplexPoint z;
    for (const auto& s : split(text, ',')) z.push_back(parse_constant(s).to_complex());
    if (z.size() != n)
        throw ParseError(0, "point '" + text + "' has " + std::to_string(z.size()) + " coordinates, expected " +
                                std::to_string(n));
    return z;
}

inline CurveGerm parse_curve_text(const std::string& text, std::size_t n) {
    auto parts = split(text, ',');
    if (parts.size() != n)
        throw ParseError(0, "curve '" + text + "' has " + std::to_string(parts.size()) + " components, expected " +
                                std::to_string(n));
    return parse_curve(parts);
}

/// Stratum as a base point plus complex line directions (each contributes v and i·v).
inline Stratum make_stratum(const ComplexPoint& point, const std::vector<ComplexPoint>& lines) {
    Stratum s{point, {}};
    for (const auto& d : lines) {
        ComplexVector iv(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) iv[j] = Complex(0.0, 1.0) * d[j];
        s.tangent.push_back(d);
        s.tangent.push_back(iv);
    }
    s.validate();
    return s;
}

/// CLI form "POINT[:LINE[:LINE...]]", e.g. "0,0,1:0,0,1".
inline Stratum parse_stratum_text(const std::string& text, std::size_t n) {
    const auto parts = split(text, ':');
    if (parts.empty()) throw ParseError(0, "empty stratum");
    std::vector<ComplexPoint> lines;
    for (std::size_t k = 1; k < parts.size(); ++k) lines.push_back(parse_point(parts[k], n));
    return make_stratum(parse_point(parts[0], n), lines);
}

struct Fixture {
    std::string name;
    std::vector<std::string> variables;
    std::string expression;                                 // mixed form, always filled
    std::optional<std::pair<std::string, std::string>> pair;  // holomorphic sources
    bool assert_icis = false;
    std::vector<std::string> branches;
    std::vector<StratumProbe> strata;
    nlohmann::ordered_json expected;
};

struct ParsedInput {
    std::vector<std::string> variables;
    VerdictInput input;
    std::vector<std::string> branch_text;
};

inline ParsedInput parse_input(const std::vector<std::string>& variables, const std::string& expression,
                               const std::optional<std::pair<std::string, std::string>>& pair) {
    ParsedInput out;
    out.variables = variables;
    if (pair) {
        auto f = parse_holomorphic(pair->first, variables);
        auto g = parse_holomorphic(pair->second, variables);
        out.input.F = from_pair(f, g);
        out.input.pair = HolomorphicPair{std::move(f), std::move(g)};
    } else {
        out.input.F = parse_mixed(expression, variables);
    }
    return out;
}

inline Fixture load_fixture(const nlohmann::ordered_json& j) {
    Fixture fx;
    try {
        fx.name = j.at("name").get<std::string>();
        fx.variables = j.at("variables").get<std::vector<std::string>>();
        if (j.contains("pair")) {
            fx.pair = std::pair{j["pair"].at("f").get<std::string>(), j["pair"].at("g").get<std::string>()};
            fx.expression = "(" + fx.pair->first + ")*conj(" + fx.pair->second + ")";
        } else {
            fx.expression = j.at("expression").get<std::string>();
        }
        fx.assert_icis = j.value("assert_icis", false);
        if (j.contains("branches")) fx.branches = j["branches"].get<std::vector<std::string>>();
        const std::size_t n = fx.variables.size();
        if (j.contains("strata")) {
            for (const auto& s : j["strata"]) {
                StratumProbe sp;
                sp.label = s.value("label", "stratum");
                std::vector<ComplexPoint> lines;
                if (s.contains("lines"))
                    for (const auto& l : s["lines"]) lines.push_back(parse_point(l.get<std::string>(), n));
                sp.stratum = make_stratum(parse_point(s.at("point").get<std::string>(), n), lines);
                if (s.contains("curves"))
                    for (const auto& c : s["curves"]) sp.curves.push_back(parse_curve_text(c.get<std::string>(), n));
                fx.strata.push_back(std::move(sp));
            }
        }
        fx.expected = j.value("expected", nlohmann::ordered_json::object());
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError(std::string("malformed fixture: ") + e.what());
    }
    return fx;
}

inline Fixture load_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture " + path);
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FixtureError("fixture " + path + " is not valid JSON: " + e.what());
    }
    return load_fixture(j);
}

}  // namespace mixsing
