/*
 * analysis.hpp
 * ------------
 * The full pipeline behind `mixsing analyze`:
 * parse -> polar -> discriminant (pairs) -> Thom probes -> Milnor evidence -> verdict.
 */
#pragma once

#include "fixtures.hpp"
#include "report.hpp"

namespace mixsing {

struct AnalyzeOptions {
    VerdictOptions verdict{};
    ScanOptions scan{};
    unsigned k_bound = 8;
    bool milnor = true;
};

struct AnalysisRequest {
    std::string name;
    std::vector<std::string> variables;
    std::string expression;
    std::optional<std::pair<std::string, std::string>> pair;
    std::vector<std::string> branches;
    std::vector<StratumProbe> strata;
};

inline AnalysisRequest request_from_fixture(const Fixture& fx) {
    return {fx.name, fx.variables, fx.expression, fx.pair, fx.branches, fx.strata};
}

inline report::Json analyze(const AnalysisRequest& req, AnalyzeOptions opt = {}) {
    using report::Json;
    ParsedInput parsed = parse_input(req.variables, req.expression, req.pair);
    for (const auto& b : req.branches) opt.verdict.disc.branches.push_back(parse_branch(b));
    parsed.input.strata = req.strata;
    const auto& names = req.variables;
    const auto& F = parsed.input.F;

    Json out = report::header("analyze");
    Json echo{{"name", req.name}, {"variables", names}, {"expression", format(F, names)}, {"canonical", format(F)}};
    if (parsed.input.pair)
        echo["pair"] = Json{{"f", format(parsed.input.pair->f, names)}, {"g", format(parsed.input.pair->g, names)}};
    echo["branches"] = req.branches;
    out["input"] = std::move(echo);

    out["settings"] = Json{{"seed", opt.verdict.seed},
                           {"assert_icis", opt.verdict.assert_icis},
                           {"polar_bound", opt.verdict.polar.bound},
                           {"disc_max_degree", opt.verdict.disc.max_degree},
                           {"k_bound", opt.k_bound},
                           {"probe", report::probe_options_json(opt.verdict.probe)},
                           {"scan", opt.milnor ? report::scan_options_json(opt.scan) : Json(nullptr)}};

    out["wirtinger"] = report::wirtinger_json(F, names);

    const TubeVerdict v = tube_verdict(parsed.input, opt.verdict);

    out["polar"] = v.polar ? report::polar_json(*v.polar) : Json(nullptr);

    if (parsed.input.pair) {
        const auto& [f, g] = *parsed.input.pair;
        Json disc{{"jacobian", f.n_vars() == 2 ? Json(format(jacobian_det(f, g), names)) : Json(nullptr)},
                  {"isolated", v.isolated ? report::isolated_json(*v.isolated) : Json(nullptr)}};
        disc["sing_decomposition"] = report::sing_json(sing_decomposition(f, g, opt.verdict.disc.budget), names);
        if (v.isolated && v.isolated->status == IsolatedStatus::not_isolated) {
            try {
                disc["shear"] =
                    report::shear_json(shear_search(f, g, ComplexRational(1), opt.k_bound, opt.verdict.disc), names);
            } catch (const ShearSearchExhausted& e) {
                disc["shear"] = Json{{"error", e.what()}};
            }
        } else {
            disc["shear"] = nullptr;
        }
        out["discriminant"] = std::move(disc);
    } else {
        out["discriminant"] = nullptr;
    }

    Json probes = Json::array();
    for (const auto& p : v.probes) {
        const auto it = std::find_if(req.strata.begin(), req.strata.end(),
                                     [&](const StratumProbe& s) { return s.label == p.label; });
        Json j{{"label", p.label},
               {"stratum", it != req.strata.end() ? report::stratum_json(it->stratum) : Json(nullptr)},
               {"battery", it != req.strata.end() && it->curves.empty() ? "default" : "given"}};
        j["result"] = report::probe_json(p.result, p.curves);
        probes.push_back(std::move(j));
    }
    out["thom_probes"] = std::move(probes);

    if (opt.milnor && !F.is_constant()) {
        out["milnor"] = Json{{"milnor_scan", report::scan_json(milnor_scan(F, opt.scan))},
                             {"sing_scan", report::scan_json(sing_scan(F, opt.scan))}};
    } else {
        out["milnor"] = nullptr;
    }

    out["verdict"] = report::verdict_json(v);
    return out;
}

}  // namespace mixsing
