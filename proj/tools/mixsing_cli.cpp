// mixsing: command-line front end.
//
//   mixsing analyze fixtures/Fk2.json
//   mixsing analyze --expr "x*y*conj(x)"
//   mixsing analyze --pair "x" "x+y^2"
//   mixsing wirtinger "x*y*x~"
//   mixsing polar "conj(x)*y*(x+z^2)"
//   mixsing disc --pair "x^2" "y^3"
//   mixsing thom-probe "conj(x)*y*(x+z^2)" --stratum "0,1,0:0,1,0" --curves "t,1,0"
//   mixsing milnor-scan "x*y*conj(x)" --radii 0.2,0.1 --samples 50
//   mixsing shear --pair "x" "x+y^2"
//
// Exit codes: 0 report produced, 2 parse error, 3 internal degeneracy.

#include "mixsing/mixsing.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace mixsing;
using report::Json;

namespace {

struct Common {
    std::string expr;
    std::vector<std::string> pair;
    std::string vars;
    std::vector<std::string> strata;
    std::string curves;
    std::string output;
};

struct Failure {
    int code;
    Json body;
};

std::vector<std::string> variables_for(const Common& c, const std::vector<std::string>& texts) {
    if (!c.vars.empty()) return split(c.vars, ',');
    return infer_variables(texts);
}

AnalysisRequest request_from_flags(const Common& c) {
    AnalysisRequest r;
    if (!c.pair.empty()) {
        r.pair = std::pair{c.pair.at(0), c.pair.at(1)};
        r.variables = variables_for(c, c.pair);
        r.expression = "(" + c.pair[0] + ")*conj(" + c.pair[1] + ")";
        r.name = "pair";
    } else if (!c.expr.empty()) {
        r.variables = variables_for(c, {c.expr});
        r.expression = c.expr;
        r.name = "expression";
    } else {
        throw ParseError(0, "no input: give a fixture, --expr, or --pair");
    }
    return r;
}

void add_strata(AnalysisRequest& r, const Common& c) {
    const std::size_t n = r.variables.size();
    std::vector<CurveGerm> curves;
    if (!c.curves.empty())
        for (const auto& s : split(c.curves, ';')) curves.push_back(parse_curve_text(s, n));
    for (std::size_t k = 0; k < c.strata.size(); ++k)
        r.strata.push_back({"cli-" + std::to_string(k), parse_stratum_text(c.strata[k], n), curves});
}

std::vector<double> parse_radii(const std::string& s) {
    std::vector<double> out;
    for (const auto& x : split(s, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(x, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != x.size() || x.empty()) throw ParseError(0, "bad radius '" + x + "'");
        out.push_back(v);
    }
    return out;
}

int emit(const Json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 3;
        }
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixsing: mixed polynomial singularity analyzer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", report::kToolVersion);

    Common c;
    AnalyzeOptions opt;
    std::string fixture;
    std::string radii;
    std::string lambda = "1";

    auto add_input = [&](CLI::App* s, bool positional_expr) {
        if (positional_expr) s->add_option("expression", c.expr, "mixed polynomial, e.g. \"x*y*conj(x)\"");
        s->add_option("--expr", c.expr, "mixed polynomial");
        s->add_option("--pair", c.pair, "holomorphic pair f g, analyzed as f*conj(g)")->expected(2);
        s->add_option("--vars", c.vars, "comma-separated variable names (default: inferred, sorted)");
        s->add_option("-o,--output", c.output, "write the report to a file");
    };
    auto add_probe = [&](CLI::App* s) {
        s->add_option("--stratum", c.strata, "POINT[:LINE...], e.g. \"0,1,0:0,1,0\" (repeatable)");
        s->add_option("--curves", c.curves, "curves separated by ';', components by ','");
        s->add_option("--shells", opt.verdict.probe.shells, "number of shells t_j = t0*rho^j");
        s->add_option("--t0", opt.verdict.probe.t0);
        s->add_option("--rho", opt.verdict.probe.rho);
        s->add_option("--convergence-tol", opt.verdict.probe.convergence_tol);
        s->add_option("--rank-tol", opt.verdict.probe.rank_tol);
        s->add_option("--fail-tol", opt.verdict.probe.fail_tol);
        s->add_option("--compatible-tol", opt.verdict.probe.compatible_tol);
    };
    auto add_scan = [&](CLI::App* s) {
        s->add_option("--radii", radii, "decreasing shell radii, e.g. 0.2,0.1,0.05,0.025");
        s->add_option("--samples", opt.scan.samples_per_shell, "random seeds per shell");
        s->add_option("--residual-tol", opt.scan.residual_tol);
        s->add_option("--min-abs-value", opt.scan.min_abs_value);
        s->add_option("--max-evals", opt.scan.max_evals);
        s->add_option("--support-c", opt.scan.support_c);
    };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", opt.verdict.seed, "random seed"); };

    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline and final verdict");
    analyze_cmd->add_option("fixture", fixture, "fixture file (JSON)");
    add_input(analyze_cmd, false);
    add_probe(analyze_cmd);
    add_scan(analyze_cmd);
    add_seed(analyze_cmd);
    analyze_cmd->add_option("--k-bound", opt.k_bound, "largest shear exponent tried");
    analyze_cmd->add_flag("--assert-icis", opt.verdict.assert_icis, "assert (f,g) is an ICIS / Thom regular");
    analyze_cmd->add_option("--polar-bound", opt.verdict.polar.bound, "weight search bound on sum |p_j|");
    bool no_milnor = false;
    analyze_cmd->add_flag("--no-milnor", no_milnor, "skip the Milnor-set sampling");

    auto* wirt_cmd = app.add_subcommand("wirtinger", "Wirtinger derivatives dF and dbarF");
    add_input(wirt_cmd, true);

    auto* polar_cmd = app.add_subcommand("polar", "polar weighted-homogeneity");
    add_input(polar_cmd, true);
    polar_cmd->add_option("--polar-bound", opt.verdict.polar.bound);
    polar_cmd->add_flag("--allow-zero-k", opt.verdict.polar.allow_zero_k);

    auto* disc_cmd = app.add_subcommand("disc", "discriminant and isolated critical value of a pair");
    add_input(disc_cmd, false);
    std::vector<std::string> branches;
    disc_cmd->add_option("--branch", branches, "\"u = t^p; v = ...\" (repeatable, n >= 3)");

    auto* thom_cmd = app.add_subcommand("thom-probe", "limits of normal planes against a stratum");
    add_input(thom_cmd, true);
    add_probe(thom_cmd);
    add_seed(thom_cmd);

    auto* milnor_cmd = app.add_subcommand("milnor-scan", "Milnor-set and singular-point sampling");
    add_input(milnor_cmd, true);
    add_scan(milnor_cmd);
    add_seed(milnor_cmd);

    auto* shear_cmd = app.add_subcommand("shear", "axis shear (f + lambda g^k, g) search");
    add_input(shear_cmd, false);
    shear_cmd->add_option("--k-bound", opt.k_bound);
    shear_cmd->add_option("--lambda", lambda, "complex-rational shear coefficient");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        emit(report::error("usage", e.what()), "");
        return 2;
    }

    try {
        opt.scan.seed = opt.verdict.seed;
        opt.milnor = !no_milnor;
        if (!radii.empty()) opt.scan.radii = parse_radii(radii);

        if (analyze_cmd->parsed()) {
            AnalysisRequest req;
            if (!fixture.empty()) {
                req = request_from_fixture(load_fixture_file(fixture));
                opt.verdict.assert_icis = opt.verdict.assert_icis || load_fixture_file(fixture).assert_icis;
            } else {
                req = request_from_flags(c);
            }
            add_strata(req, c);
            return emit(analyze(req, opt), c.output);
        }

        AnalysisRequest req = request_from_flags(c);
        ParsedInput in = parse_input(req.variables, req.expression, req.pair);
        const auto& names = req.variables;
        const auto& F = in.input.F;

        Json out;
        if (wirt_cmd->parsed()) {
            out = report::header("wirtinger");
            out["variables"] = names;
            out["expression"] = format(F, names);
            out["wirtinger"] = report::wirtinger_json(F, names);
        } else if (polar_cmd->parsed()) {
            out = report::header("polar");
            out["variables"] = names;
            out["expression"] = format(F, names);
            out["polar"] = report::polar_json(solve_polar(F, opt.verdict.polar));
        } else if (disc_cmd->parsed() || shear_cmd->parsed()) {
            if (!in.input.pair) throw ParseError(0, "this command needs --pair f g");
            const auto& [f, g] = *in.input.pair;
            for (const auto& b : branches) opt.verdict.disc.branches.push_back(parse_branch(b));
            out = report::header(disc_cmd->parsed() ? "disc" : "shear");
            out["variables"] = names;
            out["pair"] = Json{{"f", format(f, names)}, {"g", format(g, names)}};
            if (disc_cmd->parsed()) {
                if (f.n_vars() == 2) {
                    out["jacobian"] = format(jacobian_det(f, g), names);
                    out["curve"] = report::curve_json(discriminant_curve(f, g, opt.verdict.disc));
                }
                out["isolated"] = report::isolated_json(isolated_value_verdict(f, g, opt.verdict.disc));
                out["sing_decomposition"] = report::sing_json(sing_decomposition(f, g, opt.verdict.disc.budget), names);
            } else {
                const ComplexRational lam = parse_constant(lambda);
                out["lambda"] = lam.to_string();
                out["shear"] = report::shear_json(shear_search(f, g, lam, opt.k_bound, opt.verdict.disc), names);
            }
        } else if (thom_cmd->parsed()) {
            add_strata(req, c);
            if (req.strata.empty()) throw ParseError(0, "thom-probe needs at least one --stratum");
            out = report::header("thom-probe");
            out["variables"] = names;
            out["expression"] = format(F, names);
            out["probe_options"] = report::probe_options_json(opt.verdict.probe);
            out["seed"] = opt.verdict.seed;
            Json probes = Json::array();
            for (std::size_t k = 0; k < req.strata.size(); ++k) {
                const auto& sp = req.strata[k];
                const auto curves = sp.curves.empty() ? default_curve_battery(sp.stratum, opt.verdict.seed + k) : sp.curves;
                probes.push_back(Json{{"label", sp.label},
                                      {"stratum", report::stratum_json(sp.stratum)},
                                      {"result", report::probe_json(thom_test(F, sp.stratum, curves, opt.verdict.probe), curves)}});
            }
            out["probes"] = std::move(probes);
        } else if (milnor_cmd->parsed()) {
            out = report::header("milnor-scan");
            out["variables"] = names;
            out["expression"] = format(F, names);
            out["scan"] = report::scan_options_json(opt.scan);
            out["milnor_scan"] = report::scan_json(milnor_scan(F, opt.scan));
            out["sing_scan"] = report::scan_json(sing_scan(F, opt.scan));
        }
        return emit(out, c.output);
    } catch (const ParseError& e) {
        emit(report::error("parse", e.message(), e.position()), "");
        return 2;
    } catch (const FixtureError& e) {
        emit(report::error("fixture", e.what()), "");
        return 2;
    } catch (const std::exception& e) {
        emit(report::error("degenerate", e.what()), "");
        return 3;
    }
}
