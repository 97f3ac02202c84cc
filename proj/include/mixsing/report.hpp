/*
 * report.hpp
 * ----------
 * JSON serialization of every result type. Floating values are rounded to
 * 12 significant digits so reports are stable across reruns and compilers.
 */
#pragma once

#include "milnorprobe.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>

namespace mixsing::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";

inline Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) r = 0.0;  // drop negative zero
    return r;
}

inline Json complex(Complex c) { return Json::array({number(c.real()), number(c.imag())}); }

inline Json complex_vector(const ComplexVector& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(complex(c));
    return out;
}

inline Json real_basis(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (long c = 0; c < m.cols(); ++c) {
        Json col = Json::array();
        for (long r = 0; r < m.rows(); ++r) col.push_back(number(m(r, c)));
        out.push_back(std::move(col));
    }
    return out;
}

inline Json numbers(const std::vector<double>& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(number(x));
    return out;
}

inline Json strings(const std::vector<std::string>& v) { return Json(v); }

inline Json polynomials(const std::vector<MixedPolynomial>& v, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(format(p, names));
    return out;
}

inline Json wirtinger_json(const MixedPolynomial& f, const std::vector<std::string>& names) {
    const auto g = wirtinger(f);
    return Json{{"dF", polynomials(g.dF, names)}, {"dbarF", polynomials(g.dbarF, names)}};
}

inline Json weights(const PolarWeights& w) { return Json{{"p", w.p}, {"k", w.k}}; }

inline Json polar_json(const PolarSolution& s) {
    Json basis = Json::array();
    for (const auto& v : s.lattice_basis) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(x.get_str());
        basis.push_back(std::move(row));
    }
    return Json{{"status", to_string(s.status)},
                {"canonical", s.canonical ? weights(*s.canonical) : Json(nullptr)},
                {"minimal", s.minimal},
                {"bound", s.bound_used},
                {"lattice_basis", std::move(basis)},
                {"certificate", s.certificate}};
}

inline Json line_json(const LineComponent& l) {
    Json j{{"kind", to_string(l.kind)}};
    if (l.kind == LineKind::slope) {
        j["slope"] = complex(l.slope);
        j["exact_slope"] = l.exact_slope ? Json(l.exact_slope->to_string()) : Json(nullptr);
    }
    return j;
}

inline Json lines_json(const std::vector<LineComponent>& ls) {
    Json out = Json::array();
    for (const auto& l : ls) out.push_back(line_json(l));
    return out;
}

inline const std::vector<std::string>& uv_names() {
    static const std::vector<std::string> names{"u", "v"};
    return names;
}

inline Json curve_json(const PlaneCurve& c) {
    return Json{{"origin_only", c.origin_only},
                {"h", c.origin_only ? Json(nullptr) : Json(format_poly(c.h, uv_names()))},
                {"passes_through_origin", c.passes_through_origin},
                {"notes", strings(c.notes)}};
}

inline Json isolated_json(const IsolatedVerdict& v) {
    return Json{{"status", to_string(v.status)},
                {"method", v.method},
                {"curve", v.curve ? curve_json(*v.curve) : Json(nullptr)},
                {"lines", lines_json(v.lines)},
                {"witness_lines", lines_json(v.witnesses)},
                {"notes", strings(v.notes)}};
}

inline Json component_json(const SingComponent& c, const std::vector<std::string>& names) {
    Json gens = Json::array();
    for (const auto& p : c.generators) gens.push_back(format_poly(p, names));
    return Json{{"name", c.name}, {"generators", std::move(gens)}, {"empty", c.empty}, {"redundant", c.redundant}};
}

inline Json sing_json(const SingDecomposition& d, const std::vector<std::string>& names) {
    Json minors = Json::array();
    for (const auto& p : d.jacobian_minors) minors.push_back(format_poly(p, names));
    return Json{{"common_zero", component_json(d.common_zero, names)},
                {"sing_f", component_json(d.sing_f, names)},
                {"sing_g", component_json(d.sing_g, names)},
                {"jacobian_minors", std::move(minors)}};
}

inline Json shear_json(const ShearResult& r, const std::vector<std::string>& names) {
    Json tried = Json::array();
    for (auto k : r.tried) tried.push_back(k);
    return Json{{"k", r.k},
                {"already_isolated", r.already_isolated},
                {"f", format(r.pair.f, names)},
                {"g", format(r.pair.g, names)},
                {"tried", std::move(tried)},
                {"verdict", isolated_json(r.verdict)}};
}

inline Json probe_options_json(const ProbeOptions& o) {
    return Json{{"t0", number(o.t0)},
                {"rho", number(o.rho)},
                {"shells", o.shells},
                {"convergence_tol", number(o.convergence_tol)},
                {"convergence_run", o.convergence_run},
                {"rank_tol", number(o.rank_tol)},
                {"fail_tol", number(o.fail_tol)},
                {"compatible_tol", number(o.compatible_tol)}};
}

inline Json scan_options_json(const ScanOptions& o) {
    return Json{{"radii", numbers(o.radii)},
                {"samples_per_shell", o.samples_per_shell},
                {"seed", o.seed},
                {"residual_tol", number(o.residual_tol)},
                {"min_abs_value", number(o.min_abs_value)},
                {"max_evals", o.max_evals},
                {"support_c", number(o.support_c)},
                {"distance_estimate", "minimal Newton step |DF^+ F| (first order)"}};
}

inline Json stratum_json(const Stratum& s) {
    Json tan = Json::array();
    for (const auto& v : s.tangent) tan.push_back(complex_vector(v));
    return Json{{"point", complex_vector(s.base_point)}, {"tangent", std::move(tan)}};
}

inline Json probe_json(const ProbeResult& r, const std::vector<CurveGerm>& curves) {
    Json cs = Json::array();
    for (std::size_t k = 0; k < r.curves.size(); ++k) {
        const auto& cp = r.curves[k];
        Json dims = Json::array();
        for (auto d : cp.limit.dims) dims.push_back(d);
        cs.push_back(Json{{"index", k},
                          {"curve", k < curves.size() ? strings(curves[k].source) : Json::array()},
                          {"converged", cp.limit.converged},
                          {"shells_used", cp.limit.shells_used},
                          {"dimension", cp.limit.plane.dim()},
                          {"limit_basis", real_basis(cp.limit.plane.basis)},
                          {"projection", number(cp.projection)},
                          {"convergence_tail", numbers(std::vector<double>(
                                                   cp.limit.convergence.end() -
                                                       std::min<std::ptrdiff_t>(5, cp.limit.convergence.size()),
                                                   cp.limit.convergence.end()))},
                          {"note", cp.limit.note}});
    }
    Json w = nullptr;
    if (r.witness) {
        const auto& x = *r.witness;
        w = Json{{"curve_index", x.curve_index},
                 {"curve", x.curve_index < curves.size() ? strings(curves[x.curve_index].source) : Json::array()},
                 {"mu", complex(x.mu)},
                 {"stratum_direction", complex_vector(x.stratum_direction)},
                 {"normal_direction", complex_vector(x.normal_direction)},
                 {"projection", number(x.projection)}};
    }
    return Json{{"verdict", to_string(r.verdict)},
                {"witness", std::move(w)},
                {"limit_plane", real_basis(r.limit_plane.basis)},
                {"curves", std::move(cs)}};
}

inline Json scan_json(const ScanEvidence& e) {
    Json shells = Json::array();
    for (const auto& s : e.shells)
        shells.push_back(Json{{"radius", number(s.radius)},
                              {"count", s.count},
                              {"min_distance", number(s.min_distance)},
                              {"ratio", number(s.ratio)}});
    return Json{{"kind", e.kind},
                {"seed", e.seed},
                {"shells", std::move(shells)},
                {"fitted_c", e.fitted_c ? number(*e.fitted_c) : Json(nullptr)},
                {"supports", e.supports}};
}

inline Json verdict_json(const TubeVerdict& v) {
    Json routes = Json::array();
    for (const auto& r : v.routes)
        routes.push_back(Json{{"route", r.name}, {"conclusion", r.conclusion}, {"detail", r.detail}});
    auto route_or_null = [](const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); };
    return Json{{"tube", Json{{"status", to_string(v.tube)}, {"route", route_or_null(v.tube_route)}}},
                {"thom", Json{{"status", to_string(v.thom)}, {"route", route_or_null(v.thom_route)}}},
                {"routes", std::move(routes)},
                {"notes", strings(v.notes)}};
}

inline Json header(const std::string& command) {
    return Json{{"schema", kSchema}, {"tool", "mixsing"}, {"version", kToolVersion}, {"command", command}};
}

inline Json error(const std::string& kind, const std::string& message, std::optional<std::size_t> position = {}) {
    Json e{{"kind", kind}, {"message", message}};
    if (position) e["position"] = *position;
    Json out = header("error");
    out["error"] = std::move(e);
    return out;
}

}  // namespace mixsing::report
