// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace mixsing;
using namespace testing_support;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MixedPolynomial M(const std::string& s, const std::vector<std::string>& v = XYZ) { return parse_mixed(s, v); }
MixedPolynomial H(const std::string& s, const std::vector<std::string>& v = XYZ) { return parse_holomorphic(s, v); }

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

Stratum y_axis() { return complex_line_stratum({0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}); }

// 1
void normal_families(Check& c) {
    const auto s = normal_family_symbolic(M("(x^2 - z*y^2)*y~"));
    c.require(s.conj_dF[0] == M("2*x~*y") && s.conj_dF[1] == M("-2*y*y~*z~") && s.conj_dF[2] == M("-y~^2*y"),
              "sabbah mu-part differs");
    c.require(s.dbarF[0].is_zero() && s.dbarF[1] == M("x^2 - z*y^2") && s.dbarF[2].is_zero(), "sabbah mu-bar part differs");
    for (unsigned k = 2; k <= 5; ++k) {
        const std::string K = std::to_string(k), K1 = std::to_string(k - 1);
        const auto f = normal_family_symbolic(M("x~*y*(x+z^" + K + ")"));
        c.require(f.conj_dF[0] == M("x*y~") && f.conj_dF[1] == M("x*x~ + x*z~^" + K) &&
                      f.conj_dF[2] == M(K + "*x*z~^" + K1 + "*y~"),
                  "F_" + K + " mu-part differs");
        c.require(f.dbarF[0] == M("y*(x+z^" + K + ")") && f.dbarF[1].is_zero() && f.dbarF[2].is_zero(),
                  "F_" + K + " mu-bar part differs");
    }
}

// 2
void witness_direction(Check& c) {
    const auto F = M("x~*y*(x+z^2)");
    const auto curve = parse_curve({"t", "1", "0"});
    const auto d = limit_normal_direction(FrameEvaluator(F), curve, Complex(0, 1));
    c.require(d.converged, "direction did not converge");
    if (d.direction.size() == 3) {
        const double off = std::sqrt(std::norm(d.direction[0]) + std::norm(d.direction[2]) +
                                     std::pow(1.0 - std::abs(d.direction[1]), 2));
        c.require(off <= 1e-8, "limit direction is " + std::to_string(off) + " from e2");
    } else {
        c.require(false, "no direction");
    }
    const auto r = thom_test(F, y_axis(), {curve});
    c.require(r.verdict == ProbeVerdict::fail_witness, "thom_test did not return fail-witness");
}

// 3
void sabbah_battery(Check& c) {
    const auto F = M("(x^2 - z*y^2)*y~");
    const auto s = complex_line_stratum({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    const auto r = thom_test(F, s, default_curve_battery(s, 20240601));
    int converged = 0;
    for (const auto& cp : r.curves) {
        if (!cp.limit.converged) continue;
        ++converged;
        const auto& b = cp.limit.plane.basis;
        c.require(b.block(4, 0, 2, b.cols()).norm() <= 1e-6, "a limit normal does not annihilate e3");
    }
    c.require(converged > 0, "no curve converged");
    c.require(r.verdict == ProbeVerdict::compatible, std::string("verdict ") + to_string(r.verdict));
}

// 4
void isolated_verdicts(Check& c) {
    auto status = [](const std::string& f, const std::string& g, const std::vector<std::string>& v) {
        return isolated_value_verdict(H(f, v), H(g, v));
    };
    c.require(status("x^2", "y^3", XY).status == IsolatedStatus::isolated, "(x^2,y^3) not isolated");
    const auto shear = status("x", "x+y^2", XY);
    c.require(shear.status == IsolatedStatus::not_isolated, "(x,x+y^2) not flagged");
    c.require(shear.witnesses.size() == 1 && shear.witnesses[0].exact_slope == ComplexRational(1),
              "(x,x+y^2) witness is not the slope-1 line");
    c.require(status("x^2 - z*y^2", "y", XYZ).status == IsolatedStatus::isolated, "(x^2-zy^2,y) not isolated");
    const auto xy = status("x*y", "x", XY);
    c.require(xy.status == IsolatedStatus::isolated && xy.curve && xy.curve->origin_only,
              "(xy,x) discriminant is not origin-only");
}

// 5
void branch_oracle(Check& c) {
    Rng rng(20240601), sampler(7);
    int disagreements = 0;
    for (int k = 0; k < 50; ++k) {
        const auto b = random_branch(rng);
        if (branch_restriction_singular(b) != numeric_branch_singular(b, sampler)) ++disagreements;
    }
    for (const char* text : {"u = t; v = 2*t", "u = t^2; v = t^3", "u = t; v = t + t^2"}) {
        const auto b = parse_branch(text);
        if (branch_restriction_singular(b) != numeric_branch_singular(b, sampler)) ++disagreements;
    }
    c.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

// 6
void polar_suite(Check& c) {
    const auto a = solve_polar(M("x*y*x~", XY));
    c.require(a.canonical && a.canonical->p == std::vector<long>{1, 1} && a.canonical->k == 1, "xyx̄ weights");
    const auto b = solve_polar(M("x~*y*(x+z^2)"));
    c.require(b.canonical && b.canonical->p == std::vector<long>{2, 1, 1} && b.canonical->k == 1, "F_2 weights");
    c.require(solve_polar(M("x*y + x~*y~", XY)).status == PolarStatus::no, "xy + x̄ȳ not absent");
    Rng rng(3);
    for (const auto& [f, w] : {std::pair{M("x*y*x~", XY), *a.canonical}, std::pair{M("x~*y*(x+z^2)"), *b.canonical}}) {
        for (int k = 0; k < 100; ++k) {
            const auto z = random_point(rng, f.n_vars());
            const double r = orbit_check(f, w, rng.unit_complex(), z);
            c.require(r <= 1e-10, "orbit residual " + std::to_string(r));
        }
    }
}

// 7
void wirtinger_suite(Check& c) {
    Rng rng(1000);
    const double h = 1e-5;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        const auto a = random_mixed(rng, n), b = random_mixed(rng, n);
        c.require(a * b == b * a && a * (b + a) == a * b + a * a, "ring law");
        const auto ga = wirtinger(a), gb = wirtinger(b), gab = wirtinger(a * b), gc = wirtinger(conjugate(a));
        const auto z = random_point(rng, n);
        for (std::size_t j = 0; j < n; ++j) {
            c.require(gab.dF[j] == a * gb.dF[j] + b * ga.dF[j], "product rule");
            c.require(gab.dbarF[j] == a * gb.dbarF[j] + b * ga.dbarF[j], "product rule (bar)");
            c.require(gc.dbarF[j] == conjugate(ga.dF[j]), "conjugation commutation");
            c.require(ga.dF[j] == oracle_derivative(a, j, false), "oracle derivative");
            const Complex d = ga.dF[j].evaluate(z), e = ga.dbarF[j].evaluate(z);
            const Complex want_x = d + e, want_y = Complex(0, 1) * (d - e);
            auto zp = z, zm = z;
            zp[j] += h;
            zm[j] -= h;
            const Complex fx = (a.evaluate(zp) - a.evaluate(zm)) / (2 * h);
            zp = z;
            zm = z;
            zp[j] += Complex(0, h);
            zm[j] -= Complex(0, h);
            const Complex fy = (a.evaluate(zp) - a.evaluate(zm)) / (2 * h);
            c.require(std::abs(fx - want_x) <= 1e-6 * std::max(1.0, std::abs(want_x)) &&
                          std::abs(fy - want_y) <= 1e-6 * std::max(1.0, std::abs(want_y)),
                      "finite-difference gradient");
        }
    }
}

// 8
void verdicts(Check& c) {
    for (unsigned k : {2u, 3u}) {
        VerdictInput in;
        in.pair = HolomorphicPair{H("y*(x+z^" + std::to_string(k) + ")"), H("x")};
        in.F = from_pair(in.pair->f, in.pair->g);
        in.strata.push_back({"y-axis", y_axis(), {parse_curve({"t", "1", "0"})}});
        const auto v = tube_verdict(in);
        c.require(v.tube == TubeStatus::yes && v.tube_route == route::polar, "F_k tube");
        c.require(v.thom == ThomStatus::fail && v.thom_route == route::probe_witness, "F_k thom");
    }
    VerdictInput sep;
    sep.pair = HolomorphicPair{H("x^2", XY), H("y^3", XY)};
    sep.F = from_pair(sep.pair->f, sep.pair->g);
    const auto s = tube_verdict(sep);
    c.require(s.thom == ThomStatus::regular && s.thom_route == route::separate_variables, "separate thom");
    c.require(s.tube == TubeStatus::yes && s.tube_route == route::separate_variables, "separate tube");
    VerdictInput sh;
    sh.pair = HolomorphicPair{H("x", XY), H("x+y^2", XY)};
    sh.F = from_pair(sh.pair->f, sh.pair->g);
    const auto t = tube_verdict(sh);
    c.require(t.tube == TubeStatus::no && t.tube_route == route::disc_lines, "shear tube");
}

// 9
void determinism(Check& c) {
    for (const char* name : {"xyxbar", "xyxbar-deformed", "sabbah", "Fk2", "Fk3", "separate", "shear"}) {
        const auto fx = load_fixture_file(std::string(MIXSING_FIXTURE_DIR) + "/" + name + ".json");
        AnalyzeOptions opt;
        opt.verdict.assert_icis = fx.assert_icis;
        const auto req = request_from_fixture(fx);
        c.require(analyze(req, opt).dump(2) == analyze(req, opt).dump(2), std::string(name) + " differs");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> all{
        {"normal-family reproduction", 1.0, normal_families},
        {"F_2 witness direction and fail-witness", 5.0, witness_direction},
        {"x^2 - zy^2 default battery compatible", 10.0, sabbah_battery},
        {"isolated critical value verdicts", 5.0, isolated_verdicts},
        {"branch test vs numeric oracle", 30.0, branch_oracle},
        {"polar weights and orbit check", 5.0, polar_suite},
        {"Wirtinger property suite", 60.0, wirtinger_suite},
        {"tube_verdict classifications", 20.0, verdicts},
        {"fixture determinism", 60.0, determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < all.size(); ++k) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            all[k].run(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(secs < all[k].limit_s, "runtime " + std::to_string(secs) + " s over limit");
        std::printf("%s criterion %zu: %s (%.3f s)%s%s\n", c.ok ? "PASS" : "FAIL", k + 1, all[k].name, secs,
                    c.ok ? "" : ": ", c.why.c_str());
        if (!c.ok) ++failed;
    }
    return failed ? 1 : 0;
}
