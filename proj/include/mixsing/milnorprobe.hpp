/*
 * milnorprobe.hpp
 * ---------------
 * Numeric evidence for the two tube-fibration conditions
 *   (a) Sing F ⊂ V,
 *   (b) the Milnor set M(F) off V does not accumulate on V except at 0,
 * and the combination of every decision route into one TubeVerdict.
 */
#pragma once

#include "discgeom.hpp"
#include "polar.hpp"
#include "rng.hpp"
#include "thomprobe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mixsing {

namespace detail {

inline double norm(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

inline Complex hermitian(const ComplexVector& a, const ComplexVector& b) {
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
    return s;
}

}  // namespace detail

/// (‖a‖‖b‖ − |⟨a,b⟩|) + (‖a‖ − ‖b‖)² with a = conj(dF)(z), b = dbarF(z).
/// Zero exactly when a = λ·b for some |λ| = 1 (or a = b = 0).
inline double sing_residual(const FrameEvaluator& ev, std::span<const Complex> z) {
    auto [a, b] = ev.gradients(z);
    const double na = detail::norm(a), nb = detail::norm(b);
    const double cs = std::max(0.0, na * nb - std::abs(detail::hermitian(a, b)));
    return cs + (na - nb) * (na - nb);
}

inline double sing_residual(const MixedPolynomial& f, std::span<const Complex> z) {
    return sing_residual(FrameEvaluator(f), z);
}

struct MilnorResidual {
    double value = 0.0;
    bool degenerate = false;  // frame has real rank < 2
};

/// Distance of z/|z| from the real normal plane of the fibre through z.
inline MilnorResidual milnor_residual(const FrameEvaluator& ev, std::span<const Complex> z, double rank_tol = 1e-10) {
    require_finite(z);
    Eigen::VectorXd r = to_real(z);
    const double nr = r.norm();
    if (!(nr > 0.0)) throw std::invalid_argument("milnor_residual: z must be nonzero");
    r /= nr;
    const RealPlane p = real_span(ev.frame(z), rank_tol);
    MilnorResidual out;
    out.degenerate = p.dim() < 2;
    const Eigen::VectorXd proj = p.dim() ? Eigen::VectorXd(p.basis * (p.basis.transpose() * r)) : Eigen::VectorXd::Zero(r.size());
    out.value = std::clamp((r - proj).norm(), 0.0, 1.0);
    return out;
}

inline MilnorResidual milnor_residual(const MixedPolynomial& f, std::span<const Complex> z) {
    return milnor_residual(FrameEvaluator(f), z);
}

/// First-order distance from z to V = F⁻¹(0): norm of the minimal Newton step
/// solving F(z) + DF·h = 0 with the 2 × 2n real Jacobian.
inline double distance_to_zero_set(const FrameEvaluator& ev, std::span<const Complex> z) {
    const Complex val = ev.polynomial().evaluate(z);
    auto [a, b] = ev.gradients(z);  // a = conj(dF), b = dbarF
    const std::size_t n = z.size();
    // DF·h = Σ dF_j h_j + dbarF_j conj(h_j), h_j = x_j + i y_j
    Eigen::MatrixXd jac(2, static_cast<long>(2 * n));
    for (std::size_t j = 0; j < n; ++j) {
        const Complex d = std::conj(a[j]);
        const Complex e = b[j];
        const Complex dx = d + e;                             // ∂/∂x_j
        const Complex dy = Complex(0.0, 1.0) * (d - e);       // ∂/∂y_j
        jac(0, static_cast<long>(2 * j)) = dx.real();
        jac(1, static_cast<long>(2 * j)) = dx.imag();
        jac(0, static_cast<long>(2 * j + 1)) = dy.real();
        jac(1, static_cast<long>(2 * j + 1)) = dy.imag();
    }
    Eigen::Vector2d rhs(val.real(), val.imag());
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(rhs);
    const double d = step.norm();
    return std::isfinite(d) ? d : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Derivative-free local search on a sphere

namespace detail {

/// Nelder–Mead on R^m; returns the best point found.
inline Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn, Eigen::VectorXd x0,
                                   double step, int max_evals, double target) {
    const long m = x0.size();
    std::vector<Eigen::VectorXd> pts{x0};
    for (long k = 0; k < m; ++k) {
        Eigen::VectorXd p = x0;
        p(k) += step;
        pts.push_back(p);
    }
    std::vector<double> vals;
    for (const auto& p : pts) vals.push_back(fn(p));
    int evals = static_cast<int>(pts.size());
    std::vector<std::size_t> idx(pts.size());
    while (evals < max_evals) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = idx.front(), worst = idx.back(), second = idx[idx.size() - 2];
        if (vals[best] < target) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(m);
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) centroid += pts[idx[k]];
        centroid /= static_cast<double>(m);
        const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        const double fr = fn(refl);
        ++evals;
        if (fr < vals[best]) {
            const Eigen::VectorXd exp = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = fn(exp);
            ++evals;
            if (fe < fr) {
                pts[worst] = exp;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            const Eigen::VectorXd con = centroid + 0.5 * (pts[worst] - centroid);
            const double fc = fn(con);
            ++evals;
            if (fc < vals[worst]) {
                pts[worst] = con;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 1; k < idx.size(); ++k) {
                    pts[idx[k]] = pts[best] + 0.5 * (pts[idx[k]] - pts[best]);
                    vals[idx[k]] = fn(pts[idx[k]]);
                    ++evals;
                }
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return pts[static_cast<std::size_t>(it - vals.begin())];
}

inline ComplexPoint on_sphere(const Eigen::VectorXd& x, double radius) {
    const double nrm = x.norm();
    return to_complex(nrm > 0 ? Eigen::VectorXd(x * (radius / nrm)) : x);
}

}  // namespace detail

struct ScanOptions {
    std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
    int samples_per_shell = 200;
    std::uint64_t seed = 20240601;
    double residual_tol = 1e-6;
    double min_abs_value = 1e-6;  // |F(z)| threshold for "off V"
    int max_evals = 1200;
    double support_c = 1e-3;      // (b) is supported when the fitted c reaches this
};

struct ShellEvidence {
    double radius = 0.0;
    std::size_t count = 0;          // points found off V
    double min_distance = std::numeric_limits<double>::infinity();
    double ratio = std::numeric_limits<double>::infinity();  // min_distance / radius
};

struct ScanEvidence {
    std::string kind;  // "milnor" or "sing"
    std::vector<ShellEvidence> shells;
    std::optional<double> fitted_c;
    bool supports = false;
    std::uint64_t seed = 0;
};

namespace detail {

using ResidualFn = std::function<double(const ComplexPoint&)>;

inline ScanEvidence run_scan(const FrameEvaluator& ev, const ResidualFn& residual, const ScanOptions& opt,
                             std::string kind) {
    const std::size_t n = ev.n_vars();
    if (!std::is_sorted(opt.radii.rbegin(), opt.radii.rend()) ||
        std::any_of(opt.radii.begin(), opt.radii.end(), [](double r) { return !(r > 0.0); }))
        throw std::invalid_argument("scan radii must be positive and decreasing");
    ScanEvidence out;
    out.kind = std::move(kind);
    out.seed = opt.seed;
    Rng rng(opt.seed);
    for (double radius : opt.radii) {
        ShellEvidence sh;
        sh.radius = radius;
        for (int s = 0; s < opt.samples_per_shell; ++s) {
            Eigen::VectorXd x0(static_cast<long>(2 * n));
            for (long k = 0; k < x0.size(); ++k) x0(k) = rng.normal();
            x0 *= radius / x0.norm();
            auto fn = [&](const Eigen::VectorXd& x) { return residual(on_sphere(x, radius)); };
            const Eigen::VectorXd best = nelder_mead(fn, x0, 0.25 * radius, opt.max_evals, 0.1 * opt.residual_tol);
            const ComplexPoint z = on_sphere(best, radius);
            if (residual(z) >= opt.residual_tol) continue;
            if (std::abs(ev.polynomial().evaluate(z)) <= opt.min_abs_value) continue;
            ++sh.count;
            sh.min_distance = std::min(sh.min_distance, distance_to_zero_set(ev, z));
        }
        if (sh.count) sh.ratio = sh.min_distance / radius;
        out.shells.push_back(sh);
    }
    for (const auto& sh : out.shells)
        if (sh.count) out.fitted_c = out.fitted_c ? std::min(*out.fitted_c, sh.ratio) : sh.ratio;
    return out;
}

}  // namespace detail

/// Searches each sphere for Milnor-set points off V; condition (b) is supported
/// when their distance to V stays above c·radius.
inline ScanEvidence milnor_scan(const MixedPolynomial& f, const ScanOptions& opt = {}) {
    const FrameEvaluator ev(f);
    auto residual = [&](const ComplexPoint& z) {
        const auto r = milnor_residual(ev, z);
        return r.degenerate ? 1.0 : r.value;
    };
    auto ev_out = detail::run_scan(ev, residual, opt, "milnor");
    ev_out.supports = !ev_out.fitted_c || *ev_out.fitted_c >= opt.support_c;
    return ev_out;
}

/// Searches each sphere for singular points off V (violations of condition (a)).
/// The residual is normalized by ‖a‖² + ‖b‖² so it is scale free.
inline ScanEvidence sing_scan(const MixedPolynomial& f, const ScanOptions& opt = {}) {
    const FrameEvaluator ev(f);
    auto residual = [&](const ComplexPoint& z) {
        auto [a, b] = ev.gradients(z);
        const double scale = std::norm(detail::norm(a)) + std::norm(detail::norm(b));
        if (!(scale > 0.0)) return 0.0;
        return sing_residual(ev, z) / scale;
    };
    auto out = detail::run_scan(ev, residual, opt, "sing");
    // evidence supports (a) when no singular point off V was found
    out.supports = std::all_of(out.shells.begin(), out.shells.end(), [](const auto& s) { return s.count == 0; });
    return out;
}

// ---------------------------------------------------------------------------
// Combined verdict

enum class TubeStatus { yes, no, unknown };
enum class ThomStatus { regular, fail, no_failure_found, unknown };

inline const char* to_string(TubeStatus s) {
    switch (s) {
        case TubeStatus::yes: return "yes";
        case TubeStatus::no: return "no";
        case TubeStatus::unknown: return "unknown";
    }
    return "unknown";
}

inline const char* to_string(ThomStatus s) {
    switch (s) {
        case ThomStatus::regular: return "regular";
        case ThomStatus::fail: return "fail";
        case ThomStatus::no_failure_found: return "no-failure-found";
        case ThomStatus::unknown: return "unknown";
    }
    return "unknown";
}

namespace route {
inline constexpr const char* polar = "polar";
inline constexpr const char* disc_lines = "disc-lines";
inline constexpr const char* separate_variables = "separate-variables";
inline constexpr const char* icis_flag = "icis-flag";
inline constexpr const char* probe_witness = "probe-witness";
}  // namespace route

struct RouteRecord {
    std::string name;
    std::string conclusion;  // e.g. "tube yes", "thom fail"
    std::string detail;
};

struct StratumProbe {
    std::string label;
    Stratum stratum;
    std::vector<CurveGerm> curves;  // empty: default battery
};

struct VerdictInput {
    MixedPolynomial F{1};
    std::optional<HolomorphicPair> pair;
    std::vector<StratumProbe> strata;
};

struct VerdictOptions {
    bool assert_icis = false;
    PolarOptions polar{};
    DiscOptions disc{};
    ProbeOptions probe{};
    std::uint64_t seed = 20240601;
};

struct StratumOutcome {
    std::string label;
    ProbeResult result;
    std::vector<CurveGerm> curves;
};

struct TubeVerdict {
    TubeStatus tube = TubeStatus::unknown;
    std::string tube_route;
    ThomStatus thom = ThomStatus::unknown;
    std::string thom_route;
    std::vector<RouteRecord> routes;
    std::optional<PolarSolution> polar;
    std::optional<IsolatedVerdict> isolated;
    std::vector<StratumOutcome> probes;
    std::vector<std::string> notes;
};

inline bool separate_variables(const MixedPolynomial& f, const MixedPolynomial& g) {
    if (f.is_constant() || g.is_constant()) return false;
    const auto sf = f.support(), sg = g.support();
    std::vector<std::size_t> both;
    std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(both));
    return both.empty();
}

inline TubeVerdict tube_verdict(const VerdictInput& in, const VerdictOptions& opt = {}) {
    TubeVerdict v;
    auto set_tube = [&](TubeStatus s, const char* name, std::string detail) {
        v.routes.push_back({name, std::string("tube ") + to_string(s), std::move(detail)});
        if (v.tube == TubeStatus::unknown) {
            v.tube = s;
            v.tube_route = name;
        } else if (v.tube != s) {
            v.notes.push_back(std::string("route ") + name + " disagrees with " + v.tube_route);
        }
    };
    auto set_thom = [&](ThomStatus s, const char* name, std::string detail) {
        v.routes.push_back({name, std::string("thom ") + to_string(s), std::move(detail)});
        if (v.thom == ThomStatus::unknown || v.thom == ThomStatus::no_failure_found) {
            v.thom = s;
            v.thom_route = name;
        } else if (v.thom != s) {
            v.notes.push_back(std::string("route ") + name + " disagrees with " + v.thom_route);
        }
    };

    const bool have_pair = in.pair.has_value();
    if (have_pair && separate_variables(in.pair->f, in.pair->g)) {
        set_thom(ThomStatus::regular, route::separate_variables, "f and g have disjoint variable supports");
        set_tube(TubeStatus::yes, route::separate_variables, "Thom regularity gives transversality to small spheres");
    }

    if (have_pair) {
        try {
            v.isolated = isolated_value_verdict(in.pair->f, in.pair->g, opt.disc);
        } catch (const std::exception& ex) {
            v.notes.push_back(std::string("isolated-value check failed: ") + ex.what());
        }
    }
    const bool no_extra_lines = v.isolated && v.isolated->status == IsolatedStatus::isolated;

    if (have_pair && opt.assert_icis) {
        if (no_extra_lines) {
            set_thom(ThomStatus::regular, route::icis_flag, "(f,g) asserted Thom regular and Disc(f,g) has only axis lines");
            set_tube(TubeStatus::yes, route::icis_flag, "Thom regularity gives transversality to small spheres");
        } else {
            v.notes.push_back("icis flag given but the discriminant condition is not certified; route not fired");
        }
    }

    if (!in.F.is_zero() && !in.F.is_constant()) {
        v.polar = solve_polar(in.F, opt.polar);
        if (v.polar->status == PolarStatus::yes) {
            const auto& w = *v.polar->canonical;
            std::string p;
            for (std::size_t j = 0; j < w.p.size(); ++j) p += (j ? "," : "") + std::to_string(w.p[j]);
            set_tube(TubeStatus::yes, route::polar, "weights p=(" + p + "), k=" + std::to_string(w.k));
        }
    }

    if (v.isolated && v.isolated->status == IsolatedStatus::not_isolated) {
        std::string lines;
        for (const auto& l : v.isolated->witnesses) {
            std::ostringstream os;
            os << (lines.empty() ? "" : ", ") << "v = (" << l.slope.real() << (l.slope.imag() < 0 ? "" : "+")
               << l.slope.imag() << "i)u";
            lines += os.str();
        }
        set_tube(TubeStatus::no, route::disc_lines, "discriminant contains non-axis lines: " + lines);
    }

    for (std::size_t k = 0; k < in.strata.size(); ++k) {
        const auto& sp = in.strata[k];
        StratumOutcome so;
        so.label = sp.label;
        so.curves = sp.curves.empty() ? default_curve_battery(sp.stratum, opt.seed + k) : sp.curves;
        so.result = thom_test(in.F, sp.stratum, so.curves, opt.probe);
        if (so.result.verdict == ProbeVerdict::fail_witness) {
            const auto& w = *so.result.witness;
            std::ostringstream os;
            os << "stratum " << sp.label << ", curve #" << w.curve_index << ", mu = (" << w.mu.real() << ","
               << w.mu.imag() << ")";
            set_thom(ThomStatus::fail, route::probe_witness, os.str());
        } else if (so.result.verdict == ProbeVerdict::compatible && v.thom == ThomStatus::unknown) {
            v.thom = ThomStatus::no_failure_found;
            v.notes.push_back("no Thom failure found on stratum " + sp.label + " (evidence, not proof)");
        }
        v.probes.push_back(std::move(so));
    }

    if (v.tube == TubeStatus::no && v.thom == ThomStatus::regular)
        throw std::logic_error("inconsistent verdict: tube no with Thom regularity");
    return v;
}

}  // namespace mixsing
