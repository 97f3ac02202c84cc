/*
 * discgeom.hpp
 * ------------
 * Exact discriminant geometry of holomorphic pairs (f, g):
 *
 *   - the Jacobian determinant and the discriminant curve Disc(f, g) ⊂ C²
 *     (Zariski closure of the image of the critical set, by elimination),
 *   - lines through the origin contained in a plane curve,
 *   - the restriction test of u·v̄ to a Puiseux branch,
 *   - the isolated-critical-value verdict for f·ḡ,
 *   - the decomposition Sing f·ḡ ∩ V = {f=g=0} ∪ Sing f ∪ Sing g,
 *   - the shear (f + λ g^k, g).
 */
#pragma once

#include "algebra.hpp"
#include "parser.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mixsing {

using algebra::Poly;

class DegreeBoundExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EliminationDegenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShearSearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlaneCurve {
    bool origin_only = false;
    Poly h{2};                         // squarefree defining polynomial in (u, v), when not origin_only
    bool passes_through_origin = true;  // h(0,0) = 0, or the point image contains the origin
    std::vector<std::string> notes;
};

enum class LineKind { axis_u, axis_v, slope };

inline const char* to_string(LineKind k) {
    switch (k) {
        case LineKind::axis_u: return "axis-u";
        case LineKind::axis_v: return "axis-v";
        case LineKind::slope: return "slope";
    }
    return "slope";
}

/// axis-u is {v = 0}, axis-v is {u = 0}, slope lines are {v = a·u}.
struct LineComponent {
    LineKind kind = LineKind::slope;
    Complex slope{0.0, 0.0};
    std::optional<ComplexRational> exact_slope;
};

struct PuiseuxTerm {
    Complex coefficient;
    std::uint32_t exponent = 1;
};

/// u = t^p, v = Σ a_i t^{q_i} with strictly increasing q_i.
struct PuiseuxBranch {
    std::uint32_t p = 1;
    std::vector<PuiseuxTerm> terms;

    void validate() const {
        if (p == 0) throw std::invalid_argument("branch: p must be positive");
        if (terms.empty()) throw std::invalid_argument("branch: v has no terms");
        if (terms.front().coefficient == Complex(0.0, 0.0))
            throw std::invalid_argument("branch: leading coefficient is zero");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].exponent == 0) throw std::invalid_argument("branch: exponents must be positive");
            if (i && terms[i].exponent <= terms[i - 1].exponent)
                throw std::invalid_argument("branch: exponents must increase strictly");
        }
    }
};

struct SingComponent {
    std::string name;
    std::vector<Poly> generators;  // reduced Groebner basis; {1} means empty
    bool empty = false;
    bool redundant = false;  // contained in another listed component
};

struct SingDecomposition {
    SingComponent common_zero;  // {f = g = 0}
    SingComponent sing_f;
    SingComponent sing_g;
    std::vector<Poly> jacobian_minors;  // Sing(f,g) = common zeros of these
};

enum class IsolatedStatus { isolated, not_isolated, unknown };

inline const char* to_string(IsolatedStatus s) {
    switch (s) {
        case IsolatedStatus::isolated: return "isolated";
        case IsolatedStatus::not_isolated: return "not-isolated";
        case IsolatedStatus::unknown: return "unknown";
    }
    return "unknown";
}

struct IsolatedVerdict {
    IsolatedStatus status = IsolatedStatus::unknown;
    std::string method;  // "discriminant-curve", "critical-set-in-V", "user-branches", "none"
    std::optional<PlaneCurve> curve;
    std::vector<LineComponent> lines;     // every line component of the curve
    std::vector<LineComponent> witnesses; // the non-axis lines
    std::vector<std::string> notes;
};

struct DiscOptions {
    std::uint64_t max_degree = 8;
    std::vector<PuiseuxBranch> branches;  // user-supplied branches for n ≥ 3
    algebra::Budget budget{};
};

namespace detail {

inline void require_holomorphic_pair(const MixedPolynomial& f, const MixedPolynomial& g) {
    if (f.n_vars() != g.n_vars()) throw DimensionMismatch("pair has different variable counts");
    if (!f.is_holomorphic() || !g.is_holomorphic()) throw NotHolomorphic("pair must be holomorphic");
}

inline std::vector<Poly> minors(const MixedPolynomial& f, const MixedPolynomial& g) {
    const std::size_t n = f.n_vars();
    std::vector<MixedPolynomial> df, dg;
    for (std::size_t j = 0; j < n; ++j) {
        df.push_back(f.derivative(j, false));
        dg.push_back(g.derivative(j, false));
    }
    std::vector<Poly> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            auto m = df[a] * dg[b] - df[b] * dg[a];
            if (!m.is_zero()) out.push_back(algebra::from_mixed(m));
        }
    return out;
}

}  // namespace detail

inline MixedPolynomial jacobian_det(const MixedPolynomial& f, const MixedPolynomial& g) {
    detail::require_holomorphic_pair(f, g);
    if (f.n_vars() != 2) throw DimensionMismatch("jacobian_det needs exactly 2 variables");
    return f.derivative(0, false) * g.derivative(1, false) - f.derivative(1, false) * g.derivative(0, false);
}

inline PlaneCurve discriminant_curve(const MixedPolynomial& f, const MixedPolynomial& g, const DiscOptions& opt = {}) {
    detail::require_holomorphic_pair(f, g);
    if (f.n_vars() != 2) throw DimensionMismatch("discriminant_curve needs exactly 2 variables");
    if (f.total_degree() > opt.max_degree || g.total_degree() > opt.max_degree)
        throw DegreeBoundExceeded("discriminant_curve: total degree exceeds " + std::to_string(opt.max_degree));

    // variables (x, y, u, v); eliminate x, y from (f − u, g − v, J)
    const Poly u = Poly::variable(4, 2), v = Poly::variable(4, 3);
    std::vector<Poly> gens{algebra::from_mixed(f).embed(4, 0) - u, algebra::from_mixed(g).embed(4, 0) - v};
    const auto jac = jacobian_det(f, g);
    if (!jac.is_zero()) gens.push_back(algebra::from_mixed(jac).embed(4, 0));
    auto elim = algebra::eliminate(gens, 2, opt.budget);
    if (elim.empty()) throw EliminationDegenerate("elimination ideal of the critical image is zero");

    PlaneCurve curve;
    Poly h = elim.front();
    for (std::size_t i = 1; i < elim.size(); ++i) h = algebra::gcd(h, elim[i]);
    const std::vector<ComplexRational> origin{ComplexRational(0), ComplexRational(0)};
    if (h.is_constant()) {
        curve.origin_only = true;
        curve.passes_through_origin = std::all_of(elim.begin(), elim.end(), [&](const Poly& p) {
            return p.evaluate(std::span<const ComplexRational>(origin)).is_zero();
        });
        if (!curve.passes_through_origin)
            curve.notes.push_back("critical image is a finite set of points not containing the origin");
        return curve;
    }
    curve.h = algebra::squarefree(h);
    curve.passes_through_origin = curve.h.evaluate(std::span<const ComplexRational>(origin)).is_zero();
    if (!curve.passes_through_origin)
        curve.notes.push_back("discriminant curve does not pass through the origin; the germ at 0 is empty");
    if (elim.size() > 1) curve.notes.push_back("elimination ideal is not principal; its gcd is used");
    return curve;
}

inline std::vector<LineComponent> line_components(const PlaneCurve& c) {
    if (c.origin_only) throw std::invalid_argument("line_components: curve is origin-only");
    const Poly& h = c.h;
    std::vector<LineComponent> out;

    bool has_u_axis = true, has_v_axis = true;  // h(u,0) ≡ 0, h(0,v) ≡ 0
    std::map<std::uint32_t, algebra::Univariate> by_degree;  // H_d(a) = Σ_{i+j=d} h_ij a^j
    for (const auto& [e, coef] : h.terms()) {
        if (e[1] == 0) has_u_axis = false;
        if (e[0] == 0) has_v_axis = false;
        auto& hd = by_degree[e[0] + e[1]];
        if (hd.size() <= e[1]) hd.resize(e[1] + 1);
        hd[e[1]] += coef;
    }
    if (has_u_axis) out.push_back({LineKind::axis_u, {0.0, 0.0}, std::nullopt});
    if (has_v_axis) out.push_back({LineKind::axis_v, {0.0, 0.0}, std::nullopt});

    algebra::Univariate common;
    for (auto& [d, poly] : by_degree) common = algebra::uni_gcd(common, poly);
    common = algebra::uni_strip_zero_roots(common);  // a = 0 is the u-axis
    if (common.size() <= 1) return out;
    common = algebra::uni_squarefree(common);

    for (Complex r : algebra::uni_roots(common)) {
        LineComponent line{LineKind::slope, r, std::nullopt};
        ComplexRational guess(algebra::rationalize(r.real()), algebra::rationalize(r.imag()));
        if (algebra::uni_eval(common, guess).is_zero()) {
            line.exact_slope = guess;
            line.slope = guess.to_complex();
        }
        out.push_back(line);
    }
    return out;
}

/// Whether u·v̄ restricted to the branch (t^p, v(t)) fails to be a submersion:
/// true iff v = a·t^p exactly, i.e. the branch is a line.
inline bool branch_restriction_singular(const PuiseuxBranch& b) {
    b.validate();
    // leading-term balance q|a₁| = p|a₁| forces q = p; a second term would force p + j = p
    return b.terms.size() == 1 && b.terms.front().exponent == b.p;
}

inline PuiseuxBranch parse_branch(const std::string& text) {
    std::map<std::string, std::string> parts;
    std::stringstream ss(text);
    std::string piece;
    std::size_t offset = 0;
    while (std::getline(ss, piece, ';')) {
        auto eq = piece.find('=');
        if (eq == std::string::npos) throw ParseError(offset, "branch component needs 'name = expression'");
        std::string name = piece.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        parts[name] = piece.substr(eq + 1);
        offset += piece.size() + 1;
    }
    if (!parts.count("u") || !parts.count("v")) throw ParseError(0, "branch needs both u and v");
    auto up = parse_real_parameter_polynomial(parts["u"]);
    if (up.size() != 1 || !up.begin()->second.is_one() || up.begin()->first == 0)
        throw ParseError(0, "branch: u must be t^p with p > 0");
    auto vp = parse_real_parameter_polynomial(parts["v"]);
    PuiseuxBranch b;
    b.p = up.begin()->first;
    for (const auto& [e, c] : vp) b.terms.push_back({c.to_complex(), e});
    try {
        b.validate();
    } catch (const std::invalid_argument& ex) {
        throw ParseError(0, ex.what());
    }
    return b;
}

inline IsolatedVerdict isolated_value_verdict(const MixedPolynomial& f, const MixedPolynomial& g,
                                              const DiscOptions& opt = {}) {
    detail::require_holomorphic_pair(f, g);
    IsolatedVerdict out;
    if (f.n_vars() == 2) {
        out.method = "discriminant-curve";
        PlaneCurve c = discriminant_curve(f, g, opt);
        out.notes = c.notes;
        if (!c.origin_only) {
            out.lines = line_components(c);
            for (const auto& l : out.lines)
                if (l.kind == LineKind::slope) out.witnesses.push_back(l);
        }
        out.curve = std::move(c);
        out.status = out.witnesses.empty() ? IsolatedStatus::isolated : IsolatedStatus::not_isolated;
        return out;
    }

    // n != 2: f and g vanishing on Sing(f,g) puts the whole critical image at 0
    auto m = detail::minors(f, g);
    const Poly pf = algebra::from_mixed(f), pg = algebra::from_mixed(g);
    if (m.empty()) {
        out.method = "none";
        out.status = IsolatedStatus::unknown;
        out.notes.push_back("df and dg are everywhere dependent: Sing(f,g) is the whole space");
        return out;
    }
    if (algebra::in_radical(pf, m, opt.budget) && algebra::in_radical(pg, m, opt.budget)) {
        out.method = "critical-set-in-V";
        out.status = IsolatedStatus::isolated;
        out.notes.push_back("f and g vanish on Sing(f,g): Disc(f,g) is the origin");
        return out;
    }
    if (!opt.branches.empty()) {
        out.method = "user-branches";
        out.status = IsolatedStatus::isolated;
        for (const auto& b : opt.branches) {
            if (branch_restriction_singular(b)) {
                out.status = IsolatedStatus::not_isolated;
                out.witnesses.push_back({LineKind::slope, b.terms.front().coefficient, std::nullopt});
            }
        }
        return out;
    }
    out.method = "none";
    out.status = IsolatedStatus::unknown;
    out.notes.push_back("n >= 3 and the critical set leaves V; supply discriminant branches");
    return out;
}

inline SingDecomposition sing_decomposition(const MixedPolynomial& f, const MixedPolynomial& g,
                                            algebra::Budget budget = {}) {
    detail::require_holomorphic_pair(f, g);
    const std::size_t n = f.n_vars();
    const algebra::MonomialOrder grevlex{algebra::OrderKind::grevlex, 0};

    auto make = [&](std::string name, std::vector<Poly> gens) {
        SingComponent c;
        c.name = std::move(name);
        std::vector<Poly> reduced;
        for (auto& p : gens)
            if (!p.is_zero()) reduced.push_back(algebra::squarefree(p));
        c.generators = algebra::groebner(reduced, grevlex, budget);
        c.empty = algebra::is_unit_ideal(c.generators);
        return c;
    };
    const Poly pf = algebra::from_mixed(f), pg = algebra::from_mixed(g);
    std::vector<Poly> sf{pf}, sg{pg};
    for (std::size_t j = 0; j < n; ++j) {
        sf.push_back(pf.derivative(j));
        sg.push_back(pg.derivative(j));
    }
    SingDecomposition d;
    d.common_zero = make("f=g=0", {pf, pg});
    d.sing_f = make("Sing f", sf);
    d.sing_g = make("Sing g", sg);
    d.jacobian_minors = detail::minors(f, g);

    // A ⊂ B iff every generator of B vanishes on A
    auto contained = [&](const SingComponent& a, const SingComponent& b) {
        if (a.empty) return true;
        if (b.empty) return false;
        return std::all_of(b.generators.begin(), b.generators.end(),
                           [&](const Poly& p) { return algebra::in_radical(p, a.generators, budget); });
    };
    std::array<SingComponent*, 3> comps{&d.common_zero, &d.sing_f, &d.sing_g};
    for (std::size_t i = 0; i < 3; ++i) {
        if (comps[i]->empty) continue;
        for (std::size_t j = 0; j < 3 && !comps[i]->redundant; ++j) {
            if (i == j || comps[j]->empty || comps[j]->redundant) continue;
            if (contained(*comps[i], *comps[j])) comps[i]->redundant = true;
        }
    }
    return d;
}

struct HolomorphicPair {
    MixedPolynomial f;
    MixedPolynomial g;
};

inline HolomorphicPair axis_shear(const MixedPolynomial& f, const MixedPolynomial& g, unsigned k,
                                  const ComplexRational& lambda) {
    detail::require_holomorphic_pair(f, g);
    if (k == 0) throw std::invalid_argument("axis_shear: k must be positive");
    return {f + g.pow(k) * lambda, g};
}

struct ShearResult {
    unsigned k = 2;
    bool already_isolated = false;
    HolomorphicPair pair;
    IsolatedVerdict verdict;
    std::vector<unsigned> tried;
};

inline ShearResult shear_search(const MixedPolynomial& f, const MixedPolynomial& g, const ComplexRational& lambda,
                                unsigned k_max = 8, const DiscOptions& opt = {}) {
    ShearResult r;
    r.verdict = isolated_value_verdict(f, g, opt);
    if (r.verdict.status == IsolatedStatus::isolated) {
        r.already_isolated = true;
        r.k = 2;
        r.pair = {f, g};
        return r;
    }
    for (unsigned k = 2; k <= k_max; ++k) {
        auto pair = axis_shear(f, g, k, lambda);
        r.tried.push_back(k);
        IsolatedVerdict v;
        try {
            v = isolated_value_verdict(pair.f, pair.g, opt);
        } catch (const DegreeBoundExceeded&) {
            break;
        }
        if (v.status == IsolatedStatus::isolated) {
            r.k = k;
            r.pair = std::move(pair);
            r.verdict = std::move(v);
            return r;
        }
    }
    throw ShearSearchExhausted("no k in 2.." + std::to_string(k_max) + " gives an isolated critical value");
}

inline std::string format_poly(const Poly& p, const std::vector<std::string>& names) {
    return format(algebra::to_mixed(p), names);
}

}  // namespace mixsing
