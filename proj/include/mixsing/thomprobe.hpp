/*
 * thomprobe.hpp
 * -------------
 * Normal planes to the fibres of a mixed polynomial and their limits along
 * curve germs, used to look for failures of the Thom (a_F) condition.
 *
 * At z the normals to the fibre through z are
 *
 *     n_μ = μ · conj(dF(z)) + conj(μ) · dbarF(z),   |μ| = 1,
 *
 * a real-linear image of μ, so the normal space is the real span of
 * n_one (μ = 1) and n_i (μ = i). Complex vectors in C^n are identified with
 * R^{2n} by interleaving (Re z_1, Im z_1, ..., Re z_n, Im z_n).
 */
#pragma once

#include "mixed_polynomial.hpp"
#include "parser.hpp"
#include "polar.hpp"
#include "rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mixsing {

using ComplexPoint = std::vector<Complex>;
using ComplexVector = std::vector<Complex>;

inline void require_finite(std::span<const Complex> z) {
    for (const auto& c : z)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("point has non-finite coordinates");
}

inline Eigen::VectorXd to_real(std::span<const Complex> v) {
    Eigen::VectorXd r(static_cast<long>(2 * v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) {
        r(static_cast<long>(2 * j)) = v[j].real();
        r(static_cast<long>(2 * j + 1)) = v[j].imag();
    }
    return r;
}

inline ComplexVector to_complex(const Eigen::VectorXd& r) {
    ComplexVector v(static_cast<std::size_t>(r.size() / 2));
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = {r(static_cast<long>(2 * j)), r(static_cast<long>(2 * j + 1))};
    return v;
}

// ---------------------------------------------------------------------------
// Normal families

/// n_μ = μ·conj_dF + conj(μ)·dbarF, kept symbolically.
struct SymbolicNormalFamily {
    std::vector<MixedPolynomial> conj_dF;
    std::vector<MixedPolynomial> dbarF;
};

inline SymbolicNormalFamily normal_family_symbolic(const MixedPolynomial& f) {
    auto w = wirtinger(f);
    SymbolicNormalFamily out;
    for (auto& d : w.dF) out.conj_dF.push_back(conjugate(d));
    out.dbarF = std::move(w.dbarF);
    return out;
}

/// The same family written through the pair: μ·g·conj(df) + conj(μ)·f·conj(dg).
inline SymbolicNormalFamily normal_family_symbolic(const MixedPolynomial& f, const MixedPolynomial& g) {
    if (!f.is_holomorphic() || !g.is_holomorphic()) throw NotHolomorphic("pair must be holomorphic");
    SymbolicNormalFamily out;
    for (std::size_t j = 0; j < f.n_vars(); ++j) {
        out.conj_dF.push_back(g * conjugate(f.derivative(j, false)));
        out.dbarF.push_back(f * conjugate(g.derivative(j, false)));
    }
    return out;
}

struct NormalFrame {
    ComplexPoint point;
    ComplexVector n_one;  // μ = 1
    ComplexVector n_i;    // μ = i
};

/// Exact frame entries at a Gaussian-rational point.
struct ExactFrame {
    std::vector<ComplexRational> n_one;
    std::vector<ComplexRational> n_i;
    friend bool operator==(const ExactFrame&, const ExactFrame&) = default;
};

inline ExactFrame exact_frame(const SymbolicNormalFamily& fam, std::span<const ComplexRational> z) {
    ExactFrame out;
    const ComplexRational i = ComplexRational::i();
    for (std::size_t j = 0; j < fam.conj_dF.size(); ++j) {
        ComplexRational a = fam.conj_dF[j].evaluate_exact(z);
        ComplexRational b = fam.dbarF[j].evaluate_exact(z);
        out.n_one.push_back(a + b);
        out.n_i.push_back(i * a - i * b);
    }
    return out;
}

/// Evaluates frames of one polynomial; entries below the rounding floor of their evaluation are zeroed.
class FrameEvaluator {
public:
    explicit FrameEvaluator(const MixedPolynomial& f, double noise_factor = 1e-13)
        : f_(f), grad_(wirtinger(f)), noise_(noise_factor) {}

    const MixedPolynomial& polynomial() const { return f_; }
    std::size_t n_vars() const { return f_.n_vars(); }

    NormalFrame frame(std::span<const Complex> z) const {
        if (z.size() != f_.n_vars()) throw DimensionMismatch("normal_family: point has wrong dimension");
        require_finite(z);
        NormalFrame fr;
        fr.point.assign(z.begin(), z.end());
        const Complex i(0.0, 1.0);
        for (std::size_t j = 0; j < z.size(); ++j) {
            const auto a = grad_.dF[j].evaluate_bounded(z);
            const auto b = grad_.dbarF[j].evaluate_bounded(z);
            const Complex ca = std::conj(a.value);
            const double floor = noise_ * (a.magnitude + b.magnitude);
            Complex one = ca + b.value;
            Complex im = i * ca - i * b.value;
            if (std::abs(one) <= floor) one = 0.0;
            if (std::abs(im) <= floor) im = 0.0;
            fr.n_one.push_back(one);
            fr.n_i.push_back(im);
        }
        return fr;
    }

    /// a = conj(dF)(z), b = dbarF(z).
    std::pair<ComplexVector, ComplexVector> gradients(std::span<const Complex> z) const {
        ComplexVector a, b;
        for (std::size_t j = 0; j < z.size(); ++j) {
            a.push_back(std::conj(grad_.dF[j].evaluate(z)));
            b.push_back(grad_.dbarF[j].evaluate(z));
        }
        return {a, b};
    }

private:
    MixedPolynomial f_;
    WirtingerGradient grad_;
    double noise_;
};

inline NormalFrame normal_family(const MixedPolynomial& f, std::span<const Complex> z) {
    return FrameEvaluator(f).frame(z);
}

inline ComplexVector frame_member(const NormalFrame& fr, Complex mu) {
    // n_μ = Re μ · n_one + Im μ · n_i
    ComplexVector v(fr.n_one.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = mu.real() * fr.n_one[j] + mu.imag() * fr.n_i[j];
    return v;
}

// ---------------------------------------------------------------------------
// Real planes

struct RealPlane {
    Eigen::MatrixXd basis;  // 2n × d, orthonormal columns; d ∈ {0, 1, 2}
    long dim() const { return basis.cols(); }
};

/// Orthonormal basis of the real span of the two frame vectors. Rank is decided
/// on the normalized columns so that unequal scaling does not read as degeneracy.
inline RealPlane real_span(const ComplexVector& a, const ComplexVector& b, double rank_tol = 1e-10) {
    std::vector<Eigen::VectorXd> cols;
    for (const auto* v : {&a, &b}) {
        Eigen::VectorXd r = to_real(*v);
        const double nrm = r.norm();
        if (nrm > 0.0 && std::isfinite(nrm)) cols.push_back(r / nrm);
    }
    const long n2 = static_cast<long>(2 * a.size());
    RealPlane p;
    if (cols.empty()) {
        p.basis = Eigen::MatrixXd(n2, 0);
        return p;
    }
    Eigen::VectorXd q1 = cols[0];
    if (cols.size() == 1) {
        p.basis = q1;
        return p;
    }
    Eigen::VectorXd r = cols[1] - q1.dot(cols[1]) * q1;
    r -= q1.dot(r) * q1;
    if (r.norm() <= rank_tol) {
        p.basis = q1;
        return p;
    }
    p.basis.resize(n2, 2);
    p.basis.col(0) = q1;
    p.basis.col(1) = r / r.norm();
    return p;
}

inline RealPlane real_span(const NormalFrame& fr, double rank_tol = 1e-10) { return real_span(fr.n_one, fr.n_i, rank_tol); }

/// Orthonormal basis of the real span of arbitrary complex vectors.
inline Eigen::MatrixXd real_orthonormal_basis(const std::vector<ComplexVector>& vs, double tol = 1e-12) {
    if (vs.empty()) return Eigen::MatrixXd(0, 0);
    const long n2 = static_cast<long>(2 * vs.front().size());
    Eigen::MatrixXd m(n2, static_cast<long>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<long>(k)) = to_real(vs[k]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    long rank = 0;
    const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    for (long k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > tol * std::max(top, 1.0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

/// Geodesic distance on the Grassmannian: sqrt(Σ θ_k²) over principal angles.
/// Infinite when dimensions differ.
inline double grassmann_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    if (a.cols() == 0) return 0.0;
    const Eigen::MatrixXd m = a.transpose() * b;
    Eigen::JacobiSVD<Eigen::MatrixXd> cs(m);
    const Eigen::MatrixXd resid = b - a * m;
    Eigen::JacobiSVD<Eigen::MatrixXd> ss(resid);
    const long d = a.cols();
    double sum = 0.0;
    for (long k = 0; k < d; ++k) {
        const double c = std::min(1.0, cs.singularValues()(k));            // descending cosines
        const double s = std::min(1.0, ss.singularValues()(d - 1 - k));    // ascending sines
        const double theta = std::atan2(s, c);
        sum += theta * theta;
    }
    return std::sqrt(sum);
}

inline double grassmann_distance(const RealPlane& a, const RealPlane& b) { return grassmann_distance(a.basis, b.basis); }

// ---------------------------------------------------------------------------
// Curves and strata

/// z(t) = (c_1(t), ..., c_n(t)), t real, approached along t_j = t0·ρ^j.
struct CurveGerm {
    std::vector<UniPolynomial> components;
    std::vector<std::string> source;  // textual components, echoed in reports

    ComplexPoint at(double t) const {
        ComplexPoint z;
        for (const auto& c : components) {
            Complex s(0.0, 0.0);
            for (const auto& [e, coef] : c) s += coef.to_complex() * std::pow(t, static_cast<int>(e));
            z.push_back(s);
        }
        return z;
    }
    ComplexPoint target() const { return at(0.0); }
};

inline CurveGerm parse_curve(const std::vector<std::string>& components, const std::string& param = "t") {
    CurveGerm c;
    for (const auto& s : components) {
        c.components.push_back(parse_real_parameter_polynomial(s, param));
        c.source.push_back(s);
    }
    return c;
}

struct Stratum {
    ComplexPoint base_point;
    std::vector<ComplexVector> tangent;  // real-span semantics

    void validate() const {
        require_finite(base_point);
        for (const auto& v : tangent)
            if (v.size() != base_point.size()) throw DimensionMismatch("stratum tangent has wrong dimension");
        if (!tangent.empty() && real_orthonormal_basis(tangent).cols() != static_cast<long>(tangent.size()))
            throw std::invalid_argument("stratum tangent vectors are not real-independent");
    }
};

/// Complex line through the base point along `direction` (both real directions v, i·v).
inline Stratum complex_line_stratum(ComplexPoint base, const ComplexVector& direction) {
    ComplexVector iv(direction.size());
    for (std::size_t j = 0; j < iv.size(); ++j) iv[j] = Complex(0.0, 1.0) * direction[j];
    return Stratum{std::move(base), {direction, iv}};
}

// ---------------------------------------------------------------------------
// Limits along curves

struct ProbeOptions {
    double t0 = 0.1;
    double rho = 0.5;
    int shells = 60;
    double convergence_tol = 1e-6;
    int convergence_run = 3;
    double rank_tol = 1e-10;
    double fail_tol = 1e-4;
    double compatible_tol = 1e-8;
};

enum class ProbeVerdict { compatible, fail_witness, inconclusive };

inline const char* to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::compatible: return "compatible";
        case ProbeVerdict::fail_witness: return "fail-witness";
        case ProbeVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct PlaneLimit {
    bool converged = false;
    RealPlane plane;
    std::vector<double> convergence;  // distances between consecutive same-dimension shells
    std::vector<long> dims;           // per shell
    int shells_used = 0;
    double last_t = 0.0;
    NormalFrame last_frame;
    std::string note;
};

namespace detail {
inline std::string short_number(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", t);
    return buf;
}
}  // namespace detail

inline PlaneLimit limit_normal_plane(const FrameEvaluator& ev, const CurveGerm& c, const ProbeOptions& opt = {}) {
    if (c.components.size() != ev.n_vars()) throw DimensionMismatch("curve has wrong dimension");
    PlaneLimit out;
    int run = 0;
    std::optional<RealPlane> prev;
    double t = opt.t0;
    for (int j = 0; j < opt.shells; ++j, t *= opt.rho) {
        const ComplexPoint z = c.at(t);
        NormalFrame fr = ev.frame(z);
        RealPlane p = real_span(fr, opt.rank_tol);
        const bool converged_now = run >= opt.convergence_run;
        if (p.dim() == 0 || (prev && p.dim() != prev->dim())) {
            if (converged_now) {
                out.note = "dimension changed after convergence at t = " + detail::short_number(t) + "; limit taken before it";
                break;
            }
            if (p.dim() == 0) {
                out.note = "both frame vectors vanish along the curve";
                out.dims.push_back(0);
                out.shells_used = j + 1;
                return out;
            }
            out.note = "normal plane dimension changes along the curve";
            out.dims.push_back(p.dim());
            out.shells_used = j + 1;
            return out;
        }
        if (prev) {
            const double d = grassmann_distance(*prev, p);
            // past the noise floor: once converged, a growing step means round-off dominates
            if (converged_now && !out.convergence.empty() && d > out.convergence.back()) {
                out.note = "rounding floor reached at t = " + detail::short_number(t) + "; limit taken before it";
                break;
            }
            out.convergence.push_back(d);
            run = d < opt.convergence_tol ? run + 1 : 0;
        }
        out.dims.push_back(p.dim());
        out.shells_used = j + 1;
        out.last_t = t;
        out.last_frame = std::move(fr);
        prev = std::move(p);
    }
    out.converged = run >= opt.convergence_run;
    if (prev) out.plane = *prev;
    if (!out.converged && out.note.empty()) out.note = "no convergence within the shell schedule";
    return out;
}

inline PlaneLimit limit_normal_plane(const MixedPolynomial& f, const CurveGerm& c, const ProbeOptions& opt = {}) {
    return limit_normal_plane(FrameEvaluator(f), c, opt);
}

struct DirectionLimit {
    bool converged = false;
    ComplexVector direction;  // unit vector
    std::vector<double> convergence;
};

/// Limit of n_μ/|n_μ| along the curve, compared up to sign.
inline DirectionLimit limit_normal_direction(const FrameEvaluator& ev, const CurveGerm& c, Complex mu,
                                             const ProbeOptions& opt = {}) {
    DirectionLimit out;
    int run = 0;
    std::optional<Eigen::VectorXd> prev;
    double t = opt.t0;
    for (int j = 0; j < opt.shells; ++j, t *= opt.rho) {
        const auto fr = ev.frame(c.at(t));
        Eigen::VectorXd v = to_real(frame_member(fr, mu));
        const double nrm = v.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
        v /= nrm;
        if (prev) {
            const double d = std::min((v - *prev).norm(), (v + *prev).norm());
            out.convergence.push_back(d);
            run = d < opt.convergence_tol ? run + 1 : 0;
        }
        prev = v;
    }
    out.converged = run >= opt.convergence_run;
    if (prev) out.direction = to_complex(*prev);
    return out;
}

struct Witness {
    std::size_t curve_index = 0;
    Complex mu{1.0, 0.0};
    ComplexVector stratum_direction;  // unit tangent vector with the largest normal component
    ComplexVector normal_direction;   // its projection onto the limit plane, normalized
    double projection = 0.0;
};

struct CurveProbe {
    PlaneLimit limit;
    double projection = 0.0;  // max ‖proj_N(v)‖ over unit stratum tangents v
};

struct ProbeResult {
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    std::vector<CurveProbe> curves;
    std::optional<Witness> witness;
    RealPlane limit_plane;  // of the witness curve, or of the last converged curve
};

/// μ (unit) whose n_μ at the given frame best matches direction w.
inline Complex mu_for_direction(const NormalFrame& fr, const Eigen::VectorXd& w) {
    Eigen::VectorXd a = to_real(fr.n_one), b = to_real(fr.n_i);
    const double na = a.norm(), nb = b.norm();
    Eigen::MatrixXd m(a.size(), 2);
    m.col(0) = na > 0 ? Eigen::VectorXd(a / na) : a;
    m.col(1) = nb > 0 ? Eigen::VectorXd(b / nb) : b;
    Eigen::Vector2d c = m.colPivHouseholderQr().solve(w);
    const double alpha = na > 0 ? c(0) / na : 0.0;
    const double beta = nb > 0 ? c(1) / nb : 0.0;
    Complex mu(alpha, beta);
    const double r = std::abs(mu);
    return r > 0 ? mu / r : Complex(1.0, 0.0);
}

inline ProbeResult thom_test(const MixedPolynomial& f, const Stratum& s, const std::vector<CurveGerm>& curves,
                             const ProbeOptions& opt = {}) {
    s.validate();
    if (s.base_point.size() != f.n_vars()) throw DimensionMismatch("stratum has wrong dimension");
    for (const auto& c : curves) {
        const auto tgt = c.target();
        double err = 0.0;
        for (std::size_t j = 0; j < tgt.size(); ++j) err = std::max(err, std::abs(tgt[j] - s.base_point[j]));
        if (tgt.size() != s.base_point.size() || err > 1e-12)
            throw std::invalid_argument("curve does not target the stratum base point");
    }
    const FrameEvaluator ev(f);
    const Eigen::MatrixXd tangent = real_orthonormal_basis(s.tangent);

    ProbeResult out;
    bool all_converged = true;
    bool all_small = true;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        CurveProbe cp;
        cp.limit = limit_normal_plane(ev, curves[k], opt);
        if (!cp.limit.converged) {
            all_converged = false;
            out.curves.push_back(std::move(cp));
            continue;
        }
        const Eigen::MatrixXd& n = cp.limit.plane.basis;
        if (tangent.cols() > 0 && n.cols() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(n.transpose() * tangent, Eigen::ComputeFullV);
            cp.projection = svd.singularValues()(0);
            if (cp.projection > opt.fail_tol && !out.witness) {
                Witness w;
                w.curve_index = k;
                const Eigen::VectorXd v = tangent * svd.matrixV().col(0);
                Eigen::VectorXd pv = n * (n.transpose() * v);
                w.projection = cp.projection;
                pv /= pv.norm();
                w.stratum_direction = to_complex(v);
                w.normal_direction = to_complex(pv);
                w.mu = mu_for_direction(cp.limit.last_frame, pv);
                out.witness = std::move(w);
                out.limit_plane = cp.limit.plane;
            }
        }
        if (cp.projection >= opt.compatible_tol) all_small = false;
        if (!out.witness) out.limit_plane = cp.limit.plane;
        out.curves.push_back(std::move(cp));
    }
    if (out.witness)
        out.verdict = ProbeVerdict::fail_witness;
    else if (all_converged && all_small && !curves.empty())
        out.verdict = ProbeVerdict::compatible;
    else
        out.verdict = ProbeVerdict::inconclusive;
    return out;
}

/// Monomial curves base + (w_1 t^{a_1}, ..., w_n t^{a_n}), a ∈ {1,2,3}^n, random unit w.
/// At most 27 curves; for n > 3 the exponent vectors are sampled.
inline std::vector<CurveGerm> default_curve_battery(const Stratum& s, std::uint64_t seed) {
    const std::size_t n = s.base_point.size();
    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> exps;
    if (n <= 3) {
        std::size_t total = 1;
        for (std::size_t j = 0; j < n; ++j) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<std::uint32_t> a(n);
            std::size_t c = code;
            for (std::size_t j = 0; j < n; ++j) {
                a[j] = static_cast<std::uint32_t>(c % 3 + 1);
                c /= 3;
            }
            exps.push_back(a);
        }
    } else {
        for (int k = 0; k < 27; ++k) {
            std::vector<std::uint32_t> a(n);
            for (auto& x : a) x = static_cast<std::uint32_t>(rng.integer(1, 3));
            exps.push_back(a);
        }
    }
    std::vector<CurveGerm> out;
    for (const auto& a : exps) {
        CurveGerm c;
        for (std::size_t j = 0; j < n; ++j) {
            UniPolynomial comp;
            const Complex b = s.base_point[j];
            const Complex w = rng.unit_complex();
            if (b != Complex(0.0, 0.0)) comp[0] = ComplexRational(Rational(b.real()), Rational(b.imag()));
            comp[a[j]] = ComplexRational(Rational(w.real()), Rational(w.imag()));
            c.components.push_back(std::move(comp));
            std::ostringstream os;
            os.precision(17);
            os << "(" << b.real() << "," << b.imag() << ") + (" << w.real() << "," << w.imag() << ")*t^" << a[j];
            c.source.push_back(os.str());
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// Moves a curve by the S¹-action λ·z_j = λ^{p_j} z_j.
inline CurveGerm transport(const CurveGerm& c, const PolarWeights& w, Complex lambda) {
    CurveGerm out = c;
    for (std::size_t j = 0; j < out.components.size(); ++j) {
        const Complex f = unit_power(lambda, w.p[j]);
        const ComplexRational fr(Rational(f.real()), Rational(f.imag()));
        for (auto& [e, coef] : out.components[j]) coef *= fr;
    }
    return out;
}

inline Stratum transport(const Stratum& s, const PolarWeights& w, Complex lambda) {
    Stratum out = s;
    for (std::size_t j = 0; j < out.base_point.size(); ++j) {
        const Complex f = unit_power(lambda, w.p[j]);
        out.base_point[j] *= f;
        for (auto& v : out.tangent) v[j] *= f;
    }
    return out;
}

}  // namespace mixsing
