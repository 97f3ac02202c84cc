#include "support.hpp"

#include <gtest/gtest.h>

using namespace mixsing;
using namespace testing_support;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MixedPolynomial M(const std::string& s, const std::vector<std::string>& v) { return parse_mixed(s, v); }
MixedPolynomial H(const std::string& s, const std::vector<std::string>& v) { return parse_holomorphic(s, v); }

ScanOptions quick_scan() {
    ScanOptions o;
    o.samples_per_shell = 40;
    o.radii = {0.2, 0.1, 0.05};
    return o;
}

// Smallest singular value of the 2×n holomorphic Jacobian of (f, g), built
// from the exact partial derivatives of each component separately.
double jacobian_sigma_min(const MixedPolynomial& f, const MixedPolynomial& g, const ComplexPoint& z) {
    const std::size_t n = z.size();
    const auto gf = wirtinger(f), gg = wirtinger(g);
    Eigen::MatrixXcd J(2, static_cast<long>(n));
    for (std::size_t j = 0; j < n; ++j) {
        J(0, static_cast<long>(j)) = gf.dF[j].evaluate(z);
        J(1, static_cast<long>(j)) = gg.dF[j].evaluate(z);
    }
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(J).singularValues()(1);
}

StratumProbe y_axis(std::size_t n, std::vector<CurveGerm> curves = {}) {
    ComplexPoint base(n, 0.0), dir(n, 0.0);
    base[1] = 1.0;
    dir[1] = 1.0;
    return {"y-axis", complex_line_stratum(base, dir), std::move(curves)};
}

}  // namespace

TEST(SingResidual, Examples) {
    const ComplexPoint one{1.0};
    EXPECT_NEAR(sing_residual(M("x*x~", X), one), 0.0, 1e-14);
    EXPECT_NEAR(sing_residual(M("x^2", X), one), 4.0, 1e-12);
    const ComplexPoint p{0.3, -0.7};
    EXPECT_NEAR(sing_residual(M("x + y + x~", XY), p), 2.0 - std::sqrt(2.0), 1e-12);
}

TEST(SingResidual, NonnegativeOnRandomPolynomials) {
    Rng rng(41);
    for (int c = 0; c < 200; ++c) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        const auto f = random_mixed(rng, n);
        EXPECT_GE(sing_residual(f, random_point(rng, n)), 0.0);
    }
}

TEST(SingResidual, VanishesOnSquaredModulus) {
    // h·conj(h) has conj(dF) = dbarF everywhere
    Rng rng(42);
    for (int c = 0; c < 100; ++c) {
        const auto h = random_holomorphic(rng, 3);
        const auto F = h * conjugate(h);
        const auto z = random_point(rng, 3);
        const auto g = wirtinger(F);
        double scale = 0.0;
        for (const auto& d : g.dF) scale += std::norm(d.evaluate(z));
        EXPECT_LE(sing_residual(F, z), 1e-12 * (1.0 + scale));
    }
}

TEST(SingResidual, HolomorphicRegularPointsAreRegular) {
    Rng rng(43);
    const auto F = M("x + y^2 - 3*z", XYZ);
    for (int c = 0; c < 100; ++c) EXPECT_GT(sing_residual(F, random_point(rng, 3)), 1e-6);
}

TEST(SingResidual, ShearPairSingularAlongAxis) {
    const auto f = H("x", XY), g = H("x+y^2", XY);
    const auto F = from_pair(f, g);
    Rng rng(44);
    for (int c = 0; c < 50; ++c) {
        const ComplexPoint on{rng.unit_complex() * 0.5, 0.0};
        EXPECT_LE(sing_residual(F, on), 1e-14);
        EXPECT_LE(jacobian_sigma_min(f, g, on), 1e-12);
        ComplexPoint off = random_point(rng, 2);
        if (std::abs(off[1]) < 0.1) off[1] = 0.5;
        EXPECT_GT(sing_residual(F, off), 0.0);
    }
}

TEST(SingResidual, FullRankJacobianGivesPositiveResidual) {
    // singular points of f·conj(g) off V have dependent holomorphic gradients
    Rng rng(45);
    int checked = 0;
    for (int c = 0; c < 200; ++c) {
        const auto f = random_holomorphic(rng, 2), g = random_holomorphic(rng, 2);
        const auto F = from_pair(f, g);
        const auto z = random_point(rng, 2);
        if (std::abs(F.evaluate(z)) < 1e-6 || jacobian_sigma_min(f, g, z) < 1e-3) continue;
        ++checked;
        EXPECT_GT(sing_residual(F, z), 0.0) << format(F);
    }
    EXPECT_GT(checked, 50);
}

TEST(MilnorResidual, Examples) {
    const ComplexPoint one{1.0};
    EXPECT_NEAR(milnor_residual(M("x", X), one).value, 0.0, 1e-12);
    const auto F = M("x", XY);
    EXPECT_NEAR(milnor_residual(F, ComplexPoint{0.0, 1.0}).value, 1.0, 1e-12);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(milnor_residual(F, ComplexPoint{s, s}).value, s, 1e-12);
    EXPECT_TRUE(milnor_residual(M("x*x~", X), one).degenerate);
    EXPECT_THROW(milnor_residual(F, ComplexPoint{0.0, 0.0}), std::invalid_argument);
}

TEST(MilnorResidual, RangeAndRadialInvariance) {
    Rng rng(46);
    const auto homogeneous = M("x*y + z^2", XYZ);
    for (int c = 0; c < 200; ++c) {
        const auto f = random_mixed(rng, 3);
        const auto z = random_point(rng, 3);
        const auto r = milnor_residual(f, z);
        EXPECT_GE(r.value, 0.0);
        EXPECT_LE(r.value, 1.0);
        ComplexPoint w = z;
        for (auto& c2 : w) c2 *= 2.5;
        EXPECT_NEAR(milnor_residual(homogeneous, z).value, milnor_residual(homogeneous, w).value, 1e-10);
    }
}

TEST(DistanceToZeroSet, LinearIsExact) {
    const auto F = M("x", XY);
    EXPECT_NEAR(distance_to_zero_set(FrameEvaluator(F), ComplexPoint{Complex(0.3, 0.4), 2.0}), 0.5, 1e-12);
}

TEST(MilnorScan, LinearFunctionRatioIsOne) {
    const auto ev = milnor_scan(M("x", XY), quick_scan());
    ASSERT_TRUE(ev.fitted_c);
    EXPECT_NEAR(*ev.fitted_c, 1.0, 1e-3);
    EXPECT_TRUE(ev.supports);
    for (const auto& sh : ev.shells) EXPECT_GT(sh.count, 0u);
}

TEST(MilnorScan, XYXbarStaysAwayFromV) {
    const auto ev = milnor_scan(M("x*y*x~", XY), quick_scan());
    EXPECT_TRUE(ev.supports);
    if (ev.fitted_c) {
        EXPECT_GE(*ev.fitted_c, 1e-3);
    }
}

TEST(MilnorScan, RejectsBadRadii) {
    ScanOptions o;
    o.radii = {0.1, 0.2};
    EXPECT_THROW(milnor_scan(M("x", XY), o), std::invalid_argument);
}

TEST(SingScan, ShearPairFindsSingularPointsOffV) {
    const auto ev = sing_scan(from_pair(H("x", XY), H("x+y^2", XY)), quick_scan());
    EXPECT_FALSE(ev.supports);
    for (const auto& sh : ev.shells) EXPECT_GT(sh.count, 0u);
}

TEST(SingScan, HolomorphicLinearHasNone) {
    const auto ev = sing_scan(M("x + 2*y", XY), quick_scan());
    EXPECT_TRUE(ev.supports);
    EXPECT_FALSE(ev.fitted_c);
}

TEST(TubeVerdict, XYXbarFailsThom) {
    VerdictInput in;
    in.pair = HolomorphicPair{H("x*y", XY), H("x", XY)};
    in.F = from_pair(in.pair->f, in.pair->g);
    in.strata.push_back(y_axis(2, {parse_curve({"t", "1"})}));
    const auto v = tube_verdict(in);
    EXPECT_EQ(v.tube, TubeStatus::yes);
    EXPECT_EQ(v.tube_route, route::polar);
    EXPECT_EQ(v.thom, ThomStatus::fail);
    EXPECT_EQ(v.thom_route, route::probe_witness);
    const auto& w = *v.probes.at(0).result.witness;
    EXPECT_NEAR(std::abs(w.mu - Complex(0, 1)), 0.0, 1e-6);
}

TEST(TubeVerdict, ShearPairHasNoTube) {
    VerdictInput in;
    in.pair = HolomorphicPair{H("x", XY), H("x+y^2", XY)};
    in.F = from_pair(in.pair->f, in.pair->g);
    const auto v = tube_verdict(in);
    EXPECT_EQ(v.tube, TubeStatus::no);
    EXPECT_EQ(v.tube_route, route::disc_lines);
    EXPECT_NE(v.thom, ThomStatus::regular);
}

TEST(TubeVerdict, SeparateVariables) {
    VerdictInput in;
    in.pair = HolomorphicPair{H("x^2", XY), H("y^3", XY)};
    in.F = from_pair(in.pair->f, in.pair->g);
    const auto v = tube_verdict(in);
    EXPECT_EQ(v.tube, TubeStatus::yes);
    EXPECT_EQ(v.tube_route, route::separate_variables);
    EXPECT_EQ(v.thom, ThomStatus::regular);
    EXPECT_TRUE(separate_variables(H("x^2", XYZ), H("y*z", XYZ)));
    EXPECT_FALSE(separate_variables(H("x^2", XYZ), H("x*z", XYZ)));
    EXPECT_FALSE(separate_variables(H("1", XYZ), H("z", XYZ)));
}

TEST(TubeVerdict, IcisFlagNeedsCertifiedDiscriminant) {
    VerdictInput in;
    in.pair = HolomorphicPair{H("x^2 - z*y^2", XYZ), H("y", XYZ)};
    in.F = from_pair(in.pair->f, in.pair->g);
    VerdictOptions opt;
    opt.assert_icis = true;
    const auto v = tube_verdict(in, opt);
    ASSERT_TRUE(v.isolated);
    EXPECT_EQ(v.isolated->status, IsolatedStatus::isolated);
    EXPECT_EQ(v.thom, ThomStatus::regular);
    EXPECT_EQ(v.thom_route, route::icis_flag);

    VerdictInput shear;
    shear.pair = HolomorphicPair{H("x", XY), H("x+y^2", XY)};
    shear.F = from_pair(shear.pair->f, shear.pair->g);
    const auto w = tube_verdict(shear, opt);
    EXPECT_EQ(w.tube, TubeStatus::no);
    EXPECT_NE(w.thom, ThomStatus::regular);
    EXPECT_FALSE(w.notes.empty());
}

TEST(TubeVerdict, NeverNoTubeWithThomRegular) {
    Rng rng(47);
    for (int c = 0; c < 40; ++c) {
        VerdictInput in;
        in.pair = HolomorphicPair{random_holomorphic(rng, 2, 2, 2), random_holomorphic(rng, 2, 2, 2)};
        in.F = from_pair(in.pair->f, in.pair->g);
        VerdictOptions opt;
        opt.assert_icis = rng.integer(0, 1) == 1;
        const auto v = tube_verdict(in, opt);
        EXPECT_FALSE(v.tube == TubeStatus::no && v.thom == ThomStatus::regular) << format(in.F);
        for (const auto& r : v.routes) EXPECT_FALSE(r.name.empty());
    }
}

TEST(TubeVerdict, WitnessReplayIsDeterministic) {
    VerdictInput in;
    in.F = M("x~*y*(x+z^2)", XYZ);
    in.strata.push_back(y_axis(3));
    const auto a = tube_verdict(in), b = tube_verdict(in);
    ASSERT_EQ(a.thom, ThomStatus::fail);
    ASSERT_EQ(a.probes.size(), b.probes.size());
    const auto& wa = *a.probes[0].result.witness;
    const auto& wb = *b.probes[0].result.witness;
    EXPECT_EQ(wa.curve_index, wb.curve_index);
    EXPECT_EQ(wa.mu, wb.mu);
    for (std::size_t k = 0; k < a.probes[0].curves.size(); ++k)
        EXPECT_EQ(a.probes[0].curves[k].source, b.probes[0].curves[k].source);
    // replaying the witness curve alone reproduces the failure
    const auto& s = in.strata[0].stratum;
    const auto replay = thom_test(in.F, s, {a.probes[0].curves[wa.curve_index]});
    EXPECT_EQ(replay.verdict, ProbeVerdict::fail_witness);
    EXPECT_NEAR(replay.curves[0].projection, wa.projection, 1e-12);
}
