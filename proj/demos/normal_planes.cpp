// Limits of normal planes of F_2 = conj(x) y (x + z^2) along (t, 1, 0).
//
// The limit plane is spanned by e1 and i*e2, so it meets the tangent line of
// the y-axis: the y-axis cannot be a Thom stratum even though F_2 is polar
// weighted-homogeneous and has a Milnor tube fibration.

#include "mixsing/mixsing.hpp"

#include <cstdio>

using namespace mixsing;

int main() {
    const std::vector<std::string> vars{"x", "y", "z"};
    const auto F = from_pair(parse_holomorphic("y*(x+z^2)", vars), parse_holomorphic("x", vars));
    std::printf("F = %s\n", format(F, vars).c_str());

    const auto fam = normal_family_symbolic(F);
    for (std::size_t j = 0; j < vars.size(); ++j)
        std::printf("  n_mu[%zu] = mu*(%s) + conj(mu)*(%s)\n", j, format(fam.conj_dF[j], vars).c_str(),
                    format(fam.dbarF[j], vars).c_str());

    const auto curve = parse_curve({"t", "1", "0"});
    const auto lim = limit_normal_plane(F, curve);
    std::printf("converged: %s after %d shells\n", lim.converged ? "yes" : "no", lim.shells_used);
    for (long c = 0; c < lim.plane.basis.cols(); ++c) {
        std::printf("  basis %ld:", c);
        for (long r = 0; r < lim.plane.basis.rows(); ++r) std::printf(" %+.6f", lim.plane.basis(r, c));
        std::printf("\n");
    }

    const auto s = complex_line_stratum({0.0, 1.0, 0.0}, {0.0, 1.0, 0.0});
    const auto res = thom_test(F, s, {curve});
    std::printf("thom test against the y-axis: %s", to_string(res.verdict));
    if (res.witness) std::printf(" (mu = %.6f%+.6fi)", res.witness->mu.real(), res.witness->mu.imag());
    std::printf("\n");

    const auto polar = solve_polar(F);
    if (polar.canonical) {
        std::printf("polar weights p = (");
        for (std::size_t j = 0; j < polar.canonical->p.size(); ++j)
            std::printf("%s%ld", j ? "," : "", polar.canonical->p[j]);
        std::printf("), k = %ld\n", polar.canonical->k);
    }
}
