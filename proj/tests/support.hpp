// Random instance generators and independent oracles shared by the test suites.
#pragma once

#include "mixsing/mixsing.hpp"

#include <map>
#include <string>
#include <vector>

namespace testing_support {

using namespace mixsing;

inline ComplexRational random_coefficient(Rng& rng, bool allow_imag = true) {
    const long a = rng.integer(-5, 5), b = rng.integer(1, 4);
    const long c = allow_imag ? rng.integer(-3, 3) : 0, d = rng.integer(1, 3);
    ComplexRational out(Rational(a, b), Rational(c, d));
    if (out.is_zero()) out = ComplexRational(1);
    return out;
}

inline MixedPolynomial random_mixed(Rng& rng, std::size_t n, unsigned max_degree = 4, int max_terms = 5) {
    MixedPolynomial p(n);
    const int terms = static_cast<int>(rng.integer(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        ExponentPair e{Exponents(n, 0), Exponents(n, 0)};
        const long deg = rng.integer(0, max_degree);
        for (long k = 0; k < deg; ++k) {
            const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
            (rng.integer(0, 1) ? e.nu : e.mu)[j] += 1;
        }
        p.add_term(e, random_coefficient(rng));
    }
    return p;
}

inline MixedPolynomial random_holomorphic(Rng& rng, std::size_t n, unsigned max_degree = 3, int max_terms = 3,
                                          bool vanish_at_origin = true) {
    MixedPolynomial p(n);
    const int terms = static_cast<int>(rng.integer(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        ExponentPair e{Exponents(n, 0), Exponents(n, 0)};
        const long deg = rng.integer(vanish_at_origin ? 1 : 0, max_degree);
        for (long k = 0; k < deg; ++k) e.nu[static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1))] += 1;
        p.add_term(e, random_coefficient(rng, false));
    }
    if (p.is_zero()) p = MixedPolynomial::variable(n, 0);
    return p;
}

inline ComplexPoint random_point(Rng& rng, std::size_t n, double scale = 1.0) {
    ComplexPoint z(n);
    for (auto& c : z) c = Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
    return z;
}

inline std::vector<ComplexRational> random_rational_point(Rng& rng, std::size_t n) {
    std::vector<ComplexRational> z;
    for (std::size_t j = 0; j < n; ++j)
        z.emplace_back(Rational(rng.integer(-9, 9), rng.integer(1, 5)), Rational(rng.integer(-9, 9), rng.integer(1, 5)));
    return z;
}

// ---------------------------------------------------------------------------
// Differentiation oracle: each monomial is spelled out as a word of symbols
// ("z0", "z0", "c1", ...) and differentiated by the product rule letter by
// letter, without touching exponent vectors.

struct Word {
    ComplexRational coef;
    std::vector<std::string> letters;
};

inline std::vector<Word> spell(const MixedPolynomial& f) {
    std::vector<Word> out;
    for (const auto& [e, c] : f.terms()) {
        Word w{c, {}};
        for (std::size_t j = 0; j < e.nu.size(); ++j) {
            for (std::uint32_t k = 0; k < e.nu[j]; ++k) w.letters.push_back("z" + std::to_string(j));
            for (std::uint32_t k = 0; k < e.mu[j]; ++k) w.letters.push_back("c" + std::to_string(j));
        }
        out.push_back(std::move(w));
    }
    return out;
}

inline std::vector<Word> differentiate(const std::vector<Word>& words, const std::string& letter) {
    std::vector<Word> out;
    for (const auto& w : words)
        for (std::size_t k = 0; k < w.letters.size(); ++k)
            if (w.letters[k] == letter) {
                Word d{w.coef, w.letters};
                d.letters.erase(d.letters.begin() + static_cast<long>(k));
                out.push_back(std::move(d));
            }
    return out;
}

inline MixedPolynomial assemble(const std::vector<Word>& words, std::size_t n) {
    MixedPolynomial out(n);
    for (const auto& w : words) {
        ExponentPair e{Exponents(n, 0), Exponents(n, 0)};
        for (const auto& l : w.letters) {
            const auto j = static_cast<std::size_t>(std::stoul(l.substr(1)));
            (l[0] == 'z' ? e.nu : e.mu)[j] += 1;
        }
        out.add_term(e, w.coef);
    }
    return out;
}

inline MixedPolynomial oracle_derivative(const MixedPolynomial& f, std::size_t j, bool conjugate_slot) {
    return assemble(differentiate(spell(f), (conjugate_slot ? "c" : "z") + std::to_string(j)), f.n_vars());
}

/// Direct substitution with complex doubles, one letter at a time.
inline Complex oracle_evaluate(const MixedPolynomial& f, const ComplexPoint& z) {
    Complex s(0.0, 0.0);
    for (const auto& w : spell(f)) {
        Complex t = w.coef.to_complex();
        for (const auto& l : w.letters) {
            const auto j = static_cast<std::size_t>(std::stoul(l.substr(1)));
            t *= l[0] == 'z' ? z[j] : std::conj(z[j]);
        }
        s += t;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Polar oracle: brute-force enumeration of (p, k) in a box.

inline std::optional<PolarWeights> brute_force_polar(const MixedPolynomial& f, long box) {
    const std::size_t n = f.n_vars();
    std::optional<PolarWeights> best;
    std::vector<long> p(n, -box);
    while (true) {
        bool ok = std::all_of(p.begin(), p.end(), [](long x) { return x != 0; });
        if (ok) {
            long g = 0;
            for (long x : p) g = std::gcd(g, std::abs(x));
            ok = g == 1;
        }
        if (ok) {
            std::optional<long> k;
            for (const auto& [e, c] : f.terms()) {
                long s = 0;
                for (std::size_t j = 0; j < n; ++j)
                    s += p[j] * (static_cast<long>(e.nu[j]) - static_cast<long>(e.mu[j]));
                if (k && *k != s) {
                    ok = false;
                    break;
                }
                k = s;
            }
            if (ok && k && *k > 0) {
                PolarWeights w{p, *k};
                long sw = 0, sb = 0;
                for (long x : p) sw += std::abs(x);
                if (best)
                    for (long x : best->p) sb += std::abs(x);
                // minimal Σ|p|, then minimal k, then lexicographically largest p
                if (!best || sw < sb || (sw == sb && (w.k < best->k || (w.k == best->k && w.p > best->p)))) best = w;
            }
        }
        std::size_t j = 0;
        while (j < n && p[j] == box) p[j++] = -box;
        if (j == n) break;
        ++p[j];
    }
    return best;
}

// ---------------------------------------------------------------------------
// Numeric Lemma-2.7 oracle: t ↦ u(t)·conj(v(t)) on a small complex disk is
// singular along the branch iff |u' v̄| = |u v̄'| at every sampled t.

inline bool numeric_branch_singular(const PuiseuxBranch& b, Rng& rng) {
    auto u = [&](Complex t) { return std::pow(t, static_cast<int>(b.p)); };
    auto du = [&](Complex t) { return static_cast<double>(b.p) * std::pow(t, static_cast<int>(b.p) - 1); };
    auto v = [&](Complex t) {
        Complex s(0.0, 0.0);
        for (const auto& term : b.terms) s += term.coefficient * std::pow(t, static_cast<int>(term.exponent));
        return s;
    };
    auto dv = [&](Complex t) {
        Complex s(0.0, 0.0);
        for (const auto& term : b.terms)
            s += term.coefficient * static_cast<double>(term.exponent) *
                 std::pow(t, static_cast<int>(term.exponent) - 1);
        return s;
    };
    for (int k = 0; k < 12; ++k) {
        const Complex t = std::polar(rng.uniform(0.05, 0.3), rng.uniform(0.0, 6.283185307179586));
        // real Jacobian of φ = u·conj(v): det = |φ_t|² − |φ_t̄|²
        const double a = std::norm(du(t) * std::conj(v(t)));
        const double c = std::norm(u(t) * std::conj(dv(t)));
        if (std::abs(a - c) > 1e-9 * (a + c)) return false;
    }
    return true;
}

inline PuiseuxBranch random_branch(Rng& rng) {
    PuiseuxBranch b;
    b.p = static_cast<std::uint32_t>(rng.integer(1, 4));
    const long shape = rng.integer(0, 2);
    if (shape == 0) {
        // the line case u = t^p, v = a t^p
        b.terms.push_back({rng.unit_complex(), b.p});
        return b;
    }
    const long count = shape == 1 ? 1 : rng.integer(2, 3);
    std::uint32_t q = static_cast<std::uint32_t>(rng.integer(1, 4));
    for (long k = 0; k < count; ++k) {
        b.terms.push_back({rng.unit_complex(), q});
        q += static_cast<std::uint32_t>(rng.integer(1, 2));
    }
    return b;
}

}  // namespace testing_support
