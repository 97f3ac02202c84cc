/*
 * polar.hpp
 * ---------
 * Polar weighted-homogeneity: integer weights p (all nonzero, gcd 1) and a
 * degree k with Σ_j p_j (ν_j − μ_j) = k for every monomial of F.
 *
 * The linear system over (p, k) is solved on the integer lattice by
 * unimodular column reduction; its kernel columns form an exact basis of
 * every integer solution. Existence of an admissible point is then decided
 * exactly, and the canonical representative is searched level by level in
 * Σ|p_j|.
 */
#pragma once

#include "mixed_polynomial.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mixsing {

struct PolarWeights {
    std::vector<long> p;
    long k = 0;

    friend bool operator==(const PolarWeights&, const PolarWeights&) = default;
};

enum class PolarStatus { yes, no, unknown };

inline const char* to_string(PolarStatus s) {
    switch (s) {
        case PolarStatus::yes: return "yes";
        case PolarStatus::no: return "no";
        case PolarStatus::unknown: return "unknown";
    }
    return "unknown";
}

struct PolarOptions {
    bool allow_zero_k = false;
    long bound = 64;                  // Σ|p_j| cap for the canonical search
    std::size_t max_candidates = 20'000'000;
};

struct PolarSolution {
    PolarStatus status = PolarStatus::no;
    std::optional<PolarWeights> canonical;
    bool minimal = false;  // canonical is the bounded-search minimum, not just a witness
    std::vector<std::vector<Integer>> lattice_basis;  // each of length n + 1, last entry is k
    long bound_used = 0;
    std::string certificate;
};

class ZeroPolynomial : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// ν − μ for every term, deduplicated, in term order.
inline std::vector<std::vector<long>> exponent_differences(const MixedPolynomial& f) {
    std::vector<std::vector<long>> out;
    std::set<std::vector<long>> seen;
    for (const auto& [e, c] : f.terms()) {
        std::vector<long> d(f.n_vars());
        for (std::size_t j = 0; j < f.n_vars(); ++j)
            d[j] = static_cast<long>(e.nu[j]) - static_cast<long>(e.mu[j]);
        if (seen.insert(d).second) out.push_back(std::move(d));
    }
    return out;
}

namespace detail {

/// Integer kernel basis of A (rows × cols) by unimodular column operations.
inline std::vector<std::vector<Integer>> integer_kernel(std::vector<std::vector<Integer>> a, std::size_t cols) {
    const std::size_t rows = a.size();
    std::vector<std::vector<Integer>> u(cols, std::vector<Integer>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c) u[c][c] = 1;

    // column op helper: (col x, col y) <- (s x + t y, v x + w y), det = ±1
    auto combine = [&](std::size_t x, std::size_t y, const Integer& s, const Integer& t, const Integer& v,
                       const Integer& w) {
        for (std::size_t r = 0; r < rows; ++r) {
            Integer nx = s * a[r][x] + t * a[r][y];
            Integer ny = v * a[r][x] + w * a[r][y];
            a[r][x] = nx;
            a[r][y] = ny;
        }
        for (std::size_t r = 0; r < cols; ++r) {
            Integer nx = s * u[r][x] + t * u[r][y];
            Integer ny = v * u[r][x] + w * u[r][y];
            u[r][x] = nx;
            u[r][y] = ny;
        }
    };

    std::size_t pivot = 0;
    for (std::size_t r = 0; r < rows && pivot < cols; ++r) {
        for (std::size_t c = pivot + 1; c < cols; ++c) {
            if (a[r][c] == 0) continue;
            if (a[r][pivot] == 0) {
                combine(pivot, c, 0, 1, 1, 0);  // swap
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][pivot].get_mpz_t(), a[r][c].get_mpz_t());
            Integer ap = a[r][pivot] / g;
            Integer ac = a[r][c] / g;
            // [pivot, c] <- [s·pivot + t·c, −ac·pivot + ap·c]; det = s·ap + t·ac = 1
            combine(pivot, c, s, t, -ac, ap);
        }
        if (a[r][pivot] != 0) ++pivot;
    }
    std::vector<std::vector<Integer>> basis;
    for (std::size_t c = pivot; c < cols; ++c) {
        std::vector<Integer> v(cols);
        for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline long gcd_abs(const std::vector<long>& p) {
    long g = 0;
    for (long x : p) g = std::gcd(g, std::labs(x));
    return g;
}

/// True if a is preferred to b at equal Σ|p|.
inline bool polar_better(const PolarWeights& a, const PolarWeights& b) {
    if (std::labs(a.k) != std::labs(b.k)) return std::labs(a.k) < std::labs(b.k);
    if ((a.k > 0) != (b.k > 0)) return a.k > 0;
    return a.p > b.p;  // lexicographically largest
}

/// Rational RREF of the constraints p·(d_t − d_0) = 0; returns pivot rows.
struct ReducedConstraints {
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;
    // p[pivot_cols[i]] = Σ_f coeff[i][f] · p[free_cols[f]]
    std::vector<std::vector<Rational>> coeff;
};

inline ReducedConstraints reduce_constraints(const std::vector<std::vector<long>>& diffs, std::size_t n) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t t = 1; t < diffs.size(); ++t) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = diffs[t][j] - diffs[0][j];
        m.push_back(std::move(row));
    }
    ReducedConstraints out;
    std::size_t r = 0;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t sel = r;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t o = 0; o < m.size(); ++o) {
            if (o == r || m[o][c] == 0) continue;
            Rational f = m[o][c];
            for (std::size_t j = 0; j < n; ++j) m[o][j] -= f * m[r][j];
        }
        out.pivot_cols.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) out.free_cols.push_back(c);
    for (std::size_t i = 0; i < out.pivot_cols.size(); ++i) {
        std::vector<Rational> row;
        for (std::size_t f : out.free_cols) row.push_back(-m[i][f]);
        out.coeff.push_back(std::move(row));
    }
    return out;
}

}  // namespace detail

inline bool is_polar_weights(const MixedPolynomial& f, const PolarWeights& w, bool allow_zero_k = false) {
    if (w.p.size() != f.n_vars() || f.is_zero()) return false;
    if (std::any_of(w.p.begin(), w.p.end(), [](long x) { return x == 0; })) return false;
    if (!allow_zero_k && w.k == 0) return false;
    if (detail::gcd_abs(w.p) != 1) return false;
    for (const auto& d : exponent_differences(f)) {
        long s = 0;
        for (std::size_t j = 0; j < d.size(); ++j) s += w.p[j] * d[j];
        if (s != w.k) return false;
    }
    return true;
}

inline PolarSolution solve_polar(const MixedPolynomial& f, const PolarOptions& opt = {}) {
    if (f.is_zero()) throw ZeroPolynomial("solve_polar: zero polynomial");
    const std::size_t n = f.n_vars();
    const auto diffs = exponent_differences(f);

    std::vector<std::vector<Integer>> a;
    for (const auto& d : diffs) {
        std::vector<Integer> row(n + 1);
        for (std::size_t j = 0; j < n; ++j) row[j] = d[j];
        row[n] = -1;
        a.push_back(std::move(row));
    }

    PolarSolution sol;
    sol.lattice_basis = detail::integer_kernel(a, n + 1);
    sol.bound_used = opt.bound;

    // An admissible point exists iff no required coordinate vanishes on the whole kernel.
    for (std::size_t j = 0; j <= n; ++j) {
        if (j == n && opt.allow_zero_k) continue;
        bool all_zero = std::all_of(sol.lattice_basis.begin(), sol.lattice_basis.end(),
                                    [&](const auto& v) { return v[j] == 0; });
        if (all_zero) {
            sol.status = PolarStatus::no;
            sol.certificate = j == n ? "k vanishes on every integer solution"
                                     : "p" + std::to_string(j + 1) + " vanishes on every integer solution";
            return sol;
        }
    }

    // Level-wise search over Σ|p_j| = s, enumerating only free coordinates.
    const auto rc = detail::reduce_constraints(diffs, n);
    const long min_level = static_cast<long>(n);
    std::size_t visited = 0;
    bool budget_hit = false;

    for (long s = min_level; s <= opt.bound && !budget_hit; ++s) {
        std::optional<PolarWeights> best;
        std::vector<long> p(n, 0);
        const long free_budget = s - static_cast<long>(rc.pivot_cols.size());

        std::function<void(std::size_t, long)> dfs = [&](std::size_t idx, long used) {
            if (budget_hit) return;
            if (idx == rc.free_cols.size()) {
                if (++visited > opt.max_candidates) {
                    budget_hit = true;
                    return;
                }
                long total = used;
                for (std::size_t i = 0; i < rc.pivot_cols.size(); ++i) {
                    Rational v = 0;
                    for (std::size_t fi = 0; fi < rc.free_cols.size(); ++fi)
                        v += rc.coeff[i][fi] * p[rc.free_cols[fi]];
                    if (v.get_den() != 1 || v == 0) return;
                    if (!v.get_num().fits_slong_p()) return;
                    long x = v.get_num().get_si();
                    p[rc.pivot_cols[i]] = x;
                    total += std::labs(x);
                    if (total > s) return;
                }
                if (total != s) return;
                long k = 0;
                for (std::size_t j = 0; j < n; ++j) k += p[j] * diffs[0][j];
                if (k == 0 && !opt.allow_zero_k) return;
                if (detail::gcd_abs(p) != 1) return;
                PolarWeights w{p, k};
                if (!best || detail::polar_better(w, *best)) best = w;
                return;
            }
            const long remaining_free = static_cast<long>(rc.free_cols.size() - idx - 1);
            for (long m = 1; used + m + remaining_free <= free_budget; ++m) {
                for (long sign : {1L, -1L}) {
                    p[rc.free_cols[idx]] = sign * m;
                    dfs(idx + 1, used + m);
                }
            }
            p[rc.free_cols[idx]] = 0;
        };
        if (free_budget >= static_cast<long>(rc.free_cols.size())) dfs(0, 0);
        if (best) {
            sol.status = PolarStatus::yes;
            sol.canonical = best;
            sol.minimal = true;
            sol.certificate = "minimal admissible weights found at sum|p| = " + std::to_string(s);
            return sol;
        }
    }

    // Existence is proved; build an admissible witness from a generic lattice combination.
    const std::size_t r = sol.lattice_basis.size();
    for (long m = 2; m < static_cast<long>(4 * (n + 2) * (r + 2)); ++m) {
        std::vector<Integer> v(n + 1, 0);
        Integer scale = 1;
        for (std::size_t b = 0; b < r; ++b) {
            for (std::size_t j = 0; j <= n; ++j) v[j] += scale * sol.lattice_basis[b][j];
            scale *= m;
        }
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) ok = ok && v[j] != 0;
        if (!opt.allow_zero_k) ok = ok && v[n] != 0;
        if (!ok) continue;
        Integer g = 0;
        for (std::size_t j = 0; j < n; ++j) g = gcd(g, v[j]);
        for (auto& x : v) x /= g;
        if (v[n] < 0)
            for (auto& x : v) x = -x;
        bool fits = std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.fits_slong_p(); });
        if (!fits) continue;
        PolarWeights w;
        for (std::size_t j = 0; j < n; ++j) w.p.push_back(v[j].get_si());
        w.k = v[n].get_si();
        sol.status = PolarStatus::yes;
        sol.canonical = w;
        sol.minimal = false;
        sol.certificate = budget_hit ? "search budget exhausted; non-minimal witness"
                                     : "no admissible weights with sum|p| <= bound; non-minimal witness";
        return sol;
    }
    sol.status = PolarStatus::unknown;
    sol.certificate = "admissible weights exist but no witness fits in machine integers";
    return sol;
}

inline Complex unit_power(Complex lambda, long e) {
    Complex base = e < 0 ? std::conj(lambda) : lambda;
    Complex r(1.0, 0.0);
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
}

/// |F(λ·z) − λ^k F(z)| for the S¹-action λ·z_j = λ^{p_j} z_j.
inline double orbit_check(const MixedPolynomial& f, const PolarWeights& w, Complex lambda,
                          std::span<const Complex> z) {
    if (z.size() != f.n_vars() || w.p.size() != f.n_vars())
        throw DimensionMismatch("orbit_check: dimension mismatch");
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw std::invalid_argument("orbit_check: |lambda| != 1");
    std::vector<Complex> moved(z.begin(), z.end());
    for (std::size_t j = 0; j < moved.size(); ++j) moved[j] *= unit_power(lambda, w.p[j]);
    return std::abs(f.evaluate(moved) - unit_power(lambda, w.k) * f.evaluate(z));
}

}  // namespace mixsing
