/*
 * algebra.hpp
 * -----------
 * Holomorphic multivariate polynomials over Q(i) with the small amount of
 * commutative algebra the discriminant module needs: Buchberger Groebner
 * bases under lex / grevlex / block-elimination orders, elimination ideals,
 * radical membership, exact division, gcd and squarefree parts, and
 * univariate Euclid.
 *
 * Everything here is exact. Sizes are desk scale; a reduction budget turns
 * runaway computations into a reported error instead of a hang.
 */
#pragma once

#include "mixed_polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mixsing::algebra {

enum class OrderKind { lex, grevlex, block };

/// Monomial order. `block` compares the first `split` variables by grevlex,
/// then the rest by grevlex (an elimination order for the first block).
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;
    std::size_t split = 0;

    static bool grevlex_less(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t j = lo; j < hi; ++j) {
            da += a[j];
            db += b[j];
        }
        if (da != db) return da < db;
        for (std::size_t j = hi; j-- > lo;) {
            if (a[j] != b[j]) return a[j] > b[j];
        }
        return false;
    }

    bool operator()(const Exponents& a, const Exponents& b) const {
        switch (kind) {
            case OrderKind::lex: return a < b;
            case OrderKind::grevlex: return grevlex_less(a, b, 0, a.size());
            case OrderKind::block:
                if (grevlex_less(a, b, 0, split)) return true;
                if (grevlex_less(b, a, 0, split)) return false;
                return grevlex_less(a, b, split, a.size());
        }
        return false;
    }
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Poly {
public:
    using TermMap = std::map<Exponents, ComplexRational, MonomialOrder>;

    explicit Poly(std::size_t n = 1, MonomialOrder order = {}) : n_(n), terms_(order) {}

    static Poly constant(std::size_t n, const ComplexRational& c, MonomialOrder order = {}) {
        Poly p(n, order);
        p.add_term(Exponents(n, 0), c);
        return p;
    }
    static Poly variable(std::size_t n, std::size_t j, MonomialOrder order = {}) {
        Poly p(n, order);
        Exponents e(n, 0);
        e.at(j) = 1;
        p.add_term(e, ComplexRational(1));
        return p;
    }

    std::size_t n_vars() const { return n_; }
    MonomialOrder order() const { return terms_.key_comp(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
    }

    static std::uint64_t degree_of(const Exponents& e) {
        std::uint64_t d = 0;
        for (auto x : e) d += x;
        return d;
    }
    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
        return d;
    }
    std::uint32_t degree_in(std::size_t j) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[j]);
        return d;
    }

    const Exponents& leading_monomial() const { return terms_.rbegin()->first; }
    const ComplexRational& leading_coefficient() const { return terms_.rbegin()->second; }

    void add_term(const Exponents& e, const ComplexRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly with_order(MonomialOrder order) const {
        Poly p(n_, order);
        for (const auto& [e, c] : terms_) p.terms_.emplace(e, c);
        return p;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.n_, a.order());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Poly operator*(Poly a, const ComplexRational& s) {
        if (s.is_zero()) return Poly(a.n_, a.order());
        for (auto& [e, c] : a.terms_) c *= s;
        return a;
    }
    Poly pow(unsigned e) const {
        Poly r = constant(n_, ComplexRational(1), order());
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// this −= c · x^m · g
    void subtract_multiple(const ComplexRational& c, const Exponents& m, const Poly& g) {
        for (const auto& [e, gc] : g.terms_) {
            Exponents s = e;
            for (std::size_t j = 0; j < s.size(); ++j) s[j] += m[j];
            add_term(s, -(c * gc));
        }
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (ComplexRational(1) / leading_coefficient());
    }

    Poly derivative(std::size_t j) const {
        Poly r(n_, order());
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            Exponents d = e;
            d[j] -= 1;
            r.add_term(d, c * ComplexRational(static_cast<long>(e[j])));
        }
        return r;
    }

    ComplexRational evaluate(std::span<const ComplexRational> z) const {
        ComplexRational s;
        for (const auto& [e, c] : terms_) {
            ComplexRational m = c;
            for (std::size_t j = 0; j < n_; ++j)
                if (e[j]) m *= z[j].pow(e[j]);
            s += m;
        }
        return s;
    }
    Complex evaluate(std::span<const Complex> z) const {
        Complex s(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            Complex m = c.to_complex();
            for (std::size_t j = 0; j < n_; ++j)
                for (std::uint32_t k = 0; k < e[j]; ++k) m *= z[j];
            s += m;
        }
        return s;
    }
    /// Σ |c||z^e|, the rounding scale of evaluate().
    double magnitude(std::span<const Complex> z) const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) {
            double m = std::abs(c.to_complex());
            for (std::size_t j = 0; j < n_; ++j)
                for (std::uint32_t k = 0; k < e[j]; ++k) m *= std::abs(z[j]);
            s += m;
        }
        return s;
    }

    bool uses_only(const std::vector<bool>& allowed) const {
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < n_; ++j)
                if (e[j] && !allowed[j]) return false;
        return true;
    }

    /// Keeps variables [from, from + count) and drops the rest (caller guarantees they are absent).
    Poly restrict_to(std::size_t from, std::size_t count, MonomialOrder order = {}) const {
        Poly r(count, order);
        for (const auto& [e, c] : terms_) r.add_term(Exponents(e.begin() + from, e.begin() + from + count), c);
        return r;
    }
    /// Embeds into n_total variables starting at `offset`.
    Poly embed(std::size_t n_total, std::size_t offset, MonomialOrder order = {}) const {
        Poly r(n_total, order);
        for (const auto& [e, c] : terms_) {
            Exponents big(n_total, 0);
            std::copy(e.begin(), e.end(), big.begin() + offset);
            r.add_term(big, c);
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        for (const auto& [e, c] : a.terms_) {
            auto it = b.terms_.find(e);
            if (it == b.terms_.end() || it->second != c) return false;
        }
        return true;
    }

private:
    std::size_t n_;
    TermMap terms_;
};

inline Poly from_mixed(const MixedPolynomial& f, MonomialOrder order = {}) {
    if (!f.is_holomorphic()) throw NotHolomorphic("algebra: polynomial has conjugate variables");
    Poly p(f.n_vars(), order);
    for (const auto& [e, c] : f.terms()) p.add_term(e.nu, c);
    return p;
}

inline MixedPolynomial to_mixed(const Poly& p) {
    MixedPolynomial f(p.n_vars());
    for (const auto& [e, c] : p.terms()) f.add_term(ExponentPair{e, Exponents(p.n_vars(), 0)}, c);
    return f;
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline Exponents lcm_monomial(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = std::max(a[j], b[j]);
    return r;
}

struct Budget {
    std::size_t max_reductions = 2'000'000;
    std::size_t used = 0;
    void tick() {
        if (++used > max_reductions) throw BudgetExceeded("Groebner computation exceeded its reduction budget");
    }
};

/// Full reduction of p modulo `basis` (all under the same order).
inline Poly normal_form(Poly p, const std::vector<Poly>& basis, Budget& budget) {
    Poly rem(p.n_vars(), p.order());
    while (!p.is_zero()) {
        const Exponents lm = p.leading_monomial();
        const ComplexRational lc = p.leading_coefficient();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero() || !divides(g.leading_monomial(), lm)) continue;
            Exponents shift(lm.size());
            for (std::size_t j = 0; j < lm.size(); ++j) shift[j] = lm[j] - g.leading_monomial()[j];
            p.subtract_multiple(lc / g.leading_coefficient(), shift, g);
            budget.tick();
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return rem;
}

inline Poly normal_form(const Poly& p, const std::vector<Poly>& basis) {
    Budget b;
    return normal_form(p, basis, b);
}

inline Poly s_polynomial(const Poly& f, const Poly& g) {
    const Exponents l = lcm_monomial(f.leading_monomial(), g.leading_monomial());
    Exponents mf(l.size()), mg(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) {
        mf[j] = l[j] - f.leading_monomial()[j];
        mg[j] = l[j] - g.leading_monomial()[j];
    }
    Poly s(f.n_vars(), f.order());
    s.subtract_multiple(ComplexRational(-1) / f.leading_coefficient(), mf, f);
    s.subtract_multiple(ComplexRational(1) / g.leading_coefficient(), mg, g);
    return s;
}

/// Reduced Groebner basis (monic, interreduced, sorted by leading monomial).
inline std::vector<Poly> groebner(const std::vector<Poly>& input, MonomialOrder order, Budget budget = {}) {
    std::vector<Poly> g;
    for (const auto& p : input) {
        Poly q = p.with_order(order);
        if (!q.is_zero()) g.push_back(q.monic());
    }
    if (g.empty()) return g;

    struct Pair {
        std::size_t i, j;
        Exponents lcm;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t newest) {
        for (std::size_t i = 0; i < newest; ++i)
            pairs.push_back({i, newest, lcm_monomial(g[i].leading_monomial(), g[newest].leading_monomial())});
    };
    for (std::size_t j = 1; j < g.size(); ++j) add_pairs(j);

    while (!pairs.empty()) {
        // normal selection strategy
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [&](const Pair& a, const Pair& b) { return order(a.lcm, b.lcm); });
        Pair pr = *it;
        pairs.erase(it);

        const auto& a = g[pr.i].leading_monomial();
        const auto& b = g[pr.j].leading_monomial();
        bool coprime = true;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] && b[k]) coprime = false;
        if (coprime) continue;  // Buchberger's first criterion

        // chain criterion: some g_k with LM | lcm and both (i,k), (k,j) already handled
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || !divides(g[k].leading_monomial(), pr.lcm)) continue;
            auto pending = [&](std::size_t x, std::size_t y) {
                auto lo = std::min(x, y), hi = std::max(x, y);
                return std::any_of(pairs.begin(), pairs.end(),
                                   [&](const Pair& p) { return p.i == lo && p.j == hi; });
            };
            if (!pending(pr.i, k) && !pending(pr.j, k)) chain = true;
        }
        if (chain) continue;

        Poly r = normal_form(s_polynomial(g[pr.i], g[pr.j]), g, budget);
        if (r.is_zero()) continue;
        g.push_back(r.monic());
        if (g.back().is_constant()) return {Poly::constant(g.back().n_vars(), ComplexRational(1), order)};
        add_pairs(g.size() - 1);
    }

    // minimalize
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (divides(g[j].leading_monomial(), g[i].leading_monomial())) {
                // keep the earlier of two equal leading monomials
                if (g[j].leading_monomial() != g[i].leading_monomial() || j < i) redundant = true;
            }
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    // interreduce
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly lead(minimal[i].n_vars(), order);
        lead.add_term(minimal[i].leading_monomial(), minimal[i].leading_coefficient());
        Poly tail = minimal[i] - lead;
        reduced.push_back((lead + normal_form(tail, others, budget)).monic());
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Poly& x, const Poly& y) { return order(x.leading_monomial(), y.leading_monomial()); });
    return reduced;
}

inline bool is_unit_ideal(const std::vector<Poly>& gb) {
    return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

/// Generators of I ∩ K[x_split, ..., x_{n-1}], returned in the trailing variables.
inline std::vector<Poly> eliminate(const std::vector<Poly>& gens, std::size_t split, Budget budget = {}) {
    const std::size_t n = gens.front().n_vars();
    MonomialOrder order{OrderKind::block, split};
    auto gb = groebner(gens, order, budget);
    std::vector<bool> allowed(n, false);
    for (std::size_t j = split; j < n; ++j) allowed[j] = true;
    std::vector<Poly> out;
    for (const auto& p : gb)
        if (p.uses_only(allowed)) out.push_back(p.restrict_to(split, n - split));
    return out;
}

/// f ∈ rad(I), by the Rabinowitsch trick: 1 ∈ I + (1 − t f).
inline bool in_radical(const Poly& f, const std::vector<Poly>& ideal, Budget budget = {}) {
    if (f.is_zero()) return true;
    const std::size_t n = f.n_vars();
    std::vector<Poly> gens;
    for (const auto& p : ideal) gens.push_back(p.embed(n + 1, 0));
    Poly t = Poly::variable(n + 1, n);
    gens.push_back(Poly::constant(n + 1, ComplexRational(1)) - t * f.embed(n + 1, 0));
    return is_unit_ideal(groebner(gens, MonomialOrder{OrderKind::grevlex, 0}, budget));
}

/// Exact division a / b; nullopt if b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    MonomialOrder lex{OrderKind::lex, 0};
    Poly p = a.with_order(lex);
    Poly d = b.with_order(lex);
    Poly q(a.n_vars(), lex);
    while (!p.is_zero()) {
        const Exponents lm = p.leading_monomial();
        if (!divides(d.leading_monomial(), lm)) return std::nullopt;
        Exponents shift(lm.size());
        for (std::size_t j = 0; j < lm.size(); ++j) shift[j] = lm[j] - d.leading_monomial()[j];
        ComplexRational c = p.leading_coefficient() / d.leading_coefficient();
        q.add_term(shift, c);
        p.subtract_multiple(c, shift, d);
    }
    return q.with_order(a.order());
}

/// gcd via lcm(a, b) = generator of (a) ∩ (b); normalized monic under grevlex.
inline Poly gcd(const Poly& a, const Poly& b) {
    MonomialOrder grevlex{OrderKind::grevlex, 0};
    if (a.is_zero()) return b.with_order(grevlex).monic();
    if (b.is_zero()) return a.with_order(grevlex).monic();
    if (a.is_constant() || b.is_constant()) return Poly::constant(a.n_vars(), ComplexRational(1), grevlex);
    const std::size_t n = a.n_vars();
    Poly t = Poly::variable(n + 1, 0);
    Poly one = Poly::constant(n + 1, ComplexRational(1));
    std::vector<Poly> gens{t * a.embed(n + 1, 1), (one - t) * b.embed(n + 1, 1)};
    auto inter = eliminate(gens, 1);
    if (inter.empty()) throw std::logic_error("gcd: empty intersection ideal");
    // principal ideal: the reduced basis has exactly one element
    const Poly& lcm = inter.front();
    auto q = divide_exact(a * b, lcm);
    if (!q) throw std::logic_error("gcd: lcm does not divide the product");
    return q->with_order(grevlex).monic();
}

/// Squarefree part: h / gcd(h, ∂h/∂x_1, ..., ∂h/∂x_n).
inline Poly squarefree(const Poly& h) {
    if (h.is_zero() || h.is_constant()) return h;
    Poly g = h;
    for (std::size_t j = 0; j < h.n_vars(); ++j) {
        Poly d = h.derivative(j);
        if (!d.is_zero()) g = gcd(g, d);
        if (g.is_constant()) break;
    }
    if (g.is_constant()) return h.with_order(MonomialOrder{OrderKind::grevlex, 0}).monic();
    auto q = divide_exact(h, g);
    if (!q) throw std::logic_error("squarefree: gcd does not divide");
    return q->with_order(MonomialOrder{OrderKind::grevlex, 0}).monic();
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i): coefficient vectors, index = power.

using Univariate = std::vector<ComplexRational>;

inline void trim(Univariate& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Univariate uni_mod(Univariate a, const Univariate& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        ComplexRational c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline Univariate uni_monic(Univariate p) {
    trim(p);
    if (p.empty()) return p;
    ComplexRational inv = ComplexRational(1) / p.back();
    for (auto& c : p) c *= inv;
    return p;
}

inline Univariate uni_gcd(Univariate a, Univariate b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Univariate r = uni_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(a);
}

inline ComplexRational uni_eval(const Univariate& p, const ComplexRational& x) {
    ComplexRational r;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

inline Univariate uni_derivative(const Univariate& p) {
    Univariate d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * ComplexRational(static_cast<long>(i)));
    trim(d);
    return d;
}

/// Divides out every root at zero.
inline Univariate uni_strip_zero_roots(Univariate p) {
    trim(p);
    std::size_t k = 0;
    while (k < p.size() && p[k].is_zero()) ++k;
    return Univariate(p.begin() + static_cast<long>(k), p.end());
}

inline Univariate uni_squarefree(const Univariate& p) {
    Univariate g = uni_gcd(p, uni_derivative(p));
    if (g.size() <= 1) return uni_monic(p);
    // exact division p / g
    Univariate a = p, q(p.size() - g.size() + 1);
    trim(a);
    while (a.size() >= g.size() && !a.empty()) {
        ComplexRational c = a.back() / g.back();
        const std::size_t shift = a.size() - g.size();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) a[i + shift] -= c * g[i];
        a.pop_back();
        trim(a);
    }
    return uni_monic(q);
}

/// Numeric roots (companion matrix eigenvalues).
inline std::vector<Complex> uni_roots(const Univariate& p0) {
    Univariate p = uni_monic(p0);
    if (p.size() <= 1) return {};
    const std::size_t d = p.size() - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<long>(d), static_cast<long>(d));
    for (std::size_t i = 1; i < d; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) comp(static_cast<long>(i), static_cast<long>(d - 1)) = -p[i].to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots;
    for (long i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

/// Best rational approximation with denominator ≤ max_den (continued fractions).
inline Rational rationalize(double x, long max_den = 1'000'000) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = r - a;
        if (std::abs(frac) < 1e-15) break;
        r = 1.0 / frac;
    }
    if (k1 == 0) return Rational(0);
    Rational q(h1, k1);
    q.canonicalize();
    return q;
}

}  // namespace mixsing::algebra
