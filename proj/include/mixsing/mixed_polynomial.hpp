/*
 * mixed_polynomial.hpp
 * --------------------
 * Mixed polynomials F(z, z̄) = Σ c_{ν,μ} z^ν z̄^μ with Gaussian-rational
 * coefficients, Wirtinger differentiation and numeric evaluation.
 *
 * A MixedPolynomial is a value type: every operation returns a new
 * polynomial in canonical form (no zero coefficients, terms keyed and
 * ordered by graded lexicographic order on the concatenation (ν, μ)).
 */
#pragma once

#include "complex_rational.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mixsing {

using Complex = std::complex<double>;
using Exponents = std::vector<std::uint32_t>;

struct ExponentPair {
    Exponents nu;  // powers of z_j
    Exponents mu;  // powers of z̄_j

    std::size_t size() const { return nu.size(); }
    std::uint64_t degree() const {
        return std::accumulate(nu.begin(), nu.end(), std::uint64_t{0}) +
               std::accumulate(mu.begin(), mu.end(), std::uint64_t{0});
    }
    bool holomorphic() const {
        return std::all_of(mu.begin(), mu.end(), [](auto e) { return e == 0; });
    }
    ExponentPair swapped() const { return {mu, nu}; }

    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Graded lexicographic order on the concatenated exponent vector (ν, μ).
struct GradedLex {
    bool operator()(const ExponentPair& a, const ExponentPair& b) const {
        const auto da = a.degree();
        const auto db = b.degree();
        if (da != db) return da < db;
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.mu < b.mu;
    }
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Value of F together with Σ |c| |z^ν z̄^μ|, the scale that bounds rounding error.
struct BoundedValue {
    Complex value;
    double magnitude = 0.0;
};

class MixedPolynomial {
public:
    using TermMap = std::map<ExponentPair, ComplexRational, GradedLex>;

    explicit MixedPolynomial(std::size_t n_vars = 1) : n_(n_vars) {
        if (n_vars == 0) throw std::invalid_argument("MixedPolynomial: n_vars must be positive");
    }

    static MixedPolynomial constant(std::size_t n, const ComplexRational& c) {
        MixedPolynomial p(n);
        p.add_term(ExponentPair{Exponents(n, 0), Exponents(n, 0)}, c);
        return p;
    }
    /// z_j (0-based j).
    static MixedPolynomial variable(std::size_t n, std::size_t j) {
        MixedPolynomial p(n);
        ExponentPair e{Exponents(n, 0), Exponents(n, 0)};
        e.nu.at(j) = 1;
        p.add_term(e, ComplexRational(1));
        return p;
    }
    /// z̄_j (0-based j).
    static MixedPolynomial conj_variable(std::size_t n, std::size_t j) {
        MixedPolynomial p(n);
        ExponentPair e{Exponents(n, 0), Exponents(n, 0)};
        e.mu.at(j) = 1;
        p.add_term(e, ComplexRational(1));
        return p;
    }

    std::size_t n_vars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
    }

    bool is_holomorphic() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.first.holomorphic(); });
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
        return d;
    }

    ComplexRational coefficient(const ExponentPair& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? ComplexRational() : it->second;
    }

    /// Adds c·z^ν z̄^μ, dropping the entry if it cancels.
    void add_term(const ExponentPair& e, const ComplexRational& c) {
        if (e.nu.size() != n_ || e.mu.size() != n_)
            throw DimensionMismatch("exponent pair length differs from n_vars");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MixedPolynomial& operator+=(const MixedPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MixedPolynomial& operator-=(const MixedPolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MixedPolynomial& operator*=(const ComplexRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b) { return a += b; }
    friend MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b) { return a -= b; }
    friend MixedPolynomial operator*(MixedPolynomial a, const ComplexRational& s) { return a *= s; }
    friend MixedPolynomial operator*(const ComplexRational& s, MixedPolynomial a) { return a *= s; }
    MixedPolynomial operator-() const { return *this * ComplexRational(-1); }

    friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
        a.check_same(b);
        MixedPolynomial r(a.n_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExponentPair e{ea.nu, ea.mu};
                for (std::size_t j = 0; j < a.n_; ++j) {
                    e.nu[j] += eb.nu[j];
                    e.mu[j] += eb.mu[j];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MixedPolynomial& operator*=(const MixedPolynomial& o) { return *this = *this * o; }

    MixedPolynomial pow(unsigned e) const {
        MixedPolynomial result = constant(n_, ComplexRational(1));
        MixedPolynomial base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MixedPolynomial& a, const MixedPolynomial& b) { return !(a == b); }

    /// Formal ∂/∂z_j (wrt = false) or ∂/∂z̄_j (wrt = true).
    MixedPolynomial derivative(std::size_t j, bool conjugate_slot) const {
        if (j >= n_) throw DimensionMismatch("derivative index out of range");
        MixedPolynomial r(n_);
        for (const auto& [e, c] : terms_) {
            const auto power = conjugate_slot ? e.mu[j] : e.nu[j];
            if (power == 0) continue;
            ExponentPair d = e;
            (conjugate_slot ? d.mu[j] : d.nu[j]) -= 1;
            r.add_term(d, c * ComplexRational(static_cast<long>(power)));
        }
        return r;
    }

    Complex evaluate(std::span<const Complex> z) const { return evaluate_bounded(z).value; }

    BoundedValue evaluate_bounded(std::span<const Complex> z) const {
        if (z.size() != n_) throw DimensionMismatch("evaluation point has wrong dimension");
        BoundedValue out{Complex(0.0, 0.0), 0.0};
        for (const auto& [e, c] : terms_) {
            Complex m(1.0, 0.0);
            for (std::size_t j = 0; j < n_; ++j) {
                for (std::uint32_t k = 0; k < e.nu[j]; ++k) m *= z[j];
                const Complex zb = std::conj(z[j]);
                for (std::uint32_t k = 0; k < e.mu[j]; ++k) m *= zb;
            }
            const Complex term = c.to_complex() * m;
            out.value += term;
            out.magnitude += std::abs(term);
        }
        return out;
    }

    ComplexRational evaluate_exact(std::span<const ComplexRational> z) const {
        if (z.size() != n_) throw DimensionMismatch("evaluation point has wrong dimension");
        ComplexRational sum;
        for (const auto& [e, c] : terms_) {
            ComplexRational m = c;
            for (std::size_t j = 0; j < n_; ++j) {
                if (e.nu[j]) m *= z[j].pow(e.nu[j]);
                if (e.mu[j]) m *= z[j].conj().pow(e.mu[j]);
            }
            sum += m;
        }
        return sum;
    }

    /// Indices of variables that appear (in z or z̄) in some term.
    std::vector<std::size_t> support() const {
        std::vector<bool> used(n_, false);
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < n_; ++j)
                if (e.nu[j] || e.mu[j]) used[j] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n_; ++j)
            if (used[j]) out.push_back(j);
        return out;
    }

private:
    void check_same(const MixedPolynomial& o) const {
        if (o.n_ != n_) throw DimensionMismatch("polynomials have different variable counts");
    }

    std::size_t n_;
    TermMap terms_;
};

/// Swaps ν and μ in every term and conjugates the coefficients.
inline MixedPolynomial conjugate(const MixedPolynomial& f) {
    MixedPolynomial r(f.n_vars());
    for (const auto& [e, c] : f.terms()) r.add_term(e.swapped(), c.conj());
    return r;
}

struct WirtingerGradient {
    std::vector<MixedPolynomial> dF;     // ∂F/∂z_j
    std::vector<MixedPolynomial> dbarF;  // ∂F/∂z̄_j
};

inline WirtingerGradient wirtinger(const MixedPolynomial& f) {
    WirtingerGradient g;
    g.dF.reserve(f.n_vars());
    g.dbarF.reserve(f.n_vars());
    for (std::size_t j = 0; j < f.n_vars(); ++j) {
        g.dF.push_back(f.derivative(j, false));
        g.dbarF.push_back(f.derivative(j, true));
    }
    return g;
}

class NotHolomorphic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// f·ḡ for holomorphic f, g.
inline MixedPolynomial from_pair(const MixedPolynomial& f, const MixedPolynomial& g) {
    if (f.n_vars() != g.n_vars()) throw DimensionMismatch("from_pair: f and g differ in n_vars");
    if (!f.is_holomorphic() || !g.is_holomorphic())
        throw NotHolomorphic("from_pair: f and g must be holomorphic");
    return f * conjugate(g);
}

inline std::vector<Complex> evaluate_all(const std::vector<MixedPolynomial>& fs,
                                         std::span<const Complex> z) {
    std::vector<Complex> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f.evaluate(z));
    return out;
}

}  // namespace mixsing
