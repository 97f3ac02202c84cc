/*
 * complex_rational.hpp
 * --------------------
 * Exact Gaussian-rational scalars: re + im*i with re, im in Q.
 *
 * Backed by GMP's mpq_class, which keeps every value in canonical reduced
 * form (gcd(num, den) = 1, den > 0).
 */
#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace mixsing {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string rational_to_string(const Rational& q) {
    // mpq prints "a" when den == 1, "a/b" otherwise
    return q.get_str();
}

class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    ComplexRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    ComplexRational conj() const { return {re_, -im_}; }
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    ComplexRational operator-() const { return {-re_, -im_}; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        if (o.is_zero()) throw std::domain_error("ComplexRational: division by zero");
        Rational d = o.norm2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational m = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }

    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    ComplexRational pow(unsigned e) const {
        ComplexRational result(1);
        ComplexRational base = *this;
        while (e) {
            if (e & 1u) result *= base;
            base *= base;
            e >>= 1u;
        }
        return result;
    }

    /// Canonical text: "a", "a/b*i", or "a/b+c/d*i" (sign folded into the joiner).
    std::string to_string() const {
        if (sgn(im_) == 0) return rational_to_string(re_);
        std::string imag = rational_to_string(abs(im_)) + "*i";
        if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
        return rational_to_string(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline ComplexRational parse_rational_literal(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return ComplexRational(q);
}

}  // namespace mixsing
