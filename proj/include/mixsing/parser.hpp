/*
 * parser.hpp
 * ----------
 * Recursive-descent parser and canonical printer for mixed polynomials.
 *
 * Grammar (whitespace is insignificant):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary ('*' unary)*
 *   unary   := ('+' | '-') unary | power
 *   power   := postfix ('^' INT)*
 *   postfix := primary '~'*
 *   primary := INT ['/' INT] | 'i' | VAR | 'conj' '(' expr ')' | '(' expr ')'
 *
 * The parser elaborates as it goes: every production returns a fully
 * expanded MixedPolynomial, and conjugation is applied to the elaborated
 * operand, so no conj node survives.
 */
#pragma once

#include "mixed_polynomial.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixsing {

inline constexpr std::uint32_t kMaxExponent = 64;
inline constexpr std::size_t kMaxVariables = 8;
inline constexpr std::uint64_t kMaxTotalDegree = 256;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position),
          message_(message) {}

    std::size_t position() const { return position_; }
    const std::string& message() const { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

struct SourceExpr {
    std::string text;
    std::vector<std::string> variable_names;
};

/// z1..zn, the names used by the canonical serialization.
inline std::vector<std::string> canonical_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
    return names;
}

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline void validate_names(const std::vector<std::string>& names) {
    if (names.empty()) throw ParseError(0, "variable list is empty");
    if (names.size() > kMaxVariables)
        throw ParseError(0, "too many variables (limit " + std::to_string(kMaxVariables) + ")");
    std::set<std::string> seen;
    for (const auto& v : names) {
        if (v.empty() || !is_ident_start(v[0]) ||
            !std::all_of(v.begin(), v.end(), is_ident_char))
            throw ParseError(0, "invalid variable name '" + v + "'");
        if (v == "i" || v == "conj") throw ParseError(0, "reserved name used as variable: " + v);
        if (!seen.insert(v).second) throw ParseError(0, "duplicate variable name: " + v);
    }
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& names)
        : text_(text), n_(names.size()) {
        for (std::size_t j = 0; j < names.size(); ++j) index_[names[j]] = j;
    }

    MixedPolynomial parse() {
        skip_ws();
        if (pos_ >= text_.size()) fail("empty expression");
        MixedPolynomial r = expr();
        skip_ws();
        if (pos_ < text_.size()) {
            if (text_[pos_] == ')') fail("unbalanced ')'");
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(std::min(pos_, text_.size()), msg);
    }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        throw ParseError(std::min(at, text_.size()), msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    MixedPolynomial expr() {
        MixedPolynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MixedPolynomial term() {
        MixedPolynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (peek('/')) {
                fail("division is only allowed inside rational literals");
            } else {
                return acc;
            }
        }
    }

    MixedPolynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MixedPolynomial power() {
        MixedPolynomial base = postfix();
        while (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            if (pos_ < text_.size() && text_[pos_] == '-') fail_at(at, "negative exponent");
            std::string d = digits();
            if (d.empty()) fail_at(at, "exponent must be a nonnegative integer");
            if (d.size() > 3 || std::stoul(d) > kMaxExponent)
                fail_at(at, "exponent exceeds limit " + std::to_string(kMaxExponent));
            const auto e = static_cast<unsigned>(std::stoul(d));
            if (base.total_degree() * e > kMaxTotalDegree)
                fail_at(at, "expanded degree exceeds limit " + std::to_string(kMaxTotalDegree));
            base = base.pow(e);
        }
        return base;
    }

    MixedPolynomial postfix() {
        MixedPolynomial p = primary();
        while (accept('~')) p = conjugate(p);
        return p;
    }

    MixedPolynomial primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        const std::size_t at = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                // a/b literal; the denominator must follow immediately
                ++pos_;
                std::string den = digits();
                if (den.empty()) fail_at(pos_, "malformed rational literal");
                if (Integer(den) == 0) fail_at(at, "zero denominator in literal");
                num += "/" + den;
            }
            if (pos_ < text_.size() && (is_ident_start(text_[pos_]) || text_[pos_] == '.'))
                fail_at(pos_, "malformed numeric literal");
            return MixedPolynomial::constant(n_, parse_rational_literal(num));
        }
        if (c == '(') {
            ++pos_;
            MixedPolynomial inner = expr();
            if (!accept(')')) fail_at(pos_, "unbalanced '(' opened at offset " + std::to_string(at));
            return inner;
        }
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            std::string name(text_.substr(at, pos_ - at));
            if (name == "i") return MixedPolynomial::constant(n_, ComplexRational::i());
            if (name == "conj") {
                if (!accept('(')) fail_at(pos_, "expected '(' after conj");
                MixedPolynomial inner = expr();
                if (!accept(')')) fail_at(pos_, "unbalanced '(' in conj");
                return conjugate(inner);
            }
            auto it = index_.find(name);
            if (it == index_.end()) fail_at(at, "unknown identifier '" + name + "'");
            return MixedPolynomial::variable(n_, it->second);
        }
        if (c == ')') fail("unbalanced ')'");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t n_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MixedPolynomial parse_mixed(const SourceExpr& src) {
    detail::validate_names(src.variable_names);
    static const std::regex zero_form(R"(^\s*0\s*\(n=(\d+)\)\s*$)");
    std::smatch m;
    if (std::regex_match(src.text, m, zero_form)) {
        if (std::stoul(m[1].str()) != src.variable_names.size())
            throw ParseError(static_cast<std::size_t>(m.position(1)),
                             "zero polynomial declares a different variable count");
        return MixedPolynomial(src.variable_names.size());
    }
    return detail::Parser(src.text, src.variable_names).parse();
}

inline MixedPolynomial parse_mixed(const std::string& text, const std::vector<std::string>& vars) {
    return parse_mixed(SourceExpr{text, vars});
}

/// Parses a holomorphic polynomial; any conjugate surviving elaboration is rejected.
inline MixedPolynomial parse_holomorphic(const std::string& text, const std::vector<std::string>& vars) {
    MixedPolynomial p = parse_mixed(text, vars);
    if (!p.is_holomorphic()) throw ParseError(0, "expression is not holomorphic");
    return p;
}

/// Univariate polynomial in a real parameter: conj(t) = t, so z̄-powers fold into z-powers.
using UniPolynomial = std::map<std::uint32_t, ComplexRational>;

inline UniPolynomial parse_real_parameter_polynomial(const std::string& text, const std::string& var = "t") {
    MixedPolynomial p = parse_mixed(text, {var});
    UniPolynomial out;
    for (const auto& [e, c] : p.terms()) {
        auto& slot = out[e.nu[0] + e.mu[0]];
        slot += c;
        if (slot.is_zero()) out.erase(e.nu[0] + e.mu[0]);
    }
    return out;
}

inline std::string format_coefficient(const ComplexRational& c) {
    if (c.is_real() || sgn(c.re()) == 0) return c.to_string();
    return "(" + c.to_string() + ")";
}

inline std::string format(const MixedPolynomial& f, const std::vector<std::string>& names) {
    if (names.size() != f.n_vars()) throw DimensionMismatch("format: name list has wrong length");
    if (f.is_zero()) return "0 (n=" + std::to_string(f.n_vars()) + ")";
    std::ostringstream os;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << format_coefficient(c);
        for (std::size_t j = 0; j < f.n_vars(); ++j) {
            if (e.nu[j]) {
                os << '*' << names[j];
                if (e.nu[j] > 1) os << '^' << e.nu[j];
            }
            if (e.mu[j]) {
                os << '*' << names[j] << '~';
                if (e.mu[j] > 1) os << '^' << e.mu[j];
            }
        }
    }
    return os.str();
}

/// Canonical serialization over z1..zn.
inline std::string format(const MixedPolynomial& f) { return format(f, canonical_names(f.n_vars())); }

}  // namespace mixsing
