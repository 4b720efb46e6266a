#pragma once

/**
 * @file toll.hpp
 * @brief Polynomial tolls f(T_v, T) over six variables.
 *
 * Variables, in index order:
 *   t  l0  l1  : edges, leaves and internal nodes of the subtree T_v
 *                (subtree root classified, extended convention)
 *   n  L0  L1  : edges, leaves and internal nodes of the whole tree T
 *
 * Text form accepted by parse_toll(): sums and products of rational literals,
 * the six variable names, integer powers (^) and parentheses, e.g.
 * "(t+1)*(n-t)", "3/2*l0^2 - L1", "0.25*t*n".
 */

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace ptree {

enum TollVar : std::size_t { var_t = 0, var_l0, var_l1, var_n, var_L0, var_L1, toll_var_count };

inline constexpr std::array<std::string_view, toll_var_count> toll_var_names{"t", "l0", "l1",
                                                                             "n", "L0", "L1"};

using Exponents = std::array<std::uint32_t, toll_var_count>;

/// Polynomial in reduced form: distinct monomials, no zero coefficients.
class PolynomialToll {
public:
    using Terms = std::map<Exponents, mpq_class>;

    PolynomialToll() = default;

    static PolynomialToll constant(const mpq_class& c) {
        PolynomialToll p;
        p.add_term(Exponents{}, c);
        return p;
    }
    static PolynomialToll variable(TollVar v) {
        Exponents e{};
        e[v] = 1;
        PolynomialToll p;
        p.add_term(e, 1);
        return p;
    }

    void add_term(const Exponents& e, const mpq_class& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// True when the polynomial is a constant (possibly zero).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
    }
    mpq_class constant_value() const {
        auto it = terms_.find(Exponents{});
        return it == terms_.end() ? mpq_class(0) : it->second;
    }

    template <class Scalar>
    Scalar evaluate(const std::array<Scalar, toll_var_count>& x) const {
        Scalar sum = 0;
        for (const auto& [e, c] : terms_) {
            Scalar term = to_scalar<Scalar>(c);
            for (std::size_t i = 0; i < toll_var_count; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) term *= x[i];
            sum += term;
        }
        return sum;
    }

    friend PolynomialToll operator+(const PolynomialToll& a, const PolynomialToll& b) {
        PolynomialToll r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend PolynomialToll operator-(const PolynomialToll& a) {
        PolynomialToll r;
        for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
        return r;
    }
    friend PolynomialToll operator-(const PolynomialToll& a, const PolynomialToll& b) { return a + (-b); }
    friend PolynomialToll operator*(const PolynomialToll& a, const PolynomialToll& b) {
        PolynomialToll r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < toll_var_count; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend bool operator==(const PolynomialToll&, const PolynomialToll&) = default;

    PolynomialToll pow(unsigned k) const {
        PolynomialToll r = constant(1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            mpq_class mag = abs(c);
            s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            first = false;
            bool has_var = false;
            std::string vars;
            for (std::size_t i = 0; i < toll_var_count; ++i) {
                if (e[i] == 0) continue;
                if (has_var) vars += "*";
                vars += toll_var_names[i];
                if (e[i] > 1) vars += "^" + std::to_string(e[i]);
                has_var = true;
            }
            if (!has_var) s += mag.get_str();
            else if (mag == 1) s += vars;
            else s += mag.get_str() + "*" + vars;
        }
        return s;
    }

    template <class Scalar>
    static Scalar to_scalar(const mpq_class& q) {
        if constexpr (std::is_same_v<Scalar, mpq_class>) return q;
        else return static_cast<Scalar>(q.get_d());
    }

private:
    Terms terms_;
};

/// Error from parse_toll(); carries the character offset of the problem.
class TollParseError : public std::invalid_argument {
public:
    TollParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument("toll expression: " + what + " at offset " + std::to_string(pos)),
          pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

// Recursive descent:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor | factor)*      (juxtaposition multiplies)
//   factor := atom ('^' integer)?
//   atom   := number | variable | '(' expr ')'
class TollParser {
public:
    explicit TollParser(std::string_view s) : s_(s) {}

    PolynomialToll parse() {
        skip_ws();
        if (pos_ == s_.size()) throw TollParseError("empty expression", pos_);
        PolynomialToll p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw TollParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    PolynomialToll expr() {
        bool negate = false;
        if (peek('+')) ++pos_;
        else if (peek('-')) {
            ++pos_;
            negate = true;
        }
        PolynomialToll acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (peek('+')) {
                ++pos_;
                acc = acc + term();
            } else if (peek('-')) {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    bool starts_atom() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    PolynomialToll term() {
        PolynomialToll acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (peek('/')) {
                const std::size_t at = ++pos_;
                PolynomialToll d = factor();
                if (!d.is_constant()) throw TollParseError("division by a non-constant", at);
                const mpq_class c = d.constant_value();
                if (c == 0) throw TollParseError("division by zero", at);
                acc = acc * PolynomialToll::constant(1 / c);
            } else if (starts_atom()) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    PolynomialToll factor() {
        PolynomialToll base = atom();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            unsigned long k = 0;
            bool any = false;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = k * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
                any = true;
                if (k > 64) throw TollParseError("exponent too large", at);
            }
            if (!any) throw TollParseError("expected a non-negative integer exponent", at);
            base = base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    PolynomialToll atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw TollParseError("unexpected end of expression", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            PolynomialToll p = expr();
            if (!peek(')')) throw TollParseError("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < toll_var_count; ++i)
                if (name == toll_var_names[i]) return PolynomialToll::variable(static_cast<TollVar>(i));
            throw TollParseError("unknown variable '" + std::string(name) +
                                     "' (expected t, l0, l1, n, L0, L1)",
                                 start);
        }
        throw TollParseError(std::string("unexpected '") + c + "'", pos_);
    }

    PolynomialToll number() {
        const std::size_t start = pos_;
        mpz_class num = 0, den = 1;
        bool digits = false, dot = false;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                num = num * 10 + (c - '0');
                if (dot) den *= 10;
                digits = true;
            } else if (c == '.' && !dot) {
                dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (!digits) throw TollParseError("malformed number", start);
        mpq_class q(num, den);
        q.canonicalize();
        return PolynomialToll::constant(q);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PolynomialToll parse_toll(std::string_view text) { return detail::TollParser(text).parse(); }

}  // namespace ptree
