#pragma once

/**
 * @file counting.hpp
 * @brief Closed-form counts of plane trees by edges (n), internal nodes (m),
 *        leaves (k) and root degree (r), all in exact integer arithmetic.
 *
 * Every quotient in these formulas is integral; they are evaluated as a full
 * numerator product followed by an exact division that asserts divisibility.
 */

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "ptree/tree.hpp"

namespace ptree {

using BigCount = mpz_class;

namespace detail {

inline BigCount exact_div(const BigCount& num, const BigCount& den) {
    if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error("counting: non-integral quotient " + num.get_str() + "/" + den.get_str());
    BigCount q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace detail

/// binom(n, k) with the convention binom(n, k) = 0 unless 0 <= k <= n.
inline BigCount binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline BigCount catalan(long n) {
    if (n < 0) return 0;
    return detail::exact_div(binomial(2 * n, n), n + 1);
}

/// M_n = sum_k binom(n, 2k) C_k.
inline BigCount motzkin(long n) {
    if (n < 0) return 0;
    BigCount s = 0;
    for (long k = 0; 2 * k <= n; ++k) s += binomial(n, 2 * k) * catalan(k);
    return s;
}

/// Narayana number: trees on n edges with k leaves.
inline BigCount count_by_leaves(long n, long k) {
    if (n == 0) return k == 0 ? 1 : 0;
    if (k < 1 || k > n) return 0;
    return detail::exact_div(binomial(n, k) * binomial(n, k - 1), n);
}

/// Trees on n edges with root degree r.
inline BigCount count_by_root(long n, long r) {
    if (n == 0) return r == 0 ? 1 : 0;
    if (r < 1 || r > n) return 0;
    return detail::exact_div(BigCount(r) * binomial(2 * n - 1 - r, n - 1), n);
}

/// Trees on n edges with m internal nodes.
inline BigCount count_by_internal(long n, long m) {
    if (n == 0) return m == 0 ? 1 : 0;
    if (m < 0 || m >= n) return 0;
    return binomial(n - 1, m) * motzkin(n - m - 1);
}

/// Which closed form applies to a (n, m, k, r) cell.
enum class FullRegime {
    branching,   ///< n - m > k > r: some non-root vertex has down degree >= 2
    paths_only,  ///< n - m = k = r: every root branch is a path
    empty        ///< no tree has these parameters
};

/**
 * The two regimes are exhaustive: k = r forces every root branch to carry a
 * single leaf, hence to be a path, so n - m = k; k > r forces a non-root
 * branching vertex, so n - m > k. Every other cell is empty.
 */
inline FullRegime full_regime(long n, long m, long k, long r) {
    if (n < 0 || m < 0 || k < 0 || r < 0) return FullRegime::empty;
    if (n == 0) return FullRegime::empty;
    if (n - m > k && k > r && r >= 1) return FullRegime::branching;
    if (n - m == k && k == r && r >= 1) return FullRegime::paths_only;
    return FullRegime::empty;
}

/// Trees on n edges with m internal nodes, k leaves and root degree r.
inline BigCount count_full(long n, long m, long k, long r) {
    if (n == 0) return (m == 0 && k == 0 && r == 0) ? 1 : 0;
    switch (full_regime(n, m, k, r)) {
        case FullRegime::branching:
            return detail::exact_div(BigCount(r) * binomial(n, k + m) * binomial(k + m, k) *
                                         binomial(k - r - 1, n - m - k - 1),
                                     n);
        case FullRegime::paths_only:
            return binomial(n - 1, m);
        case FullRegime::empty:
            break;
    }
    return 0;
}

/// Trees on n edges with m internal nodes and k leaves.
inline BigCount count_mk(long n, long m, long k) {
    if (n == 0) return (m == 0 && k == 0) ? 1 : 0;
    if (m < 0 || k < 1) return 0;
    if (n - m > k)
        return detail::exact_div(binomial(n, k + m) * binomial(k + m, k) * binomial(k, n - m - k + 1), n);
    if (n - m == k) return binomial(n - 1, m);
    return 0;
}

/// Trees on n edges with k leaves and root degree r. The first form also
/// covers the boundary k = r < n.
inline BigCount count_kr(long n, long k, long r) {
    if (n == 0) return (k == 0 && r == 0) ? 1 : 0;
    if (r < 1 || k < r) return 0;
    if (n > k) return detail::exact_div(BigCount(r) * binomial(n, k) * binomial(n - r - 1, n - k - 1), n);
    if (n == k && k == r) return 1;
    return 0;
}

namespace detail {

// On parenthesis strings T = T1 ⋉ T2 reads "(" + P(T2) + ")" + P(T1), so
// psi("(" A ")" B) = "(" psi(B) ")" psi(A).
inline std::string psi_parens(std::string_view s) {
    if (s.empty()) return {};
    std::size_t depth = 0, close = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        depth += s[i] == '(' ? 1 : 0;
        depth -= s[i] == ')' ? 1 : 0;
        if (depth == 0) {
            close = i;
            break;
        }
    }
    const std::string_view inner = s.substr(1, close - 1);
    const std::string_view rest = s.substr(close + 1);
    return "(" + psi_parens(rest) + ")" + psi_parens(inner);
}

}  // namespace detail

/// The Dershowitz–Zaks bijection: psi(T1 ⋉ T2) = psi(T2) ⋉ psi(T1), psi(T*) = T*.
/// Recursion depth is at most the edge count.
inline PlaneTree psi(const PlaneTree& t) { return from_parens(detail::psi_parens(to_parens(t))); }

/// Number of edges on the path that always descends to the first child.
inline std::size_t leftmost_path_length(const PlaneTree& t) {
    std::size_t len = 0;
    for (vertex_t v = 0; t.has_children(v); v = t.first_child(v)) ++len;
    return len;
}

/// Leaves that have a left sibling.
inline std::size_t leaves_with_left_sibling(const PlaneTree& t) {
    std::size_t c = 0;
    for (std::size_t i = 1; i < t.vertex_count(); ++i) {
        const auto v = static_cast<vertex_t>(i);
        if (!t.has_children(v) && t.parent(v) != v - 1) ++c;
    }
    return c;
}

}  // namespace ptree
