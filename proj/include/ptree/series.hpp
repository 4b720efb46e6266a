#pragma once

/**
 * @file series.hpp
 * @brief Truncated power series for the weighted tree generating functions.
 *
 *   G(x,a,b)   = sum over trees of x^n a^d0 b^d1
 *   G*(x,a,b)  = the same restricted to root degree 1
 *   G(x,a,b,c) = sum over trees of x^n a^d0 b^d1 c^r = 1 / (1 - c G*)
 *
 * Coefficients come from the combinatorial decomposition: a root-degree-1 tree
 * of size j is an edge over a planted subtree H of size j-1, where
 *   H[0] = a,   H[s] = b g1[s] + (g[s] - g1[s])   (s >= 1),
 * and every tree is a sequence of root-degree-1 components, so
 *   g1[n] = H[n-1],   g[n] = sum_j g1[j] g[n-j],   z[n] = sum_j c g1[j] z[n-j].
 *
 * In double mode the arrays hold rho-scaled values, g[n] / rho^n, so that
 * orders in the tens of thousands stay representable. z uses its own scale
 * kappa >= rho since large c can raise its growth rate.
 */

#include <cmath>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "ptree/counting.hpp"
#include "ptree/enumeration.hpp"
#include "ptree/numeric.hpp"

namespace ptree {

/// Dominant singularity rho = e^-alpha + e^-beta + 2 e^-alpha/2.
inline double rho(double alpha, double beta) {
    return std::exp(-alpha) + std::exp(-beta) + 2.0 * std::exp(-alpha / 2.0);
}
inline double rho_bar(double alpha, double beta) {
    return std::exp(-alpha) + std::exp(-beta) - 2.0 * std::exp(-alpha / 2.0);
}
/// Same in terms of weights: a + b + 2 sqrt(a).
inline double rho_of_weights(double a, double b) { return a + b + 2.0 * std::sqrt(a); }

/// Closed-form G*(x, a, b) for real 0 <= x <= 1/rho.
inline double gstar_closed_form(double x, double a, double b) {
    const double u = a + b;
    const double disc = std::max(0.0, 1.0 - 2.0 * u * x + (u * u - 4.0 * a) * x * x);
    return (1.0 + (a - b) * x - std::sqrt(disc)) / (2.0 * (1.0 - (b - 1.0) * x));
}

template <class Scalar>
struct SeriesTables {
    unsigned order = 0;
    Weights<Scalar> weights;
    /// Stored g[n], g1[n] equal true coefficients divided by scale^n.
    Scalar scale = 1;
    /// Stored z[n] equals the true coefficient divided by z_scale^n.
    Scalar z_scale = 1;
    std::vector<Scalar> g;
    std::vector<Scalar> g1;
    std::vector<Scalar> z;

    /// True (unscaled) coefficients; exact in rational mode, may overflow in
    /// double mode for large n (use the log_* accessors there).
    Scalar g_true(unsigned n) const { return g[n] * ipow(scale, n); }
    Scalar g1_true(unsigned n) const { return g1[n] * ipow(scale, n); }
    Scalar z_true(unsigned n) const { return z[n] * ipow(z_scale, n); }

    double log_g(unsigned n) const { return std::log(to_double(g[n])) + n * std::log(to_double(scale)); }
    double log_z(unsigned n) const { return std::log(to_double(z[n])) + n * std::log(to_double(z_scale)); }
};

namespace detail {

// Growth rate of z: rho unless c G*(1/rho) > 1, in which case 1/x0 with
// c G*(x0) = 1 (G* is increasing on [0, 1/rho]).
inline double z_growth_rate(double a, double b, double c) {
    const double r = rho_of_weights(a, b);
    if (c * gstar_closed_form(1.0 / r, a, b) <= 1.0) return r;
    double lo = 0.0, hi = 1.0 / r;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (c * gstar_closed_form(mid, a, b) > 1.0 ? hi : lo) = mid;
    }
    return 1.0 / (0.5 * (lo + hi));
}

}  // namespace detail

/// Coefficient tables to order N, O(N^2).
template <class Scalar>
SeriesTables<Scalar> build_tables(const Weights<Scalar>& w, unsigned order) {
    if constexpr (std::is_same_v<Scalar, double>) {
        if (!(w.a > 0 && w.b > 0 && w.c > 0)) throw std::domain_error("series weights must be positive");
    } else {
        if (w.a <= 0 || w.b <= 0 || w.c <= 0) throw std::domain_error("series weights must be positive");
    }
    SeriesTables<Scalar> t;
    t.order = order;
    t.weights = w;
    if constexpr (std::is_same_v<Scalar, double>) {
        t.scale = rho_of_weights(w.a, w.b);
        t.z_scale = detail::z_growth_rate(w.a, w.b, w.c);
    }
    const Scalar inv = Scalar(1) / t.scale;
    t.g.assign(order + 1, Scalar(0));
    t.g1.assign(order + 1, Scalar(0));
    t.z.assign(order + 1, Scalar(0));
    t.g[0] = 1;
    t.z[0] = 1;

    // c g1[j] (scale / z_scale)^j, the root component weight in z's scale.
    std::vector<Scalar> root_comp(order + 1, Scalar(0));
    const Scalar ratio = t.scale / t.z_scale;
    Scalar ratio_pow = 1;

    for (unsigned n = 1; n <= order; ++n) {
        if (n == 1) t.g1[1] = w.a * inv;
        else t.g1[n] = (w.b * t.g1[n - 1] + (t.g[n - 1] - t.g1[n - 1])) * inv;

        Accumulator<Scalar> s;
        for (unsigned j = 1; j <= n; ++j) s.add(t.g1[j] * t.g[n - j]);
        t.g[n] = s.value();

        ratio_pow *= ratio;
        root_comp[n] = w.c * t.g1[n] * ratio_pow;
        Accumulator<Scalar> sz;
        for (unsigned j = 1; j <= n; ++j) sz.add(root_comp[j] * t.z[n - j]);
        t.z[n] = sz.value();
    }
    return t;
}

inline SeriesTables<double> build_tables(const ThermoParams& p, unsigned order) {
    return build_tables<double>(Weights<double>::from(p), order);
}

/**
 * Residuals of G = 1 + xG^2 + (a-1)xG + (b-1)xGG* per coefficient, in the
 * stored (scaled) units. Zero in exact mode.
 */
template <class Scalar>
std::vector<Scalar> primary_recurrence_residuals(const SeriesTables<Scalar>& t) {
    const Scalar inv = Scalar(1) / t.scale;
    std::vector<Scalar> res(t.order + 1);
    for (unsigned n = 0; n <= t.order; ++n) {
        Scalar rhs = n == 0 ? Scalar(1) : Scalar(0);
        if (n >= 1) {
            Accumulator<Scalar> gg, ggs;
            for (unsigned j = 0; j <= n - 1; ++j) {
                gg.add(t.g[j] * t.g[n - 1 - j]);
                ggs.add(t.g[j] * t.g1[n - 1 - j]);
            }
            rhs += inv * (gg.value() + (t.weights.a - 1) * t.g[n - 1] + (t.weights.b - 1) * ggs.value());
        }
        res[n] = t.g[n] - rhs;
    }
    return res;
}

/// Residuals of G* = 1 - 1/G, with 1/G computed as an independent series inverse.
template <class Scalar>
std::vector<Scalar> gstar_identity_residuals(const SeriesTables<Scalar>& t) {
    std::vector<Scalar> inv_g(t.order + 1, Scalar(0));
    inv_g[0] = 1;
    for (unsigned n = 1; n <= t.order; ++n) {
        Accumulator<Scalar> s;
        for (unsigned j = 1; j <= n; ++j) s.add(t.g[j] * inv_g[n - j]);
        inv_g[n] = -s.value();
    }
    std::vector<Scalar> res(t.order + 1);
    res[0] = t.g1[0] - (Scalar(1) - inv_g[0]);
    for (unsigned n = 1; n <= t.order; ++n) res[n] = t.g1[n] + inv_g[n];
    return res;
}

/**
 * Explicit G_n(a, b) for n >= 2:
 *   2^-(n+1) sum_{0<=k<=(n+1)/2} C_{n-k} binom(n-k+1, k) (a+b)^(n-2k+1) (4a-(a+b)^2)^k.
 * For n < 2 the value is taken from the coefficient DP.
 */
template <class Scalar>
Scalar gn_explicit(unsigned n, const Scalar& a, const Scalar& b) {
    if (n < 2) return build_tables<Scalar>(Weights<Scalar>{a, b, Scalar(1)}, n).g_true(n);
    const Scalar u = a + b;
    const Scalar d = 4 * a - u * u;
    Scalar sum = 0;
    for (unsigned k = 0; 2 * k <= n + 1; ++k) {
        const mpz_class coeff = catalan(n - k) * binomial(n - k + 1, k);
        Scalar c;
        if constexpr (std::is_same_v<Scalar, double>) c = coeff.get_d();
        else c = Scalar(coeff);
        sum += c * ipow(u, n - 2 * k + 1) * ipow(d, k);
    }
    return sum / ipow(Scalar(2), n + 1);
}

/**
 * Coefficients of G from its square-root closed form,
 *   G = (1 + (2-a-b)x - sqrt((1-rho x)(1-rho_bar x))) / (2x),
 * via the power-series square root. Float-only validation path.
 */
inline std::vector<double> closed_form_g_coefficients(double a, double b, unsigned order) {
    const double u = a + b;
    const std::vector<double> disc{1.0, -2.0 * u, u * u - 4.0 * a};
    std::vector<double> root(order + 2, 0.0);
    root[0] = 1.0;
    for (unsigned n = 1; n <= order + 1; ++n) {
        double s = n < disc.size() ? disc[n] : 0.0;
        for (unsigned i = 1; i < n; ++i) s -= root[i] * root[n - i];
        root[n] = s / 2.0;
    }
    std::vector<double> g(order + 1);
    for (unsigned n = 0; n <= order; ++n) {
        double num = -root[n + 1];
        if (n == 0) num += 2.0 - u;
        g[n] = num / 2.0;
    }
    return g;
}

/// Z_n(alpha, beta, gamma): g[n] for gamma = 0, z[n] otherwise. Double mode;
/// overflows to inf for large n (see log_partition_exact).
inline double partition_exact(unsigned n, const ThermoParams& p) {
    const auto t = build_tables(p, n);
    return p.gamma == 0.0 ? t.g_true(n) : t.z_true(n);
}

inline double log_partition_exact(unsigned n, const ThermoParams& p) {
    const auto t = build_tables(p, n);
    return p.gamma == 0.0 ? t.log_g(n) : t.log_z(n);
}

/// Rational weights: exact Z = [x^n] G(x, a, b, c).
inline mpq_class partition_exact(unsigned n, const Weights<mpq_class>& w) {
    return build_tables<mpq_class>(w, n).z_true(n);
}

namespace detail {
inline void require_zero_gamma(const ThermoParams& p) {
    if (p.gamma != 0.0)
        throw std::domain_error("partition_asymptotic: only gamma = 0 has a stated leading-order estimate");
}
}  // namespace detail

/// log of sqrt(e^-alpha/2 rho) / (2 sqrt(pi)) rho^n n^-3/2.
inline double log_partition_asymptotic(unsigned n, double alpha, double beta) {
    if (n == 0) throw std::domain_error("partition_asymptotic: n must be positive");
    const double r = rho(alpha, beta);
    const double pi = std::acos(-1.0);
    return 0.5 * std::log(std::exp(-alpha / 2.0) * r) - std::log(2.0 * std::sqrt(pi)) + n * std::log(r) -
           1.5 * std::log(static_cast<double>(n));
}

inline double partition_asymptotic(unsigned n, double alpha, double beta) {
    return std::exp(log_partition_asymptotic(n, alpha, beta));
}

inline double partition_asymptotic(unsigned n, const ThermoParams& p) {
    detail::require_zero_gamma(p);
    return partition_asymptotic(n, p.alpha, p.beta);
}

/// Z_exact / Z_asymptotic computed in the scaled domain (no overflow).
inline double partition_ratio(const SeriesTables<double>& t, unsigned n, double alpha, double beta) {
    const double r = rho(alpha, beta);
    const double pi = std::acos(-1.0);
    const double scaled_asym = std::sqrt(std::exp(-alpha / 2.0) * r) / (2.0 * std::sqrt(pi)) *
                               std::pow(static_cast<double>(n), -1.5) * std::pow(t.scale / r, n);
    return t.g[n] / scaled_asym;
}

/**
 * Root-degree-truncated sequence weights: zh[d][m] is the stored weight of
 * root sequences with at most d components and total size m (scale rho).
 */
struct BoundedRootTable {
    unsigned max_root_degree = 0;
    std::vector<std::vector<double>> zh;
};

inline BoundedRootTable bounded_root_table(const SeriesTables<double>& t, unsigned h) {
    BoundedRootTable b;
    b.max_root_degree = h;
    b.zh.assign(h + 1, std::vector<double>(t.order + 1, 0.0));
    b.zh[0][0] = 1.0;
    for (unsigned d = 1; d <= h; ++d) {
        b.zh[d][0] = 1.0;
        for (unsigned m = 1; m <= t.order; ++m) {
            CompensatedSum s;
            for (unsigned j = 1; j <= m; ++j) s.add(t.weights.c * t.g1[j] * b.zh[d - 1][m - j]);
            b.zh[d][m] = s.value();
        }
    }
    return b;
}

}  // namespace ptree
