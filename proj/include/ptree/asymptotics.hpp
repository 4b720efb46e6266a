#pragma once

/**
 * @file asymptotics.hpp
 * @brief Degree analysis of polynomial tolls and the limit constants of the
 *        scaling law for subtree additive properties.
 *
 * Variables split into three groups: size {t, n}, leaves {l0, L0} and
 * internal nodes {l1, L1}. The lower-case ones describe the subtree T_v and
 * the upper-case ones the whole tree.
 */

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ptree/series.hpp"
#include "ptree/toll.hpp"

namespace ptree {

class HypothesisViolated : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct TollAnalysis {
    unsigned delta = 0;
    unsigned delta_n = 0;
    unsigned delta_d0 = 0;
    unsigned delta_d1 = 0;
    /// All monomials of maximal degree have the same group degrees.
    bool uniform = true;
    /// Every maximal monomial involves a subtree variable (t, l0 or l1).
    bool subtree_positive = true;

    /// Limit exponent V'(f): the property scales like n^V'.
    double v_prime() const { return subtree_positive ? (2.0 * delta + 1.0) / 2.0 : delta + 1.0; }
    /// Exponent V_k(f) of the k-th moment generating function singularity.
    double v_k(unsigned k) const {
        return subtree_positive ? ((2.0 * delta + 1.0) * k - 1.0) / 2.0 : (2.0 * (delta + 1.0) * k - 1.0) / 2.0;
    }
};

inline TollAnalysis analyze_toll(const PolynomialToll& f) {
    if (f.is_zero()) throw std::invalid_argument("analyze_toll: the zero toll has no degree");
    TollAnalysis a;
    for (const auto& [e, c] : f.terms()) {
        unsigned deg = 0;
        for (auto x : e) deg += x;
        a.delta = std::max(a.delta, deg);
    }
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        unsigned deg = 0;
        for (auto x : e) deg += x;
        if (deg != a.delta) continue;
        const unsigned dn = e[var_t] + e[var_n];
        const unsigned d0 = e[var_l0] + e[var_L0];
        const unsigned d1 = e[var_l1] + e[var_L1];
        if (first) {
            a.delta_n = dn;
            a.delta_d0 = d0;
            a.delta_d1 = d1;
            first = false;
        } else if (dn != a.delta_n || d0 != a.delta_d0 || d1 != a.delta_d1) {
            a.uniform = false;
        }
        if (e[var_t] + e[var_l0] + e[var_l1] == 0) a.subtree_positive = false;
    }
    return a;
}

namespace detail {
inline void require_uniform(const TollAnalysis& a) {
    if (!a.uniform)
        throw HypothesisViolated(
            "maximal monomials of the toll differ in their (n, d0, d1) group degrees; no scaling constant exists");
}

// The k-independent bracket of Q_k.
inline double q_inner(const TollAnalysis& a, double alpha, double beta) {
    const double r = rho(alpha, beta);
    const double s = std::exp(-alpha / 2.0);
    const double d0 = a.delta_d0, d1 = a.delta_d1;
    if (a.subtree_positive)
        return std::pow(s + 1.0, d0 - 1.0) * std::exp(-alpha / 4.0 * (2.0 * d0 - 1.0)) * std::exp(-beta * d1) /
               std::sqrt(std::pow(r, 2.0 * d0 + 2.0 * d1 - 1.0));
    return std::pow(s + 1.0, d0) * std::exp(-alpha * d0 / 2.0) * std::exp(-beta * d1) / std::pow(r, d0 + d1);
}
}  // namespace detail

/// Q_k(f, d0, d1, alpha, beta) = sqrt(rho e^-alpha/2) * inner^k.
inline double q_k(const TollAnalysis& a, unsigned k, double alpha, double beta) {
    return std::sqrt(rho(alpha, beta) * std::exp(-alpha / 2.0)) * std::pow(detail::q_inner(a, alpha, beta), k);
}

/// Q(f, alpha, beta) in closed form.
inline double q_constant(const TollAnalysis& a, double alpha, double beta) {
    detail::require_uniform(a);
    const double r = rho(alpha, beta);
    const double s = std::exp(-alpha / 2.0);
    const double d0 = a.delta_d0, d1 = a.delta_d1;
    const double two = std::pow(2.0, d0 + 2.0 * d1);
    if (a.subtree_positive)
        return two * std::pow(s + 1.0, d0 - 1.0) * std::exp(-alpha / 4.0 * (2.0 * d0 - 1.0)) *
               std::exp(-beta * d1) / std::sqrt(std::pow(r, 2.0 * d0 + 2.0 * d1 - 1.0));
    return two * std::pow(s + 1.0, d0) * std::exp(-alpha * d0 / 2.0) * std::exp(-beta * d1) / std::pow(r, d0 + d1);
}

/// The same constant as the k-th root of the normalised Q_k ratio.
inline double q_from_qk(const TollAnalysis& a, unsigned k, double alpha, double beta) {
    detail::require_uniform(a);
    TollAnalysis one;
    one.subtree_positive = false;
    const double ratio = q_k(one, k, 0, 0) / q_k(a, k, 0, 0) * q_k(a, k, alpha, beta) / q_k(one, k, alpha, beta);
    return std::pow(ratio, 1.0 / k);
}

inline double q_constant(const PolynomialToll& f, double alpha, double beta) {
    return q_constant(analyze_toll(f), alpha, beta);
}

/// Predicted limit of E_(alpha,beta,0)[P^f] / E_(0,0,0)[P^f].
inline double predict_mean_ratio(const PolynomialToll& f, double alpha, double beta) {
    return q_constant(f, alpha, beta);
}

enum class LimitLaw { airy, excursion_integral, degenerate };

inline const char* to_string(LimitLaw l) {
    switch (l) {
        case LimitLaw::airy: return "airy";
        case LimitLaw::excursion_integral: return "excursion-integral";
        case LimitLaw::degenerate: return "degenerate";
    }
    return "";
}

struct LimitPrediction {
    TollAnalysis analysis;
    double v_prime = 0;
    double q = 0;
    LimitLaw law = LimitLaw::degenerate;
};

inline LimitPrediction predict_limit(const PolynomialToll& f, double alpha, double beta) {
    LimitPrediction p;
    p.analysis = analyze_toll(f);
    p.v_prime = p.analysis.v_prime();
    p.q = q_constant(p.analysis, alpha, beta);
    if (!p.analysis.subtree_positive) p.law = LimitLaw::degenerate;
    else if (p.analysis.delta == 1) p.law = LimitLaw::airy;
    else p.law = LimitLaw::excursion_integral;
    return p;
}

}  // namespace ptree
