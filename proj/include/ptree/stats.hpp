#pragma once

/**
 * @file stats.hpp
 * @brief Moment estimation and convergence experiments. Small sizes are
 *        computed exactly by enumeration, larger ones by Monte Carlo with the
 *        exact sampler.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "ptree/asymptotics.hpp"
#include "ptree/enumeration.hpp"
#include "ptree/numeric.hpp"
#include "ptree/properties.hpp"
#include "ptree/sampler.hpp"

namespace ptree {

enum class EstimateMethod { automatic, exact, monte_carlo };

inline const char* to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::automatic: return "auto";
        case EstimateMethod::exact: return "enumeration-exact";
        case EstimateMethod::monte_carlo: return "monte-carlo";
    }
    return "";
}

struct EstimateOptions {
    EstimateMethod method = EstimateMethod::automatic;
    /// automatic switches to enumeration at n <= exact_limit
    unsigned exact_limit = 12;
    std::optional<unsigned> root_max;
    unsigned threads = 1;
};

struct MomentEstimate {
    std::string property;
    unsigned n = 0;
    ThermoParams params;
    unsigned k = 1;
    double value = 0;
    double std_error = 0;
    std::size_t count = 0;
    EstimateMethod method = EstimateMethod::exact;
};

namespace detail {

inline bool use_exact(unsigned n, const EstimateOptions& o) {
    if (o.method == EstimateMethod::exact) return true;
    if (o.method == EstimateMethod::monte_carlo) return false;
    return n <= o.exact_limit;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

inline double mean_and_error(const std::vector<double>& xs, double& se) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    const double m = s.value() / static_cast<double>(xs.size());
    CompensatedSum v;
    for (double x : xs) v.add((x - m) * (x - m));
    se = xs.size() > 1 ? std::sqrt(v.value() / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()))
                       : 0.0;
    return m;
}

}  // namespace detail

/// E[P^k] under the Gibbs law on n edges.
inline MomentEstimate estimate_moment(unsigned n, const ThermoParams& p, const Property& prop, unsigned k,
                                      std::size_t count, std::uint64_t seed, const EstimateOptions& opt = {}) {
    MomentEstimate e;
    e.property = prop.id();
    e.n = n;
    e.params = p;
    e.k = k;
    if (detail::use_exact(n, opt)) {
        EnumerationOptions eo;
        eo.guard = std::max(opt.exact_limit, default_enumeration_guard);
        eo.root_max = opt.root_max;
        e.value = exact_moments<double>(n, Weights<double>::from(p), prop, k, eo)[k];
        e.method = EstimateMethod::exact;
        return e;
    }
    if (count < 2) throw std::invalid_argument("estimate_moment: Monte Carlo needs at least 2 samples");
    GibbsSampler sampler(n, p, opt.root_max);
    BatchOptions bo;
    bo.count = count;
    bo.seed = seed;
    bo.properties = {prop};
    bo.threads = opt.threads;
    const SampleBatch b = sample_batch(sampler, bo);
    std::vector<double> xs;
    xs.reserve(count);
    for (const auto& r : b.records) xs.push_back(std::pow(r.values[0], static_cast<double>(k)));
    e.value = detail::mean_and_error(xs, e.std_error);
    e.count = count;
    e.method = EstimateMethod::monte_carlo;
    return e;
}

struct RatioRow {
    unsigned n = 0;
    MomentEstimate numerator;
    MomentEstimate denominator;
    double observed = 0;
    double std_error = 0;
    double predicted = 0;
    double abs_error = 0;
};

struct RatioReport {
    std::string numerator_label;
    std::string denominator_label;
    double predicted = 0;
    std::vector<RatioRow> rows;
    /// |observed - predicted| is non-increasing along the grid.
    bool monotone = true;
    std::string note =
        "mean ratios assume uniform integrability of the normalised property; only distributional convergence "
        "is proven";
};

namespace detail {

inline void check_grid(const std::vector<unsigned>& grid) {
    if (grid.empty()) throw std::invalid_argument("experiment: empty n grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw std::invalid_argument("experiment: n grid must be strictly increasing");
}

inline void finish(RatioReport& rep) {
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].abs_error > rep.rows[i - 1].abs_error) rep.monotone = false;
}

inline void set_ratio(RatioRow& row, double predicted, bool independent, double cov) {
    const double a = row.numerator.value, b = row.denominator.value;
    row.observed = a / b;
    const double ra = row.numerator.std_error / a, rb = row.denominator.std_error / b;
    double v = ra * ra + rb * rb;
    if (!independent) v -= 2.0 * cov / (a * b);
    row.std_error = std::abs(row.observed) * std::sqrt(std::max(0.0, v));
    row.predicted = predicted;
    row.abs_error = std::abs(row.observed - predicted);
}

}  // namespace detail

/// Toll whose subtree additive property equals the built-in, if there is one.
inline std::optional<PolynomialToll> equivalent_toll(Builtin b) {
    switch (b) {
        case Builtin::path_length: return parse_toll("t+1");
        case Builtin::wiener: return parse_toll("(t+1)(n-t)");
        case Builtin::leaf_root: return parse_toll("l0");
        case Builtin::internal_root: return parse_toll("l1");
        case Builtin::edges: return parse_toll("1");
        default: return std::nullopt;
    }
}

inline std::optional<PolynomialToll> toll_of(const Property& p) {
    if (p.toll()) return *p.toll();
    return equivalent_toll(*p.builtin());
}

/// E[a] / E[b] under one parameter set, both read from the same trees.
inline RatioReport ratio_experiment(const Property& a, const Property& b, const ThermoParams& p,
                                    const std::vector<unsigned>& grid, std::size_t count, std::uint64_t seed,
                                    double predicted, const EstimateOptions& opt = {}) {
    detail::check_grid(grid);
    RatioReport rep;
    rep.numerator_label = a.id();
    rep.denominator_label = b.id();
    rep.predicted = predicted;
    for (unsigned n : grid) {
        RatioRow row;
        row.n = n;
        if (detail::use_exact(n, opt)) {
            row.numerator = estimate_moment(n, p, a, 1, count, seed, opt);
            row.denominator = estimate_moment(n, p, b, 1, count, seed, opt);
            detail::set_ratio(row, predicted, true, 0.0);
        } else {
            if (count < 2) throw std::invalid_argument("ratio_experiment: Monte Carlo needs at least 2 samples");
            GibbsSampler sampler(n, p, opt.root_max);
            BatchOptions bo;
            bo.count = count;
            bo.seed = detail::derive_seed(seed, n);
            bo.properties = {a, b};
            bo.threads = opt.threads;
            const SampleBatch batch = sample_batch(sampler, bo);
            std::vector<double> xa, xb;
            for (const auto& r : batch.records) {
                xa.push_back(r.values[0]);
                xb.push_back(r.values[1]);
            }
            for (auto* side : {&row.numerator, &row.denominator}) {
                side->n = n;
                side->params = p;
                side->count = count;
                side->method = EstimateMethod::monte_carlo;
            }
            row.numerator.property = a.id();
            row.denominator.property = b.id();
            row.numerator.value = detail::mean_and_error(xa, row.numerator.std_error);
            row.denominator.value = detail::mean_and_error(xb, row.denominator.std_error);
            CompensatedSum c;
            for (std::size_t i = 0; i < xa.size(); ++i)
                c.add((xa[i] - row.numerator.value) * (xb[i] - row.denominator.value));
            const double cov = c.value() / static_cast<double>(count - 1) / static_cast<double>(count);
            detail::set_ratio(row, predicted, false, cov);
        }
        rep.rows.push_back(row);
    }
    detail::finish(rep);
    return rep;
}

/// E_(alpha,beta,0)[P^f] / E_(0,0,0)[P^f] against the predicted Q(f, alpha, beta).
inline RatioReport scaling_experiment(const Property& f, double alpha, double beta,
                                      const std::vector<unsigned>& grid, std::size_t count, std::uint64_t seed,
                                      const EstimateOptions& opt = {}) {
    detail::check_grid(grid);
    const auto toll = toll_of(f);
    if (!toll) throw std::invalid_argument("scaling_experiment: property " + f.id() + " has no polynomial toll");
    RatioReport rep;
    rep.predicted = q_constant(*toll, alpha, beta);
    const ThermoParams weighted{alpha, beta, 0.0}, uniform{};
    rep.numerator_label = f.id() + "@(" + std::to_string(alpha) + "," + std::to_string(beta) + ",0)";
    rep.denominator_label = f.id() + "@(0,0,0)";
    EstimateOptions o = opt;
    o.root_max.reset();
    for (unsigned n : grid) {
        RatioRow row;
        row.n = n;
        row.numerator = estimate_moment(n, weighted, f, 1, count, detail::derive_seed(seed, 2 * n), o);
        row.denominator = estimate_moment(n, uniform, f, 1, count, detail::derive_seed(seed, 2 * n + 1), o);
        detail::set_ratio(row, rep.predicted, true, 0.0);
        rep.rows.push_back(row);
    }
    detail::finish(rep);
    return rep;
}

/// Root degree <= h under (alpha, beta, gamma) against (alpha, beta, 0)
/// without a bound; the predicted ratio of means is 1.
inline RatioReport bounded_root_experiment(const Property& f, const ThermoParams& p, unsigned h,
                                           const std::vector<unsigned>& grid, std::size_t count,
                                           std::uint64_t seed, const EstimateOptions& opt = {}) {
    detail::check_grid(grid);
    if (h < 1) throw std::invalid_argument("bounded_root_experiment: h must be at least 1");
    RatioReport rep;
    rep.predicted = 1.0;
    const ThermoParams free{p.alpha, p.beta, 0.0};
    rep.numerator_label = f.id() + "|root<=" + std::to_string(h);
    rep.denominator_label = f.id() + "@gamma=0";
    for (unsigned n : grid) {
        RatioRow row;
        row.n = n;
        EstimateOptions bounded = opt, unbounded = opt;
        bounded.root_max = h;
        unbounded.root_max.reset();
        row.numerator = estimate_moment(n, p, f, 1, count, detail::derive_seed(seed, 2 * n), bounded);
        row.denominator = estimate_moment(n, free, f, 1, count, detail::derive_seed(seed, 2 * n + 1), unbounded);
        detail::set_ratio(row, rep.predicted, true, 0.0);
        rep.rows.push_back(row);
    }
    detail::finish(rep);
    return rep;
}

struct ChiSquareResult {
    double statistic = 0;
    unsigned dof = 0;
    double p_value = 1;
};

/// Pearson goodness of fit; cells with expected count below min_expected are
/// pooled into one cell.
inline ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs,
                                      double min_expected = 5.0) {
    if (observed.size() != probs.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
    std::uint64_t total = 0;
    for (auto o : observed) total += o;
    ChiSquareResult r;
    double pooled_e = 0, pooled_o = 0;
    unsigned cells = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double e = probs[i] * static_cast<double>(total);
        if (e < min_expected) {
            pooled_e += e;
            pooled_o += static_cast<double>(observed[i]);
            continue;
        }
        const double d = static_cast<double>(observed[i]) - e;
        r.statistic += d * d / e;
        ++cells;
    }
    if (pooled_e > 0) {
        const double d = pooled_o - pooled_e;
        r.statistic += d * d / pooled_e;
        ++cells;
    }
    if (cells < 2) return r;
    r.dof = cells - 1;
    r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
    return r;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s / 2.0;
}

}  // namespace ptree
