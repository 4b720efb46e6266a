#pragma once

/**
 * @file verify.hpp
 * @brief The acceptance battery: nine criteria, each with fixed tolerances,
 *        sample counts, seeds and a wall-clock budget.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptree/asymptotics.hpp"
#include "ptree/counting.hpp"
#include "ptree/enumeration.hpp"
#include "ptree/properties.hpp"
#include "ptree/sampler.hpp"
#include "ptree/series.hpp"
#include "ptree/stats.hpp"
#include "ptree/toll.hpp"
#include "ptree/tree.hpp"
#include "ptree/version.hpp"

namespace ptree {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

enum class Suite { quick, full };

inline const char* to_string(Suite s) { return s == Suite::quick ? "quick" : "full"; }

struct VerifyOptions {
    Suite suite = Suite::full;
    unsigned threads = 1;
    std::uint64_t seed = 20240611;
};

struct VerifyReport {
    Suite suite = Suite::full;
    std::vector<CriterionResult> criteria;
    bool all_passed() const {
        return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
    }
};

namespace verify {

/// Collects named checks; the first few failures end up in the detail text.
class Checklist {
public:
    void check(bool ok, const std::string& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (failures_.size() < 8) failures_.push_back(what);
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << (total_ - failed_) << "/" << total_ << " checks passed";
        for (const auto& f : failures_) s << "; FAIL " << f;
        return s.str();
    }

private:
    std::size_t total_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

inline std::string fmt(double x, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << x;
    return s.str();
}

// Criterion 1: every closed form against the enumeration histograms.
inline std::string counting_exactness(unsigned n_max, bool& ok) {
    Checklist cl;
    for (unsigned n = 0; n <= n_max; ++n) {
        std::map<std::array<long, 3>, long> full;
        TreeProfile prof;
        for_each_tree(n, [&](const PlaneTree& t) {
            prof.compute(t);
            const auto& s = prof.stats();
            ++full[{static_cast<long>(s.internal), static_cast<long>(s.leaves), static_cast<long>(s.root_degree)}];
        });
        std::map<long, long> by_k, by_r, by_m;
        std::map<std::pair<long, long>, long> by_mk, by_kr;
        for (const auto& [key, c] : full) {
            const auto [m, k, r] = key;
            by_m[m] += c;
            by_k[k] += c;
            by_r[r] += c;
            by_mk[{m, k}] += c;
            by_kr[{k, r}] += c;
        }
        const long N = n;
        const std::string tag = "n=" + std::to_string(n);
        BigCount total = 0;
        for (long x = 0; x <= N; ++x) {
            cl.check(count_by_leaves(N, x) == by_k[x], tag + " leaves k=" + std::to_string(x));
            cl.check(count_by_root(N, x) == by_r[x], tag + " root r=" + std::to_string(x));
            cl.check(count_by_internal(N, x) == by_m[x], tag + " internal m=" + std::to_string(x));
        }
        for (long k = 0; k <= N; ++k)
            for (long r = 0; r <= N; ++r)
                cl.check(count_kr(N, k, r) == by_kr[{k, r}],
                         tag + " kr (" + std::to_string(k) + "," + std::to_string(r) + ")");
        for (long m = 0; m <= N; ++m)
            for (long k = 0; k <= N; ++k) {
                cl.check(count_mk(N, m, k) == by_mk[{m, k}],
                         tag + " mk (" + std::to_string(m) + "," + std::to_string(k) + ")");
                for (long r = 0; r <= N; ++r) {
                    auto it = full.find({m, k, r});
                    const long e = it == full.end() ? 0 : it->second;
                    const BigCount f = count_full(N, m, k, r);
                    total += f;
                    cl.check(f == e, tag + " full (" + std::to_string(m) + "," + std::to_string(k) + "," +
                                         std::to_string(r) + ")");
                }
            }
        cl.check(total == catalan(N), tag + " full total");
    }
    ok = cl.ok();
    return "n<=" + std::to_string(n_max) + ": " + cl.summary();
}

// Criterion 2: exact recurrence identities and the explicit coefficient formula.
inline std::string generating_functions(bool& ok) {
    Checklist cl;
    const Weights<mpq_class> w{mpq_class(1, 2), mpq_class(3, 2), mpq_class(2, 3)};
    const auto t = build_tables<mpq_class>(w, 200);
    const auto r1 = primary_recurrence_residuals(t);
    const auto r2 = gstar_identity_residuals(t);
    for (unsigned n = 0; n <= 200; ++n) {
        cl.check(r1[n] == 0, "recurrence residual n=" + std::to_string(n));
        cl.check(r2[n] == 0, "G* identity residual n=" + std::to_string(n));
    }
    double worst = 0;
    const double pairs[3][2] = {{1.0, 1.0}, {2.0, 1.0}, {0.5, 1.5}};
    for (const auto& p : pairs) {
        const auto d = build_tables<double>({p[0], p[1], 1.0}, 16);
        for (unsigned n = 2; n <= 16; ++n) {
            const double rel = std::abs(gn_explicit<double>(n, p[0], p[1]) / d.g_true(n) - 1.0);
            worst = std::max(worst, rel);
            cl.check(rel <= 1e-10, "explicit G_n n=" + std::to_string(n) + " a=" + fmt(p[0]) + " b=" + fmt(p[1]));
        }
    }
    ok = cl.ok();
    return "order 200 exact residuals zero, explicit G_n worst rel err " + fmt(worst, 3) + "; " + cl.summary();
}

// Criterion 3: exact / asymptotic partition function ratio.
inline std::string partition_asymptotics(bool& ok) {
    const double alpha = 0.5, beta = 1.0;
    const auto t = build_tables(ThermoParams{alpha, beta, 0.0}, 2000);
    const double r500 = partition_ratio(t, 500, alpha, beta);
    const double r2000 = partition_ratio(t, 2000, alpha, beta);
    ok = r2000 >= 0.98 && r2000 <= 1.02 && std::abs(r2000 - 1.0) < std::abs(r500 - 1.0);
    return "ratio n=500 " + fmt(r500, 8) + ", n=2000 " + fmt(r2000, 8) + " (band [0.98,1.02], closer at 2000)";
}

struct SamplerCase {
    std::string label;
    Weights<double> weights;
    std::optional<unsigned> root_max;
};

// Criterion 4: sampler frequencies against the exact Gibbs law at n = 6.
inline std::string sampler_exactness(std::size_t draws, const VerifyOptions& vo, bool& ok) {
    const unsigned n = 6;
    const std::vector<SamplerCase> cases = {
        {"weights(1/2,1,1)", {0.5, 1.0, 1.0}, std::nullopt},
        {"params(0.5,1.0,0.7)", Weights<double>::from({0.5, 1.0, 0.7}), std::nullopt},
        {"weights(2,1/2,1/3)", {2.0, 0.5, 1.0 / 3.0}, std::nullopt},
        {"weights(1/2,1,1/2) root<=2", {0.5, 1.0, 0.5}, 2u},
    };
    std::ostringstream detail;
    ok = true;
    std::uint64_t tag = 0;
    for (const auto& c : cases) {
        std::map<std::string, std::size_t> index;
        std::vector<double> probs;
        const WeightTable<double> wt(c.weights, n);
        TreeProfile prof;
        double z = 0;
        for_each_tree(n, [&](const PlaneTree& t) {
            prof.compute(t);
            if (c.root_max && prof.stats().root_degree > *c.root_max) return;
            index.emplace(to_parens(t), probs.size());
            probs.push_back(wt(prof.stats()));
            z += probs.back();
        });
        for (double& p : probs) p /= z;

        GibbsSampler sampler(n, c.weights, c.root_max);
        BatchOptions bo;
        bo.count = draws;
        bo.seed = detail::derive_seed(vo.seed, 400 + tag++);
        bo.keep_trees = true;
        bo.threads = vo.threads;
        const SampleBatch batch = sample_batch(sampler, bo);
        std::vector<std::uint64_t> counts(probs.size(), 0);
        std::size_t outside = 0;
        for (const auto& r : batch.records) {
            auto it = index.find(r.parens);
            if (it == index.end()) ++outside;
            else ++counts[it->second];
        }
        std::vector<double> freq(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) freq[i] = static_cast<double>(counts[i]) / draws;
        const double tv = total_variation(freq, probs) + 0.5 * static_cast<double>(outside) / draws;
        const ChiSquareResult chi = chi_square_gof(counts, probs);
        const bool pass = outside == 0 && tv < 0.01 && chi.p_value >= 1e-3;
        ok = ok && pass;
        detail << c.label << ": TV=" << fmt(tv, 4) << " chi2=" << fmt(chi.statistic, 5) << " dof=" << chi.dof
               << " p=" << fmt(chi.p_value, 4) << (pass ? "" : " FAIL") << "; ";
    }
    detail << draws << " draws each, n=6";
    return detail.str();
}

inline std::string ratio_rows(const RatioReport& r) {
    std::ostringstream s;
    for (const auto& row : r.rows) {
        s << "n=" << row.n << ":" << fmt(row.observed, 6);
        if (row.std_error > 0) s << "+-" << fmt(row.std_error, 2);
        s << " ";
    }
    return s.str();
}

// Criterion 5: PL/LR -> 2 and PL/IR -> 4 under uniform weights.
inline std::string subtree_ratios(std::size_t count, const VerifyOptions& vo, bool& ok) {
    EstimateOptions eo;
    eo.threads = vo.threads;
    const std::vector<unsigned> grid{8, 10, 12, 400, 1600};
    const Property pl(Builtin::path_length), lr(Builtin::leaf_root), ir(Builtin::internal_root);
    const auto a = ratio_experiment(pl, lr, {}, grid, count, detail::derive_seed(vo.seed, 500), 2.0, eo);
    const auto b = ratio_experiment(pl, ir, {}, grid, count, detail::derive_seed(vo.seed, 501), 4.0, eo);
    auto exact_trend = [](const RatioReport& r) {
        return r.rows[0].abs_error > r.rows[1].abs_error && r.rows[1].abs_error > r.rows[2].abs_error;
    };
    const double ea = a.rows.back().abs_error / 2.0, eb = b.rows.back().abs_error / 4.0;
    ok = ea < 0.05 && eb < 0.05 && exact_trend(a) && exact_trend(b);
    return "PL/LR " + ratio_rows(a) + "(rel err " + fmt(ea, 3) + "); PL/IR " + ratio_rows(b) + "(rel err " +
           fmt(eb, 3) + "); exact n=8,10,12 trend " + (exact_trend(a) && exact_trend(b) ? "monotone" : "NOT monotone");
}

// Criteria 6 and 7: scaling constant Q for a toll at (0.5, 1.0).
inline std::string scaling_constant(const Property& f, double tol, bool check_trend, std::size_t count,
                                    std::uint64_t tag, const VerifyOptions& vo, bool& ok) {
    EstimateOptions eo;
    eo.threads = vo.threads;
    const auto r = scaling_experiment(f, 0.5, 1.0, {6, 12, 2000}, count, detail::derive_seed(vo.seed, tag), eo);
    const double rel = r.rows[2].abs_error / r.predicted;
    const bool trend = r.rows[1].abs_error < r.rows[0].abs_error;
    ok = rel < tol && (!check_trend || trend);
    return f.id() + ": Q=" + fmt(r.predicted, 8) + " observed " + ratio_rows(r) + "rel err at 2000 " + fmt(rel, 3) +
           " (tol " + fmt(tol) + "); exact n=12 " + (trend ? "closer" : "not closer") + " than n=6";
}

// Criterion 8: root degree <= 3 at gamma = 0.7 against the unrestricted law.
inline std::string bounded_root(std::size_t count, const VerifyOptions& vo, bool& ok) {
    EstimateOptions eo;
    eo.threads = vo.threads;
    const auto r = bounded_root_experiment(Property(Builtin::path_length), {0.5, 1.0, 0.7}, 3, {1000}, count,
                                           detail::derive_seed(vo.seed, 800), eo);
    const auto& row = r.rows[0];
    const double scale = std::pow(1000.0, 1.5);
    ok = row.abs_error < 0.05;
    return "E[PL]/n^1.5 bounded " + fmt(row.numerator.value / scale, 6) + " vs unrestricted " +
           fmt(row.denominator.value / scale, 6) + ", ratio " + fmt(row.observed, 6) + "+-" +
           fmt(row.std_error, 2) + " (tol 0.05)";
}

// Depth and all-pairs oracles for the property checks below.
inline std::uint64_t bfs_wiener(const PlaneTree& t) {
    const std::size_t nv = t.vertex_count();
    std::vector<std::vector<vertex_t>> adj(nv);
    for (std::size_t i = 1; i < nv; ++i) {
        adj[i].push_back(t.parent(static_cast<vertex_t>(i)));
        adj[t.parent(static_cast<vertex_t>(i))].push_back(static_cast<vertex_t>(i));
    }
    std::uint64_t total = 0;
    std::vector<int> dist(nv);
    std::vector<vertex_t> queue;
    for (std::size_t s = 0; s < nv; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.assign(1, static_cast<vertex_t>(s));
        dist[s] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (vertex_t w : adj[queue[h]])
                if (dist[w] < 0) {
                    dist[w] = dist[queue[h]] + 1;
                    queue.push_back(w);
                }
        for (std::size_t v = s + 1; v < nv; ++v) total += dist[v];
    }
    return total;
}

// Criterion 9: structural identities and module invariants.
inline std::string property_suites(bool& ok) {
    Checklist cl;
    // Tree core: join / unjoin, stats partition, records, parenthesis round trip.
    std::vector<std::vector<PlaneTree>> by_n(9);
    for (unsigned n = 0; n <= 8; ++n) for_each_tree(n, [&](const PlaneTree& t) { by_n[n].push_back(t); });
    for (unsigned n1 = 0; n1 <= 4; ++n1)
        for (unsigned n2 = 0; n1 + n2 <= 4; ++n2)
            for (const auto& a : by_n[n1])
                for (const auto& b : by_n[n2]) {
                    const PlaneTree j = join(a, b);
                    const auto [u1, u2] = unjoin(j);
                    cl.check(j.edge_count() == n1 + n2 + 1 && u1 == a && u2 == b, "unjoin(join) " + to_parens(j));
                }
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& t : by_n[n]) {
            const auto [a, b] = unjoin(t);
            cl.check(join(a, b) == t, "join(unjoin) " + to_parens(t));
        }
    for (unsigned n = 0; n <= 8; ++n) {
        std::set<std::string> images;
        std::map<std::array<long, 3>, long> lhs, rhs;
        for (const auto& t : by_n[n]) {
            const std::string p = to_parens(t);
            cl.check(to_parens(from_parens(p)) == p && from_parens(p) == t, "paren round trip " + p);
            const PlaneTree s = psi(t);
            images.insert(to_parens(s));
            const TreeStats st = stats(t), ss = stats(s);
            cl.check(leftmost_path_length(s) == st.root_degree, "psi leftmost path " + p);
            if (n >= 1) cl.check(ss.leaves == n + 1 - st.leaves, "psi leaf count " + p);
            ++lhs[{static_cast<long>(st.root_degree), static_cast<long>(st.internal), static_cast<long>(st.leaves)}];
            ++rhs[{static_cast<long>(leftmost_path_length(s)), static_cast<long>(leaves_with_left_sibling(s)),
                   n >= 1 ? static_cast<long>(n + 1 - ss.leaves) : 0L}];
        }
        cl.check(images.size() == by_n[n].size(), "psi bijective n=" + std::to_string(n));
        cl.check(lhs == rhs, "psi (r,m,k) correspondence n=" + std::to_string(n));
    }
    // Properties against direct oracles.
    const Property f_pl = Property::parse("t+1"), f_wi = Property::parse("(t+1)(n-t)"), f_lr = Property::parse("l0"),
                   f_ir = Property::parse("l1"), f_one = Property::parse("1");
    for (unsigned n = 0; n <= 7; ++n)
        for (const auto& t : by_n[n]) {
            TreeProfile prof;
            prof.compute(t);
            const auto d = depths(t);
            std::uint64_t pl = 0, lr = 0, ir = 0;
            for (std::size_t v = 1; v < t.vertex_count(); ++v) {
                pl += d[v];
                if (prof.degree(static_cast<vertex_t>(v)) == 0) lr += d[v];
                if (prof.degree(static_cast<vertex_t>(v)) == 1) ir += d[v];
            }
            const std::string p = to_parens(t);
            cl.check(path_length(prof) == pl && leaf_root_distance(prof) == lr && internal_root_distance(prof) == ir,
                     "depth oracle " + p);
            cl.check(wiener_index(prof) == bfs_wiener(t), "wiener BFS " + p);
            cl.check(f_pl.evaluate<mpq_class>(prof) == static_cast<long>(pl) &&
                         f_wi.evaluate<mpq_class>(prof) == static_cast<long>(wiener_index(prof)) &&
                         f_lr.evaluate<mpq_class>(prof) == static_cast<long>(lr) &&
                         f_ir.evaluate<mpq_class>(prof) == static_cast<long>(ir) &&
                         f_one.evaluate<mpq_class>(prof) == static_cast<long>(n),
                     "toll identities " + p);
            cl.check(lr + ir <= pl, "lr+ir<=pl " + p);
            if (n >= 1) cl.check(pl >= n && pl <= std::uint64_t(n) * n, "path length bounds " + p);
        }
    // Enumeration and series.
    for (unsigned n = 0; n <= 14; ++n) {
        std::uint64_t c = 0;
        for_each_tree(n, [&](const PlaneTree&) { ++c; });
        cl.check(BigCount(static_cast<unsigned long>(c)) == catalan(n), "C_n count n=" + std::to_string(n));
    }
    const ThermoParams sets[3] = {{0.5, 1.0, 0.0}, {std::log(2.0), std::log(2.0), std::log(2.0)}, {-0.3, 0.4, -0.5}};
    for (const auto& p : sets) {
        const auto t = build_tables(p, 12);
        for (unsigned n = 0; n <= 12; ++n) {
            const double e = exact_partition(n, p), s = p.gamma == 0 ? t.g_true(n) : t.z_true(n);
            cl.check(std::abs(e / s - 1.0) <= 1e-12, "partition vs enumeration n=" + std::to_string(n));
        }
    }
    {
        const auto t = build_tables<double>({0.3, 2.5, 1.7}, 30);
        const auto cf = closed_form_g_coefficients(0.3, 2.5, 30);
        for (unsigned n = 0; n <= 30; ++n) {
            cl.check(t.g[n] > 0 && t.g1[n] >= 0 && t.z[n] >= 0, "positivity n=" + std::to_string(n));
            cl.check(std::abs(cf[n] / t.g_true(n) - 1.0) <= 1e-10, "closed form n=" + std::to_string(n));
        }
        const auto u = build_tables<mpq_class>({1, 1, 1}, 20);
        for (unsigned n = 0; n <= 20; ++n)
            cl.check(u.g_true(n) == catalan(n) && u.z_true(n) == u.g_true(n), "Catalan/z at unit weights");
    }
    // Asymptotics.
    for (const char* f : {"t+1", "(t+1)(n-t)", "l0", "l1", "n", "t*L0+l0*n", "n^2", "1"}) {
        const TollAnalysis a = analyze_toll(parse_toll(f));
        cl.check(std::abs(q_constant(a, 0.0, 0.0) - 1.0) <= 1e-14, std::string("Q(f,0,0)=1 for ") + f);
        for (unsigned k = 1; k <= 3; ++k)
            cl.check(std::abs(q_from_qk(a, k, 0.5, 1.0) / q_constant(a, 0.5, 1.0) - 1.0) <= 1e-10,
                     std::string("Q_k root k-independent for ") + f);
        for (unsigned k = 1; k <= 5; ++k)
            cl.check(std::abs(a.v_k(k) + 0.5 - a.v_prime() * k) <= 1e-12, std::string("V_k identity for ") + f);
    }
    const TollAnalysis cd = analyze_toll(parse_toll("t+1"));
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
            const double al = i / 4.0, be = j / 4.0;
            const double direct = std::sqrt(rho(al, be)) / ((std::exp(-al / 2.0) + 1.0) * std::exp(-al / 4.0));
            cl.check(std::abs(q_constant(cd, al, be) / direct - 1.0) <= 1e-12, "Q(t+1) grid");
        }
    ok = cl.ok();
    return cl.summary();
}

}  // namespace verify

struct CriterionSpec {
    int id;
    std::string name;
    double budget_seconds;
    std::function<std::string(bool&)> run;
};

inline std::vector<CriterionSpec> acceptance_criteria(const VerifyOptions& vo) {
    const bool full = vo.suite == Suite::full;
    std::vector<CriterionSpec> c;
    c.push_back({1, "counting exactness", 120,
                 [full](bool& ok) { return verify::counting_exactness(full ? 10 : 8, ok); }});
    c.push_back({2, "generating-function consistency", 30, [](bool& ok) { return verify::generating_functions(ok); }});
    c.push_back({3, "partition-function asymptotics", 10, [](bool& ok) { return verify::partition_asymptotics(ok); }});
    c.push_back({4, "sampler exactness", 300,
                 [vo](bool& ok) { return verify::sampler_exactness(1000000, vo, ok); }});
    if (full) {
        c.push_back({5, "subtree-additive ratios", 600,
                     [vo](bool& ok) { return verify::subtree_ratios(100000, vo, ok); }});
        c.push_back({6, "scaling constant (path length)", 600, [vo](bool& ok) {
                         return verify::scaling_constant(Property::parse("t+1"), 0.05, true, 100000, 600, vo, ok);
                     }});
        c.push_back({7, "Wiener scaling", 600, [vo](bool& ok) {
                         return verify::scaling_constant(Property::parse("(t+1)(n-t)"), 0.07, false, 100000, 700,
                                                         vo, ok);
                     }});
        c.push_back({8, "bounded-root equivalence", 600,
                     [vo](bool& ok) { return verify::bounded_root(100000, vo, ok); }});
    }
    c.push_back({9, "property-based suites", 300, [](bool& ok) { return verify::property_suites(ok); }});
    return c;
}

/// Runs the battery; on_result sees each criterion as soon as it finishes.
inline VerifyReport run_verification(const VerifyOptions& vo,
                                     const std::function<void(const CriterionResult&)>& on_result = {}) {
    VerifyReport rep;
    rep.suite = vo.suite;
    for (const auto& spec : acceptance_criteria(vo)) {
        CriterionResult r;
        r.id = spec.id;
        r.name = spec.name;
        r.budget_seconds = spec.budget_seconds;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            bool ok = false;
            r.detail = spec.run(ok);
            r.passed = ok;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += "; over time budget";
        }
        rep.criteria.push_back(r);
        if (on_result) on_result(r);
    }
    return rep;
}

}  // namespace ptree
