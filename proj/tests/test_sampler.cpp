#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ptree/enumeration.hpp"
#include "ptree/sampler.hpp"
#include "ptree/stats.hpp"

using namespace ptree;

namespace {

// Gibbs probabilities by brute force over all trees with n edges.
std::map<std::string, double> exact_law(unsigned n, const ThermoParams& p, unsigned root_max = ~0u) {
    std::map<std::string, double> law;
    double z = 0;
    for_each_tree(n, [&](const PlaneTree& t) {
        const TreeStats s = stats(t);
        if (s.root_degree > root_max) return;
        const double w = std::exp(-p.alpha * s.leaves - p.beta * s.internal - p.gamma * s.root_degree);
        law[to_parens(t)] = w;
        z += w;
    });
    for (auto& [k, v] : law) v /= z;
    return law;
}

std::map<std::string, std::uint64_t> draw(GibbsSampler& s, std::size_t count, std::uint64_t seed) {
    std::map<std::string, std::uint64_t> h;
    Rng rng(seed);
    PlaneTree t;
    for (std::size_t i = 0; i < count; ++i) {
        s.sample(rng, t);
        ++h[to_parens(t)];
    }
    return h;
}

ChiSquareResult fit(const std::map<std::string, double>& law, const std::map<std::string, std::uint64_t>& h) {
    std::vector<std::uint64_t> obs;
    std::vector<double> probs;
    for (const auto& [k, p] : law) {
        const auto it = h.find(k);
        obs.push_back(it == h.end() ? 0 : it->second);
        probs.push_back(p);
    }
    return chi_square_gof(obs, probs);
}

const ThermoParams kSets[3] = {{0.0, 0.0, 0.0}, {0.5, 1.0, 0.7}, {-0.6, 0.4, -0.3}};

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(7, 0), b(7, 0), c(7, 1), d(8, 0);
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
    EXPECT_NE(x, d.next());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Sampler, ZeroAndOneEdge) {
    Rng rng(1);
    EXPECT_EQ(sample_tree(0, ThermoParams{0.3, 0.2, 0.1}, rng).edge_count(), 0u);
    EXPECT_EQ(to_parens(sample_tree(1, ThermoParams{0.3, 0.2, 0.1}, rng)), "()");
}

TEST(Sampler, TwoEdgeFrequencies) {
    // P(path) = b / (a c + b) with the root weight applied per root child.
    const ThermoParams p{0.4, -0.5, 0.3};
    GibbsSampler s(2, p);
    const auto h = draw(s, 200000, 11);
    const double a = std::exp(-p.alpha), b = std::exp(-p.beta), c = std::exp(-p.gamma);
    const double path = a * b * c, cherry = a * a * c * c;
    const double expect = path / (path + cherry);
    const double got = static_cast<double>(h.at("(())")) / 200000.0;
    EXPECT_NEAR(got, expect, 4.0 * std::sqrt(expect * (1 - expect) / 200000.0));
}

TEST(Sampler, UniformTotalVariation) {
    GibbsSampler s(5, ThermoParams{});
    const std::size_t count = 1000000;
    const auto h = draw(s, count, 2024);
    ASSERT_EQ(h.size(), 42u);
    double tv = 0;
    for (const auto& [k, c] : h) tv += std::abs(static_cast<double>(c) / count - 1.0 / 42.0);
    EXPECT_LT(tv / 2.0, 0.01);
}

TEST(Sampler, ChiSquareAgainstEnumerationUpToSevenEdges) {
    for (const auto& p : kSets)
        for (unsigned n = 1; n <= 7; ++n) {
            GibbsSampler s(n, p);
            const auto r = fit(exact_law(n, p), draw(s, 60000, 100 + n));
            EXPECT_GT(r.p_value, 1e-4) << "n=" << n << " alpha=" << p.alpha;
        }
}

TEST(Sampler, BoundedRootChiSquare) {
    const ThermoParams p{0.5, 1.0, 0.7};
    for (unsigned h : {1u, 2u, 3u}) {
        GibbsSampler s(6, p, h);
        const auto r = fit(exact_law(6, p, h), draw(s, 60000, 500 + h));
        EXPECT_GT(r.p_value, 1e-4) << "h=" << h;
    }
}

TEST(Sampler, BoundAtLeastNMatchesUnbounded) {
    const ThermoParams p{-0.6, 0.4, -0.3};
    GibbsSampler s(6, p, 9);
    const auto r = fit(exact_law(6, p), draw(s, 60000, 77));
    EXPECT_GT(r.p_value, 1e-4);
}

TEST(Sampler, BoundOneGivesRootDegreeOne) {
    GibbsSampler s(40, ThermoParams{0.2, 0.1, -0.5}, 1);
    Rng rng(3);
    for (int i = 0; i < 500; ++i) EXPECT_EQ(stats(s.sample(rng)).root_degree, 1u);
}

TEST(Sampler, RootDegreeMarginalUpToTenEdges) {
    const ThermoParams p{0.5, 1.0, 0.7};
    for (unsigned n = 8; n <= 10; ++n) {
        std::vector<double> probs(n + 1, 0.0);
        double z = 0;
        for_each_tree(n, [&](const PlaneTree& t) {
            const TreeStats s = stats(t);
            const double w = std::exp(-p.alpha * s.leaves - p.beta * s.internal - p.gamma * s.root_degree);
            probs[s.root_degree] += w;
            z += w;
        });
        for (auto& x : probs) x /= z;
        GibbsSampler s(n, p);
        BatchOptions bo;
        bo.count = 100000;
        bo.seed = 900 + n;
        std::vector<std::uint64_t> obs(n + 1, 0);
        for (const auto& r : sample_batch(s, bo).records) ++obs[r.stats.root_degree];
        EXPECT_GT(chi_square_gof(obs, probs).p_value, 1e-4) << n;
    }
}

TEST(Sampler, EveryTreeHasNEdges) {
    GibbsSampler s(300, ThermoParams{0.3, -0.4, 0.2});
    Rng rng(5);
    PlaneTree t;
    for (int i = 0; i < 200; ++i) {
        s.sample(rng, t);
        EXPECT_EQ(t.edge_count(), 300u);
    }
}

TEST(Sampler, MeanLeavesMatchesExactAtTwelveEdges) {
    const ThermoParams p{0.5, 1.0, 0.0};
    const double exact = exact_moments<double>(12, Weights<double>::from(p), Property(Builtin::leaves), 1)[1];
    GibbsSampler s(12, p);
    BatchOptions bo;
    bo.count = 200000;
    bo.seed = 42;
    bo.properties = {Property(Builtin::leaves)};
    const auto b = sample_batch(s, bo);
    double sum = 0, sq = 0;
    for (const auto& r : b.records) {
        sum += r.values[0];
        sq += r.values[0] * r.values[0];
    }
    const double m = sum / bo.count;
    const double se = std::sqrt((sq / bo.count - m * m) / bo.count);
    EXPECT_LT(std::abs(m - exact), 3 * se);
}

TEST(SampleBatch, DeterministicAndThreadIndependent) {
    GibbsSampler s(50, ThermoParams{0.5, 1.0, 0.0});
    BatchOptions bo;
    bo.count = 5000;
    bo.seed = 123;
    bo.keep_trees = true;
    bo.properties = {Property(Builtin::path_length)};
    const auto one = sample_batch(s, bo);
    const auto again = sample_batch(s, bo);
    bo.threads = 4;
    const auto four = sample_batch(s, bo);
    ASSERT_EQ(one.records.size(), 5000u);
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        EXPECT_EQ(one.records[i].parens, again.records[i].parens);
        EXPECT_EQ(one.records[i].parens, four.records[i].parens);
        EXPECT_EQ(one.records[i].values, four.records[i].values);
    }
    EXPECT_EQ(one.algorithm, "mt19937_64+splitmix64");
    bo.seed = 124;
    EXPECT_NE(sample_batch(s, bo).records[0].parens, one.records[0].parens);
}

TEST(SampleBatch, RejectsEmptyCount) {
    GibbsSampler s(3, ThermoParams{});
    BatchOptions bo;
    bo.count = 0;
    EXPECT_THROW(sample_batch(s, bo), std::invalid_argument);
}
