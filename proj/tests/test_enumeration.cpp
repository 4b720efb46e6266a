#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ptree/counting.hpp"
#include "ptree/enumeration.hpp"
#include "ptree/series.hpp"

using namespace ptree;

TEST(Enumerate, CountsAreCatalan) {
    for (unsigned n = 0; n <= 14; ++n) {
        std::uint64_t c = 0;
        for_each_tree(n, [&](const PlaneTree&) { ++c; });
        EXPECT_EQ(mpz_class(static_cast<unsigned long>(c)), catalan(n)) << "n=" << n;
    }
}

TEST(Enumerate, SmallExamples) {
    std::uint64_t c0 = 0, c3 = 0, c10 = 0;
    for_each_tree(0, [&](const PlaneTree&) { ++c0; });
    for_each_tree(3, [&](const PlaneTree&) { ++c3; });
    for_each_tree(10, [&](const PlaneTree&) { ++c10; });
    EXPECT_EQ(c0, 1u);
    EXPECT_EQ(c3, 5u);
    EXPECT_EQ(c10, 16796u);
}

TEST(Enumerate, DistinctAndLexicographic) {
    std::set<std::string> seen;
    std::string prev;
    TreeEnumerator e(7);
    do {
        const std::string p = e.parens();
        EXPECT_EQ(to_parens(e.tree()), p);
        EXPECT_TRUE(seen.insert(p).second);
        if (!prev.empty()) {
            EXPECT_LT(prev, p);
        }
        prev = p;
    } while (e.next());
    EXPECT_EQ(seen.size(), 429u);
    EXPECT_EQ(*seen.begin(), "((((((()))))))");
}

TEST(Enumerate, HistogramsMatchLeafAndRootForms) {
    for (unsigned n = 1; n <= 10; ++n) {
        std::vector<long> by_leaves(n + 1, 0), by_root(n + 1, 0);
        for_each_tree(n, [&](const PlaneTree& t) {
            const TreeStats s = stats(t);
            ++by_leaves[s.leaves];
            ++by_root[s.root_degree];
        });
        for (unsigned k = 0; k <= n; ++k) {
            EXPECT_EQ(count_by_leaves(n, k), by_leaves[k]);
            EXPECT_EQ(count_by_root(n, k), by_root[k]);
        }
    }
}

TEST(ExactPartition, Examples) {
    EXPECT_DOUBLE_EQ(exact_partition(3, ThermoParams{}), 5.0);
    const double l2 = std::log(2.0);
    EXPECT_NEAR(exact_partition(3, ThermoParams{l2, l2, l2}), 0.265625, 1e-15);
    const Weights<mpq_class> half{mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2)};
    EXPECT_EQ(exact_partition<mpq_class>(3, half), mpq_class(17, 64));
}

TEST(ExactPartition, GuardRefuses) {
    EXPECT_THROW(exact_partition(17, ThermoParams{}), GuardError);
    EnumerationOptions o;
    o.guard = 2;
    EXPECT_THROW(exact_partition(3, ThermoParams{}, o), GuardError);
}

TEST(ExactPartition, MatchesSeriesCoefficients) {
    const ThermoParams sets[3] = {{0.5, 1.0, 0.0}, {-0.4, 0.3, 0.0}, {1.2, -0.7, 0.0}};
    for (const auto& p : sets) {
        const auto t = build_tables(p, 12);
        for (unsigned n = 0; n <= 12; ++n) {
            const double e = exact_partition(n, p);
            EXPECT_NEAR(e / t.g_true(n), 1.0, 1e-12) << n;
        }
    }
}

TEST(ExactMoments, Examples) {
    const Weights<mpq_class> u{1, 1, 1};
    const auto m = exact_moments<mpq_class>(3, u, Property(Builtin::path_length), 2);
    EXPECT_EQ(m[0], 1);
    EXPECT_EQ(m[1], mpq_class(22, 5));
    const auto e = exact_moments<double>(7, Weights<double>::from({0.3, -0.2, 0.9}), Property(Builtin::edges), 1);
    EXPECT_NEAR(e[0], 1.0, 1e-15);
    EXPECT_NEAR(e[1], 7.0, 1e-12);
}

TEST(ExactMoments, RootRestriction) {
    EnumerationOptions o;
    o.root_max = 1;
    const auto m = exact_moments<mpq_class>(5, Weights<mpq_class>{1, 1, 1}, Property(Builtin::root_degree), 1, o);
    EXPECT_EQ(m[1], 1);
}

TEST(ExactDistribution, Examples) {
    const Weights<mpq_class> u{1, 1, 1};
    const auto pl = exact_distribution<mpq_class>(2, u, Property(Builtin::path_length));
    EXPECT_EQ(pl.partition, 2);
    ASSERT_EQ(pl.entries.size(), 2u);
    EXPECT_EQ(pl.entries.at(2), 1);
    EXPECT_EQ(pl.entries.at(3), 1);
    const auto d0 = exact_distribution<mpq_class>(3, u, Property(Builtin::leaves));
    EXPECT_EQ(d0.entries.at(1), 1);
    EXPECT_EQ(d0.entries.at(2), 3);
    EXPECT_EQ(d0.entries.at(3), 1);
}

TEST(ExactDistribution, WeightsSumToPartition) {
    const Weights<mpq_class> w{mpq_class(2, 3), mpq_class(5, 4), mpq_class(1, 3)};
    for (unsigned n = 0; n <= 8; ++n) {
        const auto d = exact_distribution<mpq_class>(n, w, Property(Builtin::wiener));
        mpq_class s = 0;
        for (const auto& [v, x] : d.entries) s += x;
        EXPECT_EQ(s, d.partition);
        EXPECT_EQ(d.partition, exact_partition<mpq_class>(n, w));
    }
    const auto dd = exact_distribution<double>(9, Weights<double>::from({0.4, 0.8, -0.3}), Property(Builtin::leaves));
    double s = 0;
    for (const auto& [v, x] : dd.entries) s += x;
    EXPECT_NEAR(s / dd.partition, 1.0, 1e-12);
}

TEST(ExactDistribution, UniformPartitionIsCatalan) {
    for (unsigned n = 0; n <= 9; ++n)
        EXPECT_EQ(exact_distribution<mpq_class>(n, {1, 1, 1}, Property(Builtin::edges)).partition, catalan(n));
}
