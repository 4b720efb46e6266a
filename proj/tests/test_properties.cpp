#include <gtest/gtest.h>

#include <queue>
#include <vector>

#include "ptree/enumeration.hpp"
#include "ptree/properties.hpp"
#include "ptree/toll.hpp"

using namespace ptree;

namespace {

std::vector<PlaneTree> all_trees(unsigned n) {
    std::vector<PlaneTree> out;
    for_each_tree(n, [&](const PlaneTree& t) { out.push_back(t); });
    return out;
}

// All-pairs distance sum by breadth-first search.
std::uint64_t bfs_wiener(const PlaneTree& t) {
    const std::size_t nv = t.vertex_count();
    std::vector<std::vector<std::size_t>> adj(nv);
    for (std::size_t i = 1; i < nv; ++i) {
        adj[i].push_back(t.parent(static_cast<vertex_t>(i)));
        adj[t.parent(static_cast<vertex_t>(i))].push_back(i);
    }
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < nv; ++s) {
        std::vector<int> dist(nv, -1);
        std::queue<std::size_t> q;
        q.push(s);
        dist[s] = 0;
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto w : adj[u])
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        for (std::size_t v = 0; v < nv; ++v) total += dist[v];
    }
    return total / 2;
}

struct DepthSums {
    std::uint64_t all = 0, leaves = 0, internal = 0;
};

// Depths found by walking parent pointers to the root.
DepthSums depth_sums(const PlaneTree& t) {
    DepthSums s;
    for (std::size_t i = 1; i < t.vertex_count(); ++i) {
        std::uint64_t d = 0;
        for (vertex_t v = static_cast<vertex_t>(i); v != 0; v = t.parent(v)) ++d;
        const auto c = t.children(static_cast<vertex_t>(i)).size();
        s.all += d;
        if (c == 0) s.leaves += d;
        if (c == 1) s.internal += d;
    }
    return s;
}

// The recursive definition P(T1 join T2) = P(T1) + P(T2) + f(T2), P(single) = c.
mpq_class additive_by_join(const std::function<mpq_class(const PlaneTree&)>& f, const mpq_class& c,
                           const PlaneTree& t) {
    if (t.edge_count() == 0) return c;
    const auto [a, b] = unjoin(t);
    return additive_by_join(f, c, a) + additive_by_join(f, c, b) + f(b);
}

}  // namespace

TEST(Additive, NamedExamples) {
    EXPECT_EQ(eval_additive(additive::edges<long>(), path_tree(5)), 5);
    EXPECT_EQ(eval_additive(additive::vertices<long>(), star_tree(3)), 4);
    EXPECT_EQ(eval_additive(additive::leaves<long>(), path_tree(3)), 1);
    EXPECT_EQ(eval_additive(additive::internal_nodes<long>(), path_tree(3)), 2);
}

TEST(Additive, SweepMatchesJoinRecursion) {
    // Toll: squared size of the attached subtree.
    const AdditiveProperty<mpq_class> p{[](const PlaneTree& t, vertex_t v) -> mpq_class {
                                            const mpq_class s = t.subtree_size(v);
                                            return s * s;
                                        },
                                        mpq_class(3, 7)};
    const auto f = [](const PlaneTree& t) -> mpq_class {
        const mpq_class s = t.vertex_count();
        return s * s;
    };
    for (unsigned n = 0; n <= 6; ++n)
        for (const auto& t : all_trees(n)) EXPECT_EQ(eval_additive(p, t), additive_by_join(f, mpq_class(3, 7), t));
}

TEST(Additive, Linearity) {
    const mpq_class c1(5, 3), c2(-2, 7), c(11, 4);
    const auto f1 = [](const PlaneTree& t, vertex_t v) { return mpq_class(t.subtree_size(v)); };
    const auto f2 = [](const PlaneTree& t, vertex_t v) { return mpq_class(t.child_count(v)); };
    const AdditiveProperty<mpq_class> combined{
        [&](const PlaneTree& t, vertex_t v) -> mpq_class { return c1 * f1(t, v) + c2 * f2(t, v); }, c};
    const AdditiveProperty<mpq_class> p1{f1, 0}, p2{f2, 0};
    const auto unit = additive::vertices<mpq_class>();
    for (unsigned n = 0; n <= 6; ++n)
        for (const auto& t : all_trees(n))
            EXPECT_EQ(eval_additive(combined, t),
                      c1 * eval_additive(p1, t) + c2 * eval_additive(p2, t) + c * eval_additive(unit, t));
}

TEST(PathLength, Examples) {
    EXPECT_EQ(path_length(path_tree(3)), 6u);
    EXPECT_EQ(path_length(star_tree(3)), 3u);
    std::uint64_t total = 0;
    for (const auto& t : all_trees(3)) total += path_length(t);
    EXPECT_EQ(total, 22u);
}

TEST(PathLength, Bounds) {
    for (unsigned n = 1; n <= 8; ++n)
        for (const auto& t : all_trees(n)) {
            EXPECT_GE(path_length(t), n);
            EXPECT_LE(path_length(t), std::uint64_t(n) * n);
            EXPECT_LE(leaf_root_distance(t) + internal_root_distance(t), path_length(t));
        }
}

TEST(Wiener, Examples) {
    EXPECT_EQ(wiener_index(path_tree(2)), 4u);
    EXPECT_EQ(wiener_index(star_tree(2)), 4u);
}

TEST(Wiener, SubtreeFormulaMatchesBfsUpToSevenEdges) {
    for (unsigned n = 0; n <= 7; ++n)
        for (const auto& t : all_trees(n)) EXPECT_EQ(wiener_index(t), bfs_wiener(t)) << to_parens(t);
}

TEST(RootDistances, Examples) {
    EXPECT_EQ(leaf_root_distance(path_tree(3)), 3u);
    EXPECT_EQ(internal_root_distance(path_tree(3)), 3u);
    EXPECT_EQ(leaf_root_distance(star_tree(3)), 3u);
    EXPECT_EQ(internal_root_distance(star_tree(3)), 0u);
}

TEST(RootDistances, DepthOracleAndExtendedRecords) {
    for (unsigned n = 0; n <= 7; ++n)
        for (const auto& t : all_trees(n)) {
            const DepthSums d = depth_sums(t);
            EXPECT_EQ(path_length(t), d.all);
            EXPECT_EQ(leaf_root_distance(t), d.leaves);
            EXPECT_EQ(internal_root_distance(t), d.internal);
            std::uint64_t el = 0, ei = 0;
            for (const auto& r : subtree_records(t)) {
                el += r.extended.leaves;
                ei += r.extended.internal;
            }
            EXPECT_EQ(el, d.leaves);
            EXPECT_EQ(ei, d.internal);
        }
}

TEST(PolynomialToll, ReproducesNamedProperties) {
    const auto one = parse_toll("1"), cd = parse_toll("t+1"), wi = parse_toll("(t+1)*(n-t)"),
               lr = parse_toll("l0"), ir = parse_toll("l1");
    for (unsigned n = 0; n <= 7; ++n)
        for (const auto& t : all_trees(n)) {
            EXPECT_EQ(eval_polynomial_toll<mpq_class>(one, t), n);
            EXPECT_EQ(eval_polynomial_toll<mpq_class>(cd, t), path_length(t));
            EXPECT_EQ(eval_polynomial_toll<mpq_class>(wi, t), wiener_index(t));
            EXPECT_EQ(eval_polynomial_toll<mpq_class>(lr, t), leaf_root_distance(t));
            EXPECT_EQ(eval_polynomial_toll<mpq_class>(ir, t), internal_root_distance(t));
        }
}

TEST(PolynomialToll, SingleVertexIsZero) {
    EXPECT_EQ(eval_polynomial_toll<mpq_class>(parse_toll("t+n+3"), PlaneTree{}), 0);
}

TEST(PolynomialToll, GlobalVariables) {
    // f = L0 summed over n non-root vertices is n * d0.
    for (const auto& t : all_trees(5)) {
        const TreeStats s = stats(t);
        EXPECT_EQ(eval_polynomial_toll<mpq_class>(parse_toll("L0"), t), mpq_class(5 * s.leaves));
        EXPECT_EQ(eval_polynomial_toll<mpq_class>(parse_toll("L1 n"), t), mpq_class(25 * s.internal));
    }
}

TEST(TollParser, ReducedForm) {
    const auto f = parse_toll("(t+1)*(n-t)");
    EXPECT_EQ(f.terms().size(), 4u);  // tn - t^2 + n - t
    for (const auto& [e, c] : f.terms()) EXPECT_NE(c, 0);
    EXPECT_TRUE(parse_toll("t - t").is_zero());
    EXPECT_EQ(parse_toll("(t+1)(n-t)"), f);
    EXPECT_EQ(parse_toll("2*t/4 + 0.5*t"), parse_toll("t"));
    EXPECT_EQ(parse_toll("(l0 + L1)^2"), parse_toll("l0^2 + 2 l0 L1 + L1^2"));
}

TEST(TollParser, Errors) {
    EXPECT_THROW(parse_toll("t+"), TollParseError);
    EXPECT_THROW(parse_toll("x"), TollParseError);
    EXPECT_THROW(parse_toll("t/l0"), TollParseError);
    EXPECT_THROW(parse_toll("t^-1"), TollParseError);
    EXPECT_THROW(parse_toll("(t"), TollParseError);
    EXPECT_THROW(parse_toll("1/0"), TollParseError);
}

TEST(Property, ParseIdsAndEvaluate) {
    const PlaneTree t = from_parens("(()())()");
    TreeProfile prof;
    prof.compute(t);
    EXPECT_EQ(Property::parse("e").evaluate_integer(prof), 4u);
    EXPECT_EQ(Property::parse("v").evaluate_integer(prof), 5u);
    EXPECT_EQ(Property::parse("d0").evaluate_integer(prof), 3u);
    EXPECT_EQ(Property::parse("d1").evaluate_integer(prof), 0u);
    EXPECT_EQ(Property::parse("r").evaluate_integer(prof), 2u);
    EXPECT_EQ(Property::parse("pl").evaluate_integer(prof), 6u);
    EXPECT_EQ(Property::parse("f:t+1").id(), "f:t+1");
    EXPECT_DOUBLE_EQ(Property::parse("f:(t+1)(n-t)").evaluate_double(prof),
                     static_cast<double>(wiener_index(prof)));
    EXPECT_EQ(Property::parse("t+1").evaluate<mpq_class>(prof), 6);
}
