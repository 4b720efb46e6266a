#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ptree/enumeration.hpp"
#include "ptree/tree.hpp"

using namespace ptree;

namespace {

std::vector<PlaneTree> all_trees(unsigned n) {
    std::vector<PlaneTree> out;
    for_each_tree(n, [&](const PlaneTree& t) { out.push_back(t); });
    return out;
}

// Down degrees counted directly from the parent array.
std::vector<unsigned> down_degrees(const PlaneTree& t) {
    std::vector<unsigned> d(t.vertex_count(), 0);
    for (std::size_t i = 1; i < t.vertex_count(); ++i) ++d[t.parent(static_cast<vertex_t>(i))];
    return d;
}

}  // namespace

TEST(PlaneTree, DefaultIsSingleVertex) {
    PlaneTree t;
    EXPECT_EQ(t.vertex_count(), 1u);
    EXPECT_EQ(t.edge_count(), 0u);
    EXPECT_EQ(to_parens(t), "");
}

TEST(PlaneTree, RejectsNonPreorderParents) {
    const std::vector<vertex_t> bad{no_parent, 0, 0, 1};
    EXPECT_THROW(PlaneTree::from_preorder_parents(bad), std::invalid_argument);
    const std::vector<vertex_t> rootless{0, 0};
    EXPECT_THROW(PlaneTree::from_preorder_parents(rootless), std::invalid_argument);
    const std::vector<vertex_t> good{no_parent, 0, 1, 0};
    EXPECT_EQ(to_parens(PlaneTree::from_preorder_parents(good)), "(())()");
}

TEST(PlaneTree, ChildrenInOrder) {
    const PlaneTree t = from_parens("(())()(()())");
    EXPECT_EQ(t.children(0), (std::vector<vertex_t>{1, 3, 4}));
    EXPECT_EQ(t.child_count(4), 2u);
    EXPECT_EQ(t.subtree_size(4), 3u);
    EXPECT_EQ(to_parens(t.subtree(4)), "()()");
}

TEST(Join, SmallestJoinIsOneEdge) {
    EXPECT_EQ(to_parens(join(PlaneTree{}, PlaneTree{})), "()");
}

TEST(Join, NewEdgeIsLeftmost) {
    const PlaneTree t1 = from_parens("()()");
    const PlaneTree t2 = from_parens("(())");
    EXPECT_EQ(to_parens(join(t1, t2)), "((()))()()");
}

TEST(Join, EdgeCountAndRoundTripUpToFourEdges) {
    for (unsigned n1 = 0; n1 <= 4; ++n1)
        for (unsigned n2 = 0; n1 + n2 <= 4; ++n2)
            for (const auto& a : all_trees(n1))
                for (const auto& b : all_trees(n2)) {
                    const PlaneTree j = join(a, b);
                    EXPECT_EQ(j.edge_count(), n1 + n2 + 1);
                    const auto [u1, u2] = unjoin(j);
                    EXPECT_EQ(u1, a);
                    EXPECT_EQ(u2, b);
                }
}

TEST(Unjoin, Examples) {
    const auto [a, b] = unjoin(from_parens("()"));
    EXPECT_EQ(a.edge_count(), 0u);
    EXPECT_EQ(b.edge_count(), 0u);
    const auto [c, d] = unjoin(path_tree(3));
    EXPECT_EQ(c.edge_count(), 0u);
    EXPECT_EQ(d, path_tree(2));
    EXPECT_THROW(unjoin(PlaneTree{}), std::invalid_argument);
}

TEST(Unjoin, JoinInvertsUpToSixEdges) {
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& t : all_trees(n)) {
            const auto [a, b] = unjoin(t);
            EXPECT_EQ(join(a, b), t);
        }
}

TEST(Unjoin, IsBijectionOntoPairs) {
    // |T_n| = sum over n1 + n2 = n - 1 of |T_n1| |T_n2| and unjoin hits each pair once.
    for (unsigned n = 1; n <= 6; ++n) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& t : all_trees(n)) {
            const auto [a, b] = unjoin(t);
            EXPECT_TRUE(seen.insert({to_parens(a), to_parens(b)}).second);
        }
        std::size_t pairs = 0;
        for (unsigned n1 = 0; n1 < n; ++n1) pairs += all_trees(n1).size() * all_trees(n - 1 - n1).size();
        EXPECT_EQ(seen.size(), pairs);
    }
}

TEST(Stats, Examples) {
    EXPECT_EQ(stats(path_tree(3)), (TreeStats{3, 1, 2, 1}));
    EXPECT_EQ(stats(star_tree(3)), (TreeStats{3, 3, 0, 3}));
    EXPECT_EQ(stats(PlaneTree{}), (TreeStats{0, 0, 0, 0}));
}

TEST(Stats, VertexClassesPartitionEdges) {
    for (unsigned n = 0; n <= 6; ++n)
        for (const auto& t : all_trees(n)) {
            const TreeStats s = stats(t);
            const auto d = down_degrees(t);
            std::size_t branching = 0;
            for (std::size_t v = 1; v < d.size(); ++v) branching += d[v] >= 2;
            EXPECT_EQ(s.leaves + s.internal + branching, n);
            EXPECT_LE(s.leaves, n);
            EXPECT_LE(s.root_degree, n);
            if (n >= 1) {
                EXPECT_LT(s.internal, n);
            }
        }
}

TEST(SubtreeRecords, OneEdgeTree) {
    const auto r = subtree_records(from_parens("()"));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].standard, (TreeStats{0, 0, 0, 0}));
    EXPECT_EQ(r[0].extended.leaves, 1u);
    EXPECT_EQ(r[0].get(RootConvention::extended).internal, 0u);
}

TEST(SubtreeRecords, MiddleOfTwoEdgePath) {
    const auto r = subtree_records(path_tree(2));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].vertex, 1u);
    EXPECT_EQ(r[0].standard, (TreeStats{1, 1, 0, 1}));
    EXPECT_EQ(r[0].extended.internal, 1u);
    EXPECT_EQ(r[0].extended.leaves, 1u);
}

TEST(SubtreeRecords, ConventionsAndDepthSum) {
    for (unsigned n = 0; n <= 6; ++n)
        for (const auto& t : all_trees(n)) {
            const auto d = down_degrees(t);
            const auto dep = depths(t);
            std::uint64_t from_records = 0, depth_sum = 0;
            for (const auto& r : subtree_records(t)) {
                EXPECT_EQ(r.extended.leaves, r.standard.leaves + (d[r.vertex] == 0));
                EXPECT_EQ(r.extended.internal, r.standard.internal + (d[r.vertex] == 1));
                // Standard stats of T_v agree with stats() of the extracted subtree.
                EXPECT_EQ(r.standard, stats(t.subtree(r.vertex)));
                from_records += r.standard.edges + 1;
            }
            for (auto x : dep) depth_sum += x;
            EXPECT_EQ(from_records, depth_sum);
        }
}

TEST(Parens, Examples) {
    EXPECT_EQ(to_parens(from_parens("()")), "()");
    EXPECT_EQ(to_parens(path_tree(3)), "((()))");
    EXPECT_EQ(to_parens(star_tree(3)), "()()()");
}

TEST(Parens, RoundTripUpToEightEdges) {
    for (unsigned n = 0; n <= 8; ++n)
        for (const auto& t : all_trees(n)) {
            const std::string p = to_parens(t);
            EXPECT_EQ(p.size(), 2 * n);
            EXPECT_EQ(from_parens(p), t);
        }
}

TEST(Parens, ErrorsNameTheIndex) {
    try {
        from_parens("())(");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    try {
        from_parens("(()");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.index(), 3u);
    }
    try {
        from_parens("(x)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}
