#pragma once

/**
 * @file tree.hpp
 * @brief Plane trees: ordered rooted trees stored as a preorder parent array.
 *
 * Vertex 0 is the root and vertices are numbered in preorder, so the children
 * of a vertex appear in increasing index order and every subtree occupies a
 * contiguous index range [v, v + size(v)). Traversals are plain index loops:
 * a reverse sweep over the indices is a valid post-order for accumulation.
 *
 * The balanced-parenthesis string is the interchange format: "(" descends
 * into a new child, ")" returns. The single-vertex tree is "" and the 1-edge
 * tree is "()".
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptree {

using vertex_t = std::uint32_t;
inline constexpr vertex_t no_parent = std::numeric_limits<vertex_t>::max();

/// Thrown when a parenthesis string is not a balanced sequence.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t index)
        : std::invalid_argument(what + " at index " + std::to_string(index)), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Edge count, leaves (d0), internal nodes (d1) and root degree (r).
/// The root is never classified as a leaf or internal node.
struct TreeStats {
    std::uint64_t edges = 0;
    std::uint64_t leaves = 0;
    std::uint64_t internal = 0;
    std::uint64_t root_degree = 0;

    friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

/// Whether the root of a subtree T_v takes part in the leaf / internal count.
enum class RootConvention { standard, extended };

class PlaneTree {
public:
    /// The tree on one vertex.
    PlaneTree() : parent_{no_parent}, size_{1} {}

    static PlaneTree single_vertex() { return {}; }

    /// Builds from a preorder parent array (parents[0] == no_parent and
    /// parents[i] < i for i > 0, with parents forming a valid preorder).
    static PlaneTree from_preorder_parents(std::span<const vertex_t> parents) {
        PlaneTree t;
        t.assign_preorder_parents(parents);
        return t;
    }

    /// Reuses this tree's storage. Throws std::invalid_argument if the array
    /// is not the preorder parent array of a plane tree.
    void assign_preorder_parents(std::span<const vertex_t> parents) {
        if (parents.empty() || parents[0] != no_parent)
            throw std::invalid_argument("preorder parent array must start with the root");
        parent_.assign(parents.begin(), parents.end());
        compute_sizes();
        // Preorder check: the parent of i must be an ancestor-or-self of i-1,
        // i.e. i lies inside the index range of parent(i).
        for (std::size_t i = 1; i < parent_.size(); ++i) {
            const vertex_t p = parent_[i];
            if (p >= i || i >= static_cast<std::size_t>(p) + size_[p])
                throw std::invalid_argument("parent array is not in preorder at vertex " +
                                            std::to_string(i));
        }
    }

    /// Unchecked variants for generators that construct preorder arrays.
    void assign_trusted(std::vector<vertex_t>&& parents) {
        parent_ = std::move(parents);
        compute_sizes();
    }
    void assign_unchecked(std::span<const vertex_t> parents) {
        parent_.assign(parents.begin(), parents.end());
        compute_sizes();
    }

    std::size_t vertex_count() const noexcept { return parent_.size(); }
    std::size_t edge_count() const noexcept { return parent_.size() - 1; }

    vertex_t parent(vertex_t v) const { return parent_[v]; }
    /// Number of vertices in the subtree rooted at v (v included).
    vertex_t subtree_size(vertex_t v) const { return size_[v]; }
    std::span<const vertex_t> parents() const noexcept { return parent_; }

    bool has_children(vertex_t v) const { return size_[v] > 1; }
    vertex_t first_child(vertex_t v) const { return size_[v] > 1 ? v + 1 : no_parent; }
    vertex_t next_sibling(vertex_t v) const {
        const std::size_t nxt = static_cast<std::size_t>(v) + size_[v];
        if (v == 0 || nxt >= parent_.size() || parent_[nxt] != parent_[v]) return no_parent;
        return static_cast<vertex_t>(nxt);
    }

    std::vector<vertex_t> children(vertex_t v) const {
        std::vector<vertex_t> out;
        for (vertex_t c = first_child(v); c != no_parent; c = next_sibling(c)) out.push_back(c);
        return out;
    }

    std::size_t child_count(vertex_t v) const {
        std::size_t d = 0;
        for (vertex_t c = first_child(v); c != no_parent; c = next_sibling(c)) ++d;
        return d;
    }

    /// Copy of T_v as a standalone tree.
    PlaneTree subtree(vertex_t v) const {
        std::vector<vertex_t> p(size_[v]);
        p[0] = no_parent;
        for (vertex_t i = 1; i < size_[v]; ++i) p[i] = parent_[v + i] - v;
        PlaneTree t;
        t.assign_trusted(std::move(p));
        return t;
    }

    friend bool operator==(const PlaneTree& a, const PlaneTree& b) { return a.parent_ == b.parent_; }
    friend bool operator<(const PlaneTree& a, const PlaneTree& b) { return a.parent_ < b.parent_; }

private:
    void compute_sizes() {
        size_.assign(parent_.size(), 1);
        for (std::size_t i = parent_.size(); i-- > 1;) size_[parent_[i]] += size_[i];
    }

    std::vector<vertex_t> parent_;
    std::vector<vertex_t> size_;
};

/// T1 ⋉ T2: t2 hangs under a new leftmost root edge of t1.
inline PlaneTree join(const PlaneTree& t1, const PlaneTree& t2) {
    const auto n2 = static_cast<vertex_t>(t2.vertex_count());
    std::vector<vertex_t> p;
    p.reserve(t1.vertex_count() + t2.vertex_count());
    p.push_back(no_parent);
    for (vertex_t i = 0; i < n2; ++i) p.push_back(i == 0 ? 0 : t2.parent(i) + 1);
    for (vertex_t i = 1; i < t1.vertex_count(); ++i) {
        const vertex_t q = t1.parent(i);
        p.push_back(q == 0 ? 0 : q + n2);
    }
    PlaneTree t;
    t.assign_trusted(std::move(p));
    return t;
}

/// The unique (T1, T2) with t = T1 ⋉ T2. Rejects the single-vertex tree.
inline std::pair<PlaneTree, PlaneTree> unjoin(const PlaneTree& t) {
    if (t.edge_count() == 0) throw std::invalid_argument("unjoin: the single-vertex tree is not a join");
    PlaneTree t2 = t.subtree(1);
    const vertex_t n2 = t.subtree_size(1);
    std::vector<vertex_t> p;
    p.reserve(t.vertex_count() - n2);
    p.push_back(no_parent);
    for (std::size_t i = 1 + n2; i < t.vertex_count(); ++i) {
        const vertex_t q = t.parent(static_cast<vertex_t>(i));
        p.push_back(q == 0 ? 0 : q - n2);
    }
    PlaneTree t1;
    t1.assign_trusted(std::move(p));
    return {std::move(t1), std::move(t2)};
}

inline TreeStats stats(const PlaneTree& t) {
    TreeStats s;
    s.edges = t.edge_count();
    std::vector<vertex_t> degree(t.vertex_count(), 0);
    for (std::size_t i = 1; i < t.vertex_count(); ++i) ++degree[t.parent(static_cast<vertex_t>(i))];
    s.root_degree = degree[0];
    for (std::size_t i = 1; i < t.vertex_count(); ++i) {
        if (degree[i] == 0) ++s.leaves;
        else if (degree[i] == 1) ++s.internal;
    }
    return s;
}

/// Per non-root vertex statistics of T_v under both root conventions.
struct SubtreeRecord {
    vertex_t vertex = 0;
    TreeStats standard;
    TreeStats extended;

    const TreeStats& get(RootConvention c) const {
        return c == RootConvention::standard ? standard : extended;
    }
};

/// One record per non-root vertex (in preorder), filled in one reverse sweep.
inline std::vector<SubtreeRecord> subtree_records(const PlaneTree& t) {
    const std::size_t nv = t.vertex_count();
    std::vector<vertex_t> degree(nv, 0);
    for (std::size_t i = 1; i < nv; ++i) ++degree[t.parent(static_cast<vertex_t>(i))];
    // Strict-descendant leaf / internal counts.
    std::vector<std::uint64_t> leaves(nv, 0), internal(nv, 0);
    for (std::size_t i = nv; i-- > 1;) {
        const vertex_t p = t.parent(static_cast<vertex_t>(i));
        leaves[p] += leaves[i] + (degree[i] == 0);
        internal[p] += internal[i] + (degree[i] == 1);
    }
    std::vector<SubtreeRecord> out;
    out.reserve(nv > 0 ? nv - 1 : 0);
    for (std::size_t i = 1; i < nv; ++i) {
        SubtreeRecord r;
        r.vertex = static_cast<vertex_t>(i);
        r.standard = {t.subtree_size(r.vertex) - 1u, leaves[i], internal[i], degree[i]};
        r.extended = r.standard;
        r.extended.leaves += degree[i] == 0;
        r.extended.internal += degree[i] == 1;
        out.push_back(r);
    }
    return out;
}

/// Depth of every vertex (root has depth 0).
inline std::vector<std::uint32_t> depths(const PlaneTree& t) {
    std::vector<std::uint32_t> d(t.vertex_count(), 0);
    for (std::size_t i = 1; i < t.vertex_count(); ++i) d[i] = d[t.parent(static_cast<vertex_t>(i))] + 1;
    return d;
}

inline std::string to_parens(const PlaneTree& t) {
    std::string s;
    s.reserve(2 * t.edge_count());
    std::vector<vertex_t> stack{0};
    for (std::size_t i = 1; i < t.vertex_count(); ++i) {
        const vertex_t p = t.parent(static_cast<vertex_t>(i));
        while (stack.back() != p) {
            stack.pop_back();
            s.push_back(')');
        }
        s.push_back('(');
        stack.push_back(static_cast<vertex_t>(i));
    }
    s.append(stack.size() - 1, ')');
    return s;
}

inline PlaneTree from_parens(std::string_view s) {
    std::vector<vertex_t> p{no_parent};
    p.reserve(s.size() / 2 + 1);
    std::vector<vertex_t> stack{0};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            p.push_back(stack.back());
            stack.push_back(static_cast<vertex_t>(p.size() - 1));
        } else if (s[i] == ')') {
            if (stack.size() == 1) throw ParseError("unmatched ')'", i);
            stack.pop_back();
        } else {
            throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
        }
    }
    if (stack.size() != 1) throw ParseError("unclosed '('", s.size());
    PlaneTree t;
    t.assign_trusted(std::move(p));
    return t;
}

// Small named shapes used throughout the tests and examples.
inline PlaneTree path_tree(std::size_t edges) {
    std::vector<vertex_t> p{no_parent};
    for (std::size_t i = 1; i <= edges; ++i) p.push_back(static_cast<vertex_t>(i - 1));
    PlaneTree t;
    t.assign_trusted(std::move(p));
    return t;
}

inline PlaneTree star_tree(std::size_t edges) {
    std::vector<vertex_t> p{no_parent};
    p.resize(edges + 1, 0);
    PlaneTree t;
    t.assign_trusted(std::move(p));
    return t;
}

}  // namespace ptree
