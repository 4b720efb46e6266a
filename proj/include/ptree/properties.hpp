#pragma once

/**
 * @file properties.hpp
 * @brief Additive and subtree-additive tree properties.
 *
 * An additive property with toll (f, c) satisfies
 *     P(T1 ⋉ T2) = P(T1) + P(T2) + f(T2),   P(single vertex) = c,
 * which unrolls to P(T) = c * v(T) + sum over non-root v of f(T_v).
 *
 * A subtree-additive property is P(T) = sum over non-root v of f(T_v, T).
 * For polynomial tolls the subtree variables (t, l0, l1) use the extended
 * root convention and the whole-tree variables (n, L0, L1) the standard one.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ptree/toll.hpp"
#include "ptree/tree.hpp"

namespace ptree {

template <class Scalar>
struct AdditiveProperty {
    /// Toll evaluated on the subtree rooted at the given vertex.
    std::function<Scalar(const PlaneTree&, vertex_t)> toll;
    Scalar constant = 0;
};

/// One post-order sweep: P[v] = c + sum over children u of (f(T_u) + P[u]).
template <class Scalar>
Scalar eval_additive(const AdditiveProperty<Scalar>& p, const PlaneTree& t) {
    std::vector<Scalar> acc(t.vertex_count(), p.constant);
    for (std::size_t i = t.vertex_count(); i-- > 1;) {
        const auto v = static_cast<vertex_t>(i);
        acc[t.parent(v)] += p.toll(t, v) + acc[i];
    }
    return acc[0];
}

namespace additive {

template <class Scalar>
AdditiveProperty<Scalar> edges() {
    return {[](const PlaneTree&, vertex_t) { return Scalar(1); }, Scalar(0)};
}
template <class Scalar>
AdditiveProperty<Scalar> vertices() {
    return {[](const PlaneTree&, vertex_t) { return Scalar(0); }, Scalar(1)};
}
template <class Scalar>
AdditiveProperty<Scalar> leaves() {
    return {[](const PlaneTree& t, vertex_t v) { return Scalar(t.has_children(v) ? 0 : 1); }, Scalar(0)};
}
template <class Scalar>
AdditiveProperty<Scalar> internal_nodes() {
    return {[](const PlaneTree& t, vertex_t v) { return Scalar(t.child_count(v) == 1 ? 1 : 0); },
            Scalar(0)};
}

}  // namespace additive

/**
 * Per-vertex quantities every built-in property is computed from, filled in
 * O(n). Buffers are reused across calls so batch evaluation does not allocate
 * once warmed up.
 */
class TreeProfile {
public:
    void compute(const PlaneTree& t) {
        tree_ = &t;
        const std::size_t nv = t.vertex_count();
        degree_.assign(nv, 0);
        ext_leaves_.assign(nv, 0);
        ext_internal_.assign(nv, 0);
        for (std::size_t i = 1; i < nv; ++i) ++degree_[t.parent(static_cast<vertex_t>(i))];
        stats_ = {};
        stats_.edges = t.edge_count();
        stats_.root_degree = degree_[0];
        for (std::size_t i = nv; i-- > 1;) {
            ext_leaves_[i] += degree_[i] == 0;
            ext_internal_[i] += degree_[i] == 1;
            stats_.leaves += degree_[i] == 0;
            stats_.internal += degree_[i] == 1;
            const vertex_t p = t.parent(static_cast<vertex_t>(i));
            ext_leaves_[p] += ext_leaves_[i];
            ext_internal_[p] += ext_internal_[i];
        }
    }

    const PlaneTree& tree() const { return *tree_; }
    const TreeStats& stats() const { return stats_; }
    std::uint32_t degree(vertex_t v) const { return degree_[v]; }
    /// Extended-convention leaf / internal counts of T_v (v itself classified).
    std::uint64_t ext_leaves(vertex_t v) const { return ext_leaves_[v]; }
    std::uint64_t ext_internal(vertex_t v) const { return ext_internal_[v]; }

private:
    const PlaneTree* tree_ = nullptr;
    TreeStats stats_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint64_t> ext_leaves_;
    std::vector<std::uint64_t> ext_internal_;
};

inline std::uint64_t path_length(const TreeProfile& p) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i < p.tree().vertex_count(); ++i) s += p.tree().subtree_size(static_cast<vertex_t>(i));
    return s;
}
inline std::uint64_t wiener_index(const TreeProfile& p) {
    const std::uint64_t total = p.tree().vertex_count();
    std::uint64_t s = 0;
    for (std::size_t i = 1; i < total; ++i) {
        const std::uint64_t v = p.tree().subtree_size(static_cast<vertex_t>(i));
        s += v * (total - v);
    }
    return s;
}
inline std::uint64_t leaf_root_distance(const TreeProfile& p) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i < p.tree().vertex_count(); ++i) s += p.ext_leaves(static_cast<vertex_t>(i));
    return s;
}
inline std::uint64_t internal_root_distance(const TreeProfile& p) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i < p.tree().vertex_count(); ++i) s += p.ext_internal(static_cast<vertex_t>(i));
    return s;
}

/// P^f(T) = sum over non-root v of f(T_v, T); 0 on the single-vertex tree.
template <class Scalar>
Scalar eval_polynomial_toll(const PolynomialToll& f, const TreeProfile& p) {
    const TreeStats& s = p.stats();
    std::array<Scalar, toll_var_count> x{};
    x[var_n] = Scalar(static_cast<long>(s.edges));
    x[var_L0] = Scalar(static_cast<long>(s.leaves));
    x[var_L1] = Scalar(static_cast<long>(s.internal));
    Scalar sum = 0;
    for (std::size_t i = 1; i < p.tree().vertex_count(); ++i) {
        const auto v = static_cast<vertex_t>(i);
        x[var_t] = Scalar(static_cast<long>(p.tree().subtree_size(v) - 1));
        x[var_l0] = Scalar(static_cast<long>(p.ext_leaves(v)));
        x[var_l1] = Scalar(static_cast<long>(p.ext_internal(v)));
        sum += f.evaluate<Scalar>(x);
    }
    return sum;
}

inline std::uint64_t path_length(const PlaneTree& t) {
    TreeProfile p;
    p.compute(t);
    return path_length(p);
}
inline std::uint64_t wiener_index(const PlaneTree& t) {
    TreeProfile p;
    p.compute(t);
    return wiener_index(p);
}
inline std::uint64_t leaf_root_distance(const PlaneTree& t) {
    TreeProfile p;
    p.compute(t);
    return leaf_root_distance(p);
}
inline std::uint64_t internal_root_distance(const PlaneTree& t) {
    TreeProfile p;
    p.compute(t);
    return internal_root_distance(p);
}
template <class Scalar>
Scalar eval_polynomial_toll(const PolynomialToll& f, const PlaneTree& t) {
    TreeProfile p;
    p.compute(t);
    return eval_polynomial_toll<Scalar>(f, p);
}

enum class Builtin { edges, vertices, leaves, internal, root_degree, path_length, wiener, leaf_root, internal_root };

/// A named tree property: one of the built-ins or a polynomial toll.
class Property {
public:
    explicit Property(Builtin b) : kind_(b) {}
    Property(PolynomialToll f, std::string label) : kind_(std::move(f)), label_(std::move(label)) {
        for (const auto& [e, c] : std::get<PolynomialToll>(kind_).terms()) compiled_.emplace_back(c.get_d(), e);
    }

    /// Short ids: e v d0 d1 r pl wi lr ir; anything else is parsed as a toll
    /// expression (an optional "f:" prefix is stripped).
    static Property parse(std::string_view id) {
        static constexpr std::pair<std::string_view, Builtin> table[] = {
            {"e", Builtin::edges},         {"v", Builtin::vertices},     {"d0", Builtin::leaves},
            {"d1", Builtin::internal},     {"r", Builtin::root_degree},  {"pl", Builtin::path_length},
            {"wi", Builtin::wiener},       {"lr", Builtin::leaf_root},   {"ir", Builtin::internal_root}};
        for (const auto& [name, b] : table)
            if (id == name) return Property(b);
        std::string_view expr = id;
        if (expr.starts_with("f:")) expr.remove_prefix(2);
        return Property(parse_toll(expr), std::string(expr));
    }

    std::string id() const {
        if (const auto* b = std::get_if<Builtin>(&kind_)) {
            switch (*b) {
                case Builtin::edges: return "e";
                case Builtin::vertices: return "v";
                case Builtin::leaves: return "d0";
                case Builtin::internal: return "d1";
                case Builtin::root_degree: return "r";
                case Builtin::path_length: return "pl";
                case Builtin::wiener: return "wi";
                case Builtin::leaf_root: return "lr";
                case Builtin::internal_root: return "ir";
            }
        }
        return "f:" + label_;
    }

    const PolynomialToll* toll() const { return std::get_if<PolynomialToll>(&kind_); }
    std::optional<Builtin> builtin() const {
        if (const auto* b = std::get_if<Builtin>(&kind_)) return *b;
        return std::nullopt;
    }

    template <class Scalar>
    Scalar evaluate(const TreeProfile& p) const {
        if (const auto* f = toll()) return eval_polynomial_toll<Scalar>(*f, p);
        return Scalar(static_cast<long>(evaluate_integer(p)));
    }

    /// Built-in properties are integer valued; do not call on tolls.
    std::uint64_t evaluate_integer(const TreeProfile& p) const {
        switch (std::get<Builtin>(kind_)) {
            case Builtin::edges: return p.stats().edges;
            case Builtin::vertices: return p.stats().edges + 1;
            case Builtin::leaves: return p.stats().leaves;
            case Builtin::internal: return p.stats().internal;
            case Builtin::root_degree: return p.stats().root_degree;
            case Builtin::path_length: return path_length(p);
            case Builtin::wiener: return wiener_index(p);
            case Builtin::leaf_root: return leaf_root_distance(p);
            case Builtin::internal_root: return internal_root_distance(p);
        }
        return 0;
    }

    double evaluate_double(const TreeProfile& p) const {
        if (!toll()) return static_cast<double>(evaluate_integer(p));
        const TreeStats& s = p.stats();
        std::array<double, toll_var_count> x{};
        x[var_n] = static_cast<double>(s.edges);
        x[var_L0] = static_cast<double>(s.leaves);
        x[var_L1] = static_cast<double>(s.internal);
        double sum = 0;
        for (std::size_t i = 1; i < p.tree().vertex_count(); ++i) {
            const auto v = static_cast<vertex_t>(i);
            x[var_t] = static_cast<double>(p.tree().subtree_size(v) - 1);
            x[var_l0] = static_cast<double>(p.ext_leaves(v));
            x[var_l1] = static_cast<double>(p.ext_internal(v));
            for (const auto& [c, e] : compiled_) {
                double term = c;
                for (std::size_t j = 0; j < toll_var_count; ++j)
                    for (std::uint32_t k = 0; k < e[j]; ++k) term *= x[j];
                sum += term;
            }
        }
        return sum;
    }

private:
    std::variant<Builtin, PolynomialToll> kind_;
    std::string label_;
    std::vector<std::pair<double, Exponents>> compiled_;
};

}  // namespace ptree
