#pragma once

/**
 * @file enumeration.hpp
 * @brief Exhaustive generation of all plane trees on n edges and exact
 *        Gibbs-weighted sums over them.
 *
 * Trees are produced in lexicographic order of their parenthesis words with
 * '(' < ')', starting at "((...))". Gibbs weight of T is a^d0 b^d1 c^r with
 * (a, b, c) = (e^-alpha, e^-beta, e^-gamma), or rational weights supplied
 * directly for exact arithmetic.
 */

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "ptree/numeric.hpp"
#include "ptree/properties.hpp"
#include "ptree/tree.hpp"

namespace ptree {

/// Energy E(T) = alpha d0 + beta d1 + gamma r.
struct ThermoParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    friend bool operator==(const ThermoParams&, const ThermoParams&) = default;
};

/// Multiplicative weights (a, b, c) for leaves, internal nodes and root degree.
template <class Scalar>
struct Weights {
    Scalar a = 1;
    Scalar b = 1;
    Scalar c = 1;

    static Weights from(const ThermoParams& p)
        requires std::is_same_v<Scalar, double>
    {
        return {std::exp(-p.alpha), std::exp(-p.beta), std::exp(-p.gamma)};
    }
};

/// Thrown when an exhaustive computation would exceed the enumeration guard.
class GuardError : public std::invalid_argument {
public:
    GuardError(unsigned n, unsigned guard)
        : std::invalid_argument("enumeration of n=" + std::to_string(n) + " edges exceeds the guard n<=" +
                                std::to_string(guard) + " (raise it explicitly to proceed)") {}
};

inline constexpr unsigned default_enumeration_guard = 16;

inline void check_guard(unsigned n, unsigned guard) {
    if (n > guard) throw GuardError(n, guard);
}

/// Walks every plane tree with n edges exactly once.
class TreeEnumerator {
public:
    explicit TreeEnumerator(unsigned n) : n_(n), word_(2 * static_cast<std::size_t>(n), '(') {
        for (unsigned i = 0; i < n; ++i) {
            word_[i] = '(';
            word_[n + i] = ')';
        }
        rebuild();
    }

    const PlaneTree& tree() const { return tree_; }
    const std::string& parens() const { return word_; }

    /// Advances to the next tree; false once all C_n trees were visited.
    bool next() {
        long opens = 0, closes = 0;
        for (std::size_t i = word_.size(); i-- > 0;) {
            if (word_[i] == ')') {
                ++closes;
                continue;
            }
            ++opens;
            if (closes - opens >= 1) {
                word_[i] = ')';
                std::size_t j = i + 1;
                for (long o = 0; o < opens; ++o) word_[j++] = '(';
                for (long c = 0; c < closes - 1; ++c) word_[j++] = ')';
                rebuild();
                return true;
            }
        }
        return false;
    }

private:
    void rebuild() {
        parents_.clear();
        parents_.push_back(no_parent);
        stack_.assign(1, 0);
        for (char ch : word_) {
            if (ch == '(') {
                parents_.push_back(stack_.back());
                stack_.push_back(static_cast<vertex_t>(parents_.size() - 1));
            } else {
                stack_.pop_back();
            }
        }
        tree_.assign_unchecked(parents_);
    }

    unsigned n_;
    std::string word_;
    std::vector<vertex_t> parents_;
    std::vector<vertex_t> stack_;
    PlaneTree tree_;
};

/// Calls fn(const PlaneTree&) for every tree with n edges.
template <class Fn>
void for_each_tree(unsigned n, Fn&& fn) {
    TreeEnumerator e(n);
    do {
        fn(e.tree());
    } while (e.next());
}

/// Gibbs weight a^d0 b^d1 c^r from precomputed power tables.
template <class Scalar>
class WeightTable {
public:
    WeightTable(const Weights<Scalar>& w, unsigned n) : a_(n + 1), b_(n + 1), c_(n + 1) {
        a_[0] = b_[0] = c_[0] = 1;
        for (unsigned i = 1; i <= n; ++i) {
            a_[i] = a_[i - 1] * w.a;
            b_[i] = b_[i - 1] * w.b;
            c_[i] = c_[i - 1] * w.c;
        }
    }
    Scalar operator()(const TreeStats& s) const { return a_[s.leaves] * b_[s.internal] * c_[s.root_degree]; }

private:
    std::vector<Scalar> a_, b_, c_;
};

struct EnumerationOptions {
    unsigned guard = default_enumeration_guard;
    /// Restrict to trees with root degree <= root_max.
    std::optional<unsigned> root_max;
};

template <class Scalar>
Scalar exact_partition(unsigned n, const Weights<Scalar>& w, const EnumerationOptions& opt = {}) {
    check_guard(n, opt.guard);
    const WeightTable<Scalar> wt(w, n);
    Accumulator<Scalar> z;
    TreeProfile prof;
    for_each_tree(n, [&](const PlaneTree& t) {
        prof.compute(t);
        if (opt.root_max && prof.stats().root_degree > *opt.root_max) return;
        z.add(wt(prof.stats()));
    });
    return z.value();
}

inline double exact_partition(unsigned n, const ThermoParams& p, const EnumerationOptions& opt = {}) {
    return exact_partition<double>(n, Weights<double>::from(p), opt);
}

/// E[P^k] for k = 0..k_max under the Gibbs law on trees with n edges.
template <class Scalar>
std::vector<Scalar> exact_moments(unsigned n, const Weights<Scalar>& w, const Property& prop, unsigned k_max,
                                  const EnumerationOptions& opt = {}) {
    check_guard(n, opt.guard);
    const WeightTable<Scalar> wt(w, n);
    std::vector<Accumulator<Scalar>> acc(k_max + 1);
    TreeProfile prof;
    for_each_tree(n, [&](const PlaneTree& t) {
        prof.compute(t);
        if (opt.root_max && prof.stats().root_degree > *opt.root_max) return;
        const Scalar weight = wt(prof.stats());
        const Scalar value = prop.evaluate<Scalar>(prof);
        Scalar term = weight;
        for (unsigned k = 0; k <= k_max; ++k) {
            acc[k].add(term);
            term *= value;
        }
    });
    const Scalar z = acc[0].value();
    if (z == 0) throw std::domain_error("exact_moments: no tree satisfies the constraints");
    std::vector<Scalar> out(k_max + 1);
    for (unsigned k = 0; k <= k_max; ++k) out[k] = acc[k].value() / z;
    return out;
}

template <class Scalar>
struct ExactDistribution {
    unsigned n = 0;
    /// property value -> total Gibbs weight of the trees taking it
    std::map<Scalar, Scalar> entries;
    Scalar partition = 0;
};

template <class Scalar>
ExactDistribution<Scalar> exact_distribution(unsigned n, const Weights<Scalar>& w, const Property& prop,
                                             const EnumerationOptions& opt = {}) {
    check_guard(n, opt.guard);
    const WeightTable<Scalar> wt(w, n);
    ExactDistribution<Scalar> d;
    d.n = n;
    Accumulator<Scalar> z;
    TreeProfile prof;
    for_each_tree(n, [&](const PlaneTree& t) {
        prof.compute(t);
        if (opt.root_max && prof.stats().root_degree > *opt.root_max) return;
        const Scalar weight = wt(prof.stats());
        d.entries[prop.evaluate<Scalar>(prof)] += weight;
        z.add(weight);
    });
    d.partition = z.value();
    return d;
}

}  // namespace ptree
