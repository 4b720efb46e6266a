#pragma once

/**
 * @file sampler.hpp
 * @brief Exact sampling from the Gibbs distribution on plane trees with n edges.
 *
 * A tree is a sequence of root components; a component of size j is a root
 * edge over a planted subtree of size j-1. Component sizes are drawn from the
 * coefficient tables of series.hpp, so every tree is produced with probability
 * exactly a^d0 b^d1 c^r / Z. The generator runs on an explicit work stack and
 * emits vertices in preorder.
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ptree/enumeration.hpp"
#include "ptree/properties.hpp"
#include "ptree/series.hpp"
#include "ptree/tree.hpp"

namespace ptree {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// 64-bit Mersenne Twister seeded through SplitMix64. Stream i of seed s is
/// independent of how many threads consume the streams.
class Rng {
public:
    static constexpr const char* algorithm = "mt19937_64+splitmix64";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t st = seed;
        std::uint64_t mixed = splitmix64(st);
        st = mixed ^ (stream * 0xd1b54a32d192ed03ULL);
        engine_.seed(splitmix64(st));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

namespace detail {

// Inverse-CDF pick over [lo, hi] visiting lo, hi, lo+1, hi-1, ... so the cost
// is proportional to the distance of the chosen index from the nearer end.
template <class W>
unsigned pick_two_ended(unsigned lo, unsigned hi, W&& weight, double target) {
    double cum = 0.0;
    unsigned last = lo;
    unsigned a = lo, b = hi;
    while (a <= b) {
        const double wa = weight(a);
        if (wa > 0) {
            cum += wa;
            last = a;
            if (target < cum) return a;
        }
        if (a == b) break;
        const double wb = weight(b);
        if (wb > 0) {
            cum += wb;
            last = b;
            if (target < cum) return b;
        }
        ++a;
        --b;
    }
    // Rounding left target above the summed weights.
    return last;
}

}  // namespace detail

class GibbsSampler {
public:
    GibbsSampler(unsigned n, const Weights<double>& w, std::optional<unsigned> root_max = std::nullopt)
        : GibbsSampler(std::make_shared<const SeriesTables<double>>(build_tables<double>(w, n)), n, root_max) {}

    GibbsSampler(unsigned n, const ThermoParams& p, std::optional<unsigned> root_max = std::nullopt)
        : GibbsSampler(n, Weights<double>::from(p), root_max) {}

    GibbsSampler(std::shared_ptr<const SeriesTables<double>> tables, unsigned n,
                 std::optional<unsigned> root_max = std::nullopt)
        : tables_(std::move(tables)), n_(n) {
        if (!tables_ || tables_->order < n) throw std::invalid_argument("sampler: tables truncated below n");
        const auto& t = *tables_;
        root_comp_.assign(n + 1, 0.0);
        const double ratio = t.scale / t.z_scale;
        double rp = 1.0;
        for (unsigned j = 1; j <= n; ++j) {
            rp *= ratio;
            root_comp_[j] = t.weights.c * t.g1[j] * rp;
        }
        if (root_max) {
            if (*root_max == 0) throw std::invalid_argument("sampler: root degree bound must be at least 1");
            bounded_ = std::make_shared<const BoundedRootTable>(bounded_root_table(t, std::min(*root_max, n)));
        }
    }

    unsigned edges() const { return n_; }
    std::optional<unsigned> root_max() const {
        if (!bounded_) return std::nullopt;
        return bounded_->max_root_degree;
    }
    const SeriesTables<double>& tables() const { return *tables_; }

    void sample(Rng& rng, PlaneTree& out) {
        parents_.clear();
        parents_.push_back(no_parent);
        stack_.clear();
        if (n_ > 0) stack_.push_back({Frame::root_seq, 0, n_, bounded_ ? bounded_->max_root_degree : 0});
        const auto& g = tables_->g;
        const auto& g1 = tables_->g1;
        const double b = tables_->weights.b;

        while (!stack_.empty()) {
            const Frame f = stack_.back();
            stack_.pop_back();
            switch (f.kind) {
                case Frame::root_seq: {
                    unsigned j;
                    if (bounded_) {
                        const auto& prev = bounded_->zh[f.d - 1];
                        j = detail::pick_two_ended(
                            1, f.m, [&](unsigned i) { return tables_->weights.c * g1[i] * prev[f.m - i]; },
                            rng.uniform() * bounded_->zh[f.d][f.m]);
                    } else {
                        const auto& z = tables_->z;
                        j = detail::pick_two_ended(
                            1, f.m, [&](unsigned i) { return root_comp_[i] * z[f.m - i]; },
                            rng.uniform() * z[f.m]);
                    }
                    if (j < f.m) stack_.push_back({Frame::root_seq, 0, f.m - j, f.d - 1});
                    push_component(0, j);
                    break;
                }
                case Frame::planted: {
                    const unsigned s = f.m;
                    if (s == 0) break;
                    const double w1 = b * g1[s];
                    const double wm = g[s] - g1[s];
                    if (wm <= 0 || rng.uniform() * (w1 + wm) < w1) {
                        push_component(f.v, s);
                        break;
                    }
                    const unsigned j = detail::pick_two_ended(
                        1, s - 1, [&](unsigned i) { return g1[i] * g[s - i]; }, rng.uniform() * wm);
                    stack_.push_back({Frame::free_seq, f.v, s - j, 0});
                    push_component(f.v, j);
                    break;
                }
                case Frame::free_seq: {
                    const unsigned j = detail::pick_two_ended(
                        1, f.m, [&](unsigned i) { return g1[i] * g[f.m - i]; }, rng.uniform() * g[f.m]);
                    if (j < f.m) stack_.push_back({Frame::free_seq, f.v, f.m - j, 0});
                    push_component(f.v, j);
                    break;
                }
            }
        }
        out.assign_unchecked(parents_);
    }

    PlaneTree sample(Rng& rng) {
        PlaneTree t;
        sample(rng, t);
        return t;
    }

private:
    struct Frame {
        enum Kind : std::uint8_t { root_seq, planted, free_seq } kind;
        vertex_t v;
        unsigned m;
        unsigned d;
    };

    // New child of v heading a component of size j; its planted subtree is
    // generated before anything already on the stack.
    void push_component(vertex_t v, unsigned j) {
        const auto w = static_cast<vertex_t>(parents_.size());
        parents_.push_back(v);
        stack_.push_back({Frame::planted, w, j - 1, 0});
    }

    std::shared_ptr<const SeriesTables<double>> tables_;
    std::shared_ptr<const BoundedRootTable> bounded_;
    std::vector<double> root_comp_;
    unsigned n_;
    std::vector<vertex_t> parents_;
    std::vector<Frame> stack_;
};

inline PlaneTree sample_tree(unsigned n, const ThermoParams& p, Rng& rng) {
    GibbsSampler s(n, p);
    return s.sample(rng);
}

inline PlaneTree sample_bounded_root(unsigned n, const ThermoParams& p, unsigned h, Rng& rng) {
    GibbsSampler s(n, p, h);
    return s.sample(rng);
}

struct SampleRecord {
    TreeStats stats;
    std::vector<double> values;
    /// Parenthesis word, only when trees are kept.
    std::string parens;
};

struct SampleBatch {
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::string algorithm = Rng::algorithm;
    std::vector<std::string> property_ids;
    std::vector<SampleRecord> records;
};

struct BatchOptions {
    std::size_t count = 1;
    std::uint64_t seed = 0;
    std::vector<Property> properties;
    bool keep_trees = false;
    /// 0 picks the hardware concurrency.
    unsigned threads = 1;
};

/// Trees drawn per RNG stream; fixed so output does not depend on threads.
inline constexpr std::size_t sample_chunk_size = 1024;

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Draws opt.count trees, evaluating the requested properties on the fly.
/// Record i is the same for a given seed whatever the thread count.
inline SampleBatch sample_batch(const GibbsSampler& proto, const BatchOptions& opt) {
    if (opt.count < 1) throw std::invalid_argument("sample_batch: count must be at least 1");
    SampleBatch batch;
    batch.seed = opt.seed;
    batch.count = opt.count;
    for (const auto& p : opt.properties) batch.property_ids.push_back(p.id());
    batch.records.resize(opt.count);

    const std::size_t chunks = (opt.count + sample_chunk_size - 1) / sample_chunk_size;
    auto run_chunk = [&](GibbsSampler& sampler, PlaneTree& tree, TreeProfile& prof, std::size_t c) {
        Rng rng(opt.seed, c);
        const std::size_t end = std::min(opt.count, (c + 1) * sample_chunk_size);
        for (std::size_t i = c * sample_chunk_size; i < end; ++i) {
            sampler.sample(rng, tree);
            prof.compute(tree);
            SampleRecord& r = batch.records[i];
            r.stats = prof.stats();
            r.values.reserve(opt.properties.size());
            for (const auto& p : opt.properties) r.values.push_back(p.evaluate_double(prof));
            if (opt.keep_trees) r.parens = to_parens(tree);
        }
    };

    const unsigned threads = std::min<std::size_t>(resolve_threads(opt.threads), chunks);
    if (threads <= 1) {
        GibbsSampler sampler = proto;
        PlaneTree tree;
        TreeProfile prof;
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(sampler, tree, prof, c);
        return batch;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            GibbsSampler sampler = proto;
            PlaneTree tree;
            TreeProfile prof;
            for (std::size_t c = w; c < chunks; c += threads) run_chunk(sampler, tree, prof, c);
        });
    }
    for (auto& th : pool) th.join();
    return batch;
}

}  // namespace ptree
