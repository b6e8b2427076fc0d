#pragma once

#include "lapdiag/graph.hpp"
#include "lapdiag/rng.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace lapdiag {

/// Rooted spanning tree with parent pointers and first-child/next-sibling lists.
struct SpanningTree {
    node root = none;
    std::vector<node> parent;
    std::vector<node> first_child;
    std::vector<node> next_sibling;
    /// Sum of ln w(e) over tree edges; 0 for unweighted graphs.
    double log_weight = 0.0;

    /// Recompute child/sibling lists from parent. Children are listed by ascending id.
    void rebuild_children();
};

struct DfsTimestamps {
    std::vector<std::uint32_t> alpha; ///< discovery order
    std::vector<std::uint32_t> omega; ///< finish order

    /// v lies in the subtree of b (v == b included).
    bool in_subtree(node v, node b) const noexcept {
        return alpha[b] <= alpha[v] && omega[v] <= omega[b];
    }
};

/**
 * Wilson's algorithm with reusable scratch. Transitions pick a neighbor with
 * probability proportional to the edge weight; graphs with uniform weights
 * use a single bounded integer draw per step. Vertices start their
 * loop-erased walks in id order. Copies share the graph and transition
 * table and own their scratch, so one copy per thread is cheap.
 */
class WilsonSampler {
public:
    explicit WilsonSampler(const Graph &g);

    /// Fill `tree` with a sample rooted at `root`; parents point towards root.
    void sample(node root, Pcg32 &rng, SpanningTree &tree);

    /// Random-walk steps taken by the last call to sample().
    std::uint64_t last_walk_steps() const noexcept { return steps_; }

    const Graph &graph() const noexcept { return *g_; }

private:
    node step(node v, Pcg32 &rng, std::uint64_t &slot);

    const Graph *g_;
    // Per-slot prefix weights within each adjacency slice; null for uniform weights.
    std::shared_ptr<const std::vector<double>> cumulative_;
    std::vector<char> in_tree_;
    std::vector<std::uint64_t> next_slot_;
    bool connected_ = true;
    std::uint64_t steps_ = 0;
};

SpanningTree wilson_sample(const Graph &g, node root, Pcg32 &rng);

/**
 * Wilson's algorithm run separately on every biconnected component, each
 * rooted at its vertex of maximal (component-local, unweighted) degree, then
 * stitched into one spanning tree of the whole graph rooted at `root`.
 * Uniform spanning trees factor over biconnected components, so the law is
 * the same as for WilsonSampler.
 */
class BccWilsonSampler {
public:
    BccWilsonSampler(const Graph &g, const BccDecomposition &bcc);

    void sample(node root, Pcg32 &rng, SpanningTree &tree);
    std::uint64_t last_walk_steps() const noexcept { return steps_; }

private:
    struct Component {
        Graph sub;
        std::vector<node> to_global;
        node local_root = 0;
    };

    const Graph *g_;
    std::shared_ptr<const std::vector<Component>> components_;
    std::vector<WilsonSampler> samplers_;
    SpanningTree local_;
    std::vector<std::uint64_t> head_, link_;
    std::vector<node> target_;
    std::vector<node> stack_;
    std::uint64_t steps_ = 0;
};

SpanningTree wilson_sample_bcc(const Graph &g, const BccDecomposition &bcc, node root, Pcg32 &rng);

/// Iterative DFS over the child/sibling lists.
DfsTimestamps dfs_timestamps(const SpanningTree &tree);
void dfs_timestamps(const SpanningTree &tree, DfsTimestamps &out);

} // namespace lapdiag
