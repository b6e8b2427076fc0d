#pragma once

#include "lapdiag/graph.hpp"
#include "lapdiag/ust.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace testing {

using namespace lapdiag;

inline Graph make(node n, std::vector<std::pair<node, node>> edges, std::vector<double> w = {}) {
    return Graph::from_edges(n, edges, w);
}

inline Graph p3() { return make(3, {{0, 1}, {1, 2}}); }
inline Graph k3() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph k4() { return make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
// Star with three leaves, center last.
inline Graph s3() { return make(4, {{0, 3}, {1, 3}, {2, 3}}); }
// Two triangles sharing vertex 2.
inline Graph bowtie() { return make(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}); }
// C4 with the chord 0-2.
inline Graph c4_chord() { return make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}); }

inline Graph er(node n, double p, std::uint64_t seed) {
    GeneratorParams gp;
    gp.family = GraphFamily::erdos_renyi;
    gp.n = n;
    gp.p = p;
    gp.seed = seed;
    return generate_test_graph(gp);
}

inline Graph with_random_weights(const Graph &g, std::uint64_t seed, double lo = 0.5, double hi = 3.0) {
    Pcg32 rng(seed, 99);
    std::vector<double> w(g.m());
    for (auto &x : w)
        x = lo + (hi - lo) * rng.uniform();
    return g.with_weights(w);
}

// All spanning trees as sorted edge-id lists, by brute force over (n-1)-subsets.
inline std::vector<std::vector<edgeid>> enumerate_spanning_trees(const Graph &g) {
    std::vector<std::vector<edgeid>> trees;
    const auto m = static_cast<std::size_t>(g.m());
    const std::size_t k = g.n() - 1;
    std::vector<char> pick(m, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), 1);
    do {
        std::vector<node> uf(g.n());
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](node x) {
            while (uf[x] != x)
                x = uf[x] = uf[uf[x]];
            return x;
        };
        std::vector<edgeid> chosen;
        bool acyclic = true;
        for (edgeid e = 0; e < m && acyclic; ++e) {
            if (!pick[e])
                continue;
            auto [a, b] = g.edge(e);
            const node ra = find(a), rb = find(b);
            if (ra == rb)
                acyclic = false;
            uf[ra] = rb;
            chosen.push_back(e);
        }
        if (acyclic)
            trees.push_back(chosen);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return trees;
}

inline std::vector<edgeid> tree_edges(const Graph &g, const SpanningTree &t) {
    std::vector<edgeid> out;
    for (node v = 0; v < g.n(); ++v)
        if (v != t.root)
            out.push_back(*g.find_edge(v, t.parent[v]));
    std::sort(out.begin(), out.end());
    return out;
}

inline double chi_square_critical(double df, double alpha) {
    boost::math::chi_squared dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

inline double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Exact eccentricities by n BFS runs.
inline std::vector<std::uint32_t> exact_ecc(const Graph &g) {
    std::vector<std::uint32_t> ecc(g.n());
    for (node v = 0; v < g.n(); ++v)
        ecc[v] = bfs_tree(g, v).ecc_root;
    return ecc;
}

} // namespace testing
