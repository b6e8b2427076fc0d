#include "lapdiag/pivot.hpp"

#include "lapdiag/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace lapdiag {

PivotChoice select_pivot(const Graph &g, int iterations, std::uint64_t seed) {
    if (iterations < 1)
        throw std::invalid_argument("pivot selection needs at least one BFS iteration");
    if (g.n() == 0)
        throw std::invalid_argument("empty graph");

    PivotChoice choice;
    choice.ecc_lower_bounds.assign(g.n(), 0);
    std::vector<char> touched(g.n(), 0);
    std::vector<char> used(g.n(), 0);

    Pcg32 rng(seed, 0);
    node source = rng.bounded(g.n());
    for (int it = 0; it < iterations; ++it) {
        const auto bfs = bfs_tree(g, source);
        ++choice.sweeps;
        used[source] = 1;
        const std::uint32_t ecc = bfs.ecc_root;
        // Farthest vertex not yet swept from; plain ping-pong between two ends stalls.
        node farthest = none, fallback = none;
        for (node v : bfs.order) {
            const std::uint32_t d = bfs.depth[v];
            auto &bound = choice.ecc_lower_bounds[v];
            bound = std::max({bound, d, ecc - d});
            touched[v] = 1;
            if (d == ecc && v < fallback)
                fallback = v;
        }
        std::uint32_t best = 0;
        for (node v : bfs.order)
            if (!used[v] && (farthest == none || bfs.depth[v] > best || (bfs.depth[v] == best && v < farthest))) {
                farthest = v;
                best = bfs.depth[v];
            }
        source = farthest == none ? fallback : farthest;
    }

    for (node v = 0; v < g.n(); ++v) {
        if (!touched[v])
            continue;
        if (choice.vertex == none || choice.ecc_lower_bounds[v] < choice.ecc_lower_bounds[choice.vertex])
            choice.vertex = v;
    }
    return choice;
}

} // namespace lapdiag
