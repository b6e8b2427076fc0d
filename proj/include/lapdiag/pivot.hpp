#pragma once

#include "lapdiag/graph.hpp"

#include <cstdint>
#include <vector>

namespace lapdiag {

struct PivotChoice {
    node vertex = none;
    /// Eccentricity lower bounds; 0 for vertices never reached.
    std::vector<std::uint32_t> ecc_lower_bounds;
    int sweeps = 0;
};

/**
 * Pick a low-eccentricity pivot by repeated double sweeps. The first BFS
 * starts at a seeded random vertex, each later one at the farthest vertex of
 * the previous BFS (smallest id on ties). After a BFS from s with
 * eccentricity e(s), every vertex v at depth d gets
 * bound[v] = max(bound[v], d, e(s) - d). The pivot is the argmin bound.
 */
PivotChoice select_pivot(const Graph &g, int iterations = 10, std::uint64_t seed = 1);

} // namespace lapdiag
