#pragma once

#include "lapdiag/graph.hpp"
#include "lapdiag/ust.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lapdiag {

/// How spanning-tree contributions are weighted on weighted graphs.
enum class AggregationMode {
    /// Every sampled tree counts once; the sampler already draws trees with probability ~ w(T).
    frequency,
    /// Each tree counts w(T) and the sum is divided by the total sampled weight.
    paper_weighted,
};

std::string to_string(AggregationMode mode);
AggregationMode parse_aggregation(const std::string &name);

struct ApproxParams {
    double eps = 0.3;
    /// Failure probability; unset means 1/n.
    std::optional<double> delta;
    double kappa = 0.3;
    std::uint64_t seed = 1;
    /// 0 means all hardware threads.
    int threads = 0;
    /// Unset runs pivot selection.
    std::optional<node> pivot;
    int pivot_iterations = 10;
    /// Sample per biconnected component and stitch.
    bool use_bcc = true;
    AggregationMode aggregation = AggregationMode::frequency;
    /// Testing hooks: force the sample count or the solver tolerance.
    std::optional<std::uint64_t> tau_override;
    std::optional<double> cg_tolerance_override;
    /// Samples per scheduling chunk; part of the reproducibility contract.
    std::size_t chunk_size = 16;
};

struct ResistanceAccumulator {
    /// Signed path-crossing tallies, one per vertex; R[pivot] stays 0.
    std::vector<double> R;
    /// Number of trees (frequency) or total relative tree weight (paper_weighted).
    double samples = 0.0;
    node pivot = none;

    ResistanceAccumulator() = default;
    ResistanceAccumulator(node n, node pivot_vertex) : R(n, 0.0), pivot(pivot_vertex) {}

    void merge(const ResistanceAccumulator &other);
    void reset();
};

struct PhaseTimings {
    double pivot_ms = 0.0;
    double bfs_ms = 0.0;
    /// Summed over workers.
    double sampling_ms = 0.0;
    /// Summed over workers.
    double aggregation_ms = 0.0;
    /// Wall time of the parallel sample-and-aggregate loop.
    double sampling_wall_ms = 0.0;
    double solve_ms = 0.0;
    double assembly_ms = 0.0;
    double total_ms = 0.0;
};

struct DiagEstimate {
    std::vector<double> diag;
    /// Estimated effective resistances r(pivot, v).
    std::vector<double> resistance;
    node pivot = none;
    std::uint64_t tau = 0;
    double eps = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    double eta = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t ecc_pivot = 0;
    int threads = 1;
    bool weighted = false;
    bool use_bcc = true;
    AggregationMode aggregation = AggregationMode::frequency;
    std::size_t solver_iterations = 0;
    double solver_residual = 0.0;
    PhaseTimings timings;

    double trace() const;
};

/// tau = ecc^2 * ceil(ln(2m/delta) / (2 (1-kappa)^2 eps^2)).
std::uint64_t compute_tau(std::uint32_t ecc, std::uint64_t m, double delta, double eps, double kappa);

/// eta = kappa eps / (3 sqrt(m n ln n) diam_bound).
double compute_eta(double eps, double kappa, std::uint64_t n, std::uint64_t m, std::uint64_t diam_bound);

/**
 * Add one tree's contribution to acc.R. For every v and every edge (a, b) on
 * the BFS path from the root to v (a nearer the root): +contribution when the
 * tree has a as parent of b and v lies below b, -contribution when b is the
 * parent of a and v lies below a. The tree must be rooted at bfs.root.
 * On weighted graphs each term is scaled by bfs_resistance[b], the resistance
 * 1/w of the BFS edge into b; empty means unit resistances.
 */
void aggregate(const DfsTimestamps &ts, std::span<const node> tree_parent, const BfsTree &bfs,
               ResistanceAccumulator &acc, double contribution = 1.0,
               std::span<const double> bfs_resistance = {});

/// 1/w of the BFS edge into each vertex (0 at the root); empty for unweighted graphs.
std::vector<double> bfs_edge_resistance(const Graph &g, const BfsTree &bfs);

/// Diagonal of L^+ for an unweighted connected graph, within +-eps w.p. 1 - delta.
DiagEstimate approx_diag(const Graph &g, const ApproxParams &params);

/// Same pipeline with weight-proportional tree sampling.
DiagEstimate approx_diag_weighted(const Graph &g, const ApproxParams &params);

} // namespace lapdiag
