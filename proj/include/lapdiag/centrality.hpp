#pragma once

#include "lapdiag/diag.hpp"
#include "lapdiag/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lapdiag {

enum class ScoreKind { electrical_closeness, electrical_farness, nrwb, spanning_edge_resistance, kirchhoff_edge };

std::string to_string(ScoreKind kind);

struct Scores {
    /// Indexed by vertex, or by edge id for edge measures.
    std::vector<double> values;
    ScoreKind kind = ScoreKind::electrical_farness;
    std::vector<std::string> warnings;
    /// Spanning trees sampled (edge measures).
    std::uint64_t trees = 0;
    /// Probe vectors used (kirchhoff_edge).
    std::uint64_t probes = 0;
};

// Vertex measures depend only on diag(L^+) and its trace.

/// f(v) = n * L^+_vv + tr(L^+), the sum of effective resistances from v.
Scores electrical_farness(std::span<const double> diag);
Scores electrical_farness(const DiagEstimate &est);

/// (n - 1) / f(v).
Scores electrical_closeness(std::span<const double> diag);
Scores electrical_closeness(const DiagEstimate &est);

/// Normalized random-walk betweenness, 1/n + tr(L^+) / ((n - 1) f(v)).
Scores nrwb(std::span<const double> diag);
Scores nrwb(const DiagEstimate &est);

/// Sum of effective resistances over all pairs, n * tr(L^+).
double kirchhoff_index(std::span<const double> diag);
double kirchhoff_index(const DiagEstimate &est);

struct EdgeSamplingParams {
    double eps = 0.1;
    /// Unset means 1/n.
    std::optional<double> delta;
    std::uint64_t seed = 1;
    int threads = 0;
    bool use_bcc = true;
    /// Testing hook: force the tree count.
    std::optional<std::uint64_t> trees_override;
};

/// q = ceil(2 eps^-2 ln(2m/delta)).
std::uint64_t spanning_edge_sample_count(double eps, std::uint64_t m, double delta);

/**
 * Effective resistance of every edge from spanning-tree inclusion
 * frequencies: Pr[e in T] = w(e) r(e), so r(e) ~ (count / q) / w(e).
 */
Scores spanning_edge_resistance(const Graph &g, const EdgeSamplingParams &params);

struct KirchhoffEdgeParams {
    double theta = 0.5;
    double eps = 0.1;
    std::optional<double> delta;
    /// 0 means ceil(eps^-2 ln n).
    std::uint64_t num_hutchinson = 0;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Replace the sampled numerator and denominator by dense-oracle values.
    bool oracle = false;
};

/**
 * Change of the Kirchhoff index when edge e is down-weighted to theta w(e),
 * by Sherman-Morrison:
 *   C(e) = n (1 - theta) w(e) ||L^+ b_e||^2 / (1 - (1 - theta) w(e) r(e)).
 * The numerator is a Hutchinson estimate over mean-centered Rademacher
 * probes z with L y = z solved by CG at tolerance eps / 10; r(e) comes from
 * spanning_edge_resistance. Denominators below theta / 2 are clamped.
 */
Scores kirchhoff_edge_centrality(const Graph &g, const KirchhoffEdgeParams &params);

} // namespace lapdiag
