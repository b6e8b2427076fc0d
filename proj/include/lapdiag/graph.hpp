#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lapdiag {

using node = std::uint32_t;
using edgeid = std::uint64_t;

inline constexpr node none = std::numeric_limits<node>::max();

/// Thrown by the edge-list reader; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/**
 * Immutable undirected graph in compressed sparse row form.
 *
 * Every undirected edge {u,v} is stored twice (u->v and v->u). Weights are
 * conductances; an unweighted graph has no weight array and every edge
 * counts as 1. Edges get ids 0..m-1 in order of (min endpoint, CSR slot).
 */
class Graph {
public:
    Graph() = default;

    /// Build from an undirected edge list. Self-loops and duplicates are rejected.
    static Graph from_edges(node n, std::span<const std::pair<node, node>> edges,
                            std::span<const double> weights = {},
                            std::vector<std::uint64_t> labels = {});
    /// Adopt CSR arrays (validated: symmetric, simple, positive weights). Labels are 0..n-1.
    static Graph from_csr(std::vector<std::uint64_t> offsets, std::vector<node> neighbors,
                          std::vector<double> weights = {});

    node n() const noexcept { return n_; }
    edgeid m() const noexcept { return m_; }
    bool weighted() const noexcept { return !weights_.empty(); }
    /// True when every weight is equal (always true for unweighted graphs).
    bool uniform_weights() const noexcept { return uniform_weights_; }

    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::span<const node> adjacency() const noexcept { return neighbors_; }
    std::span<const double> adjacency_weights() const noexcept { return weights_; }
    std::span<const std::uint64_t> vertex_labels() const noexcept { return labels_; }

    std::span<const node> neighbors(node v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    /// Weights aligned with neighbors(v); empty for unweighted graphs.
    std::span<const double> weights(node v) const noexcept {
        if (weights_.empty())
            return {};
        return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
    }
    /// Edge ids aligned with neighbors(v).
    std::span<const edgeid> edge_ids(node v) const noexcept {
        return {slot_edge_.data() + offsets_[v], slot_edge_.data() + offsets_[v + 1]};
    }

    std::size_t degree(node v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    double weighted_degree(node v) const noexcept { return weighted_degree_[v]; }

    /// Endpoints (u < v) of edge e.
    std::pair<node, node> edge(edgeid e) const noexcept { return edges_[e]; }
    double edge_weight(edgeid e) const noexcept {
        return edge_weights_.empty() ? 1.0 : edge_weights_[e];
    }
    std::span<const std::pair<node, node>> edges() const noexcept { return edges_; }

    std::optional<edgeid> find_edge(node u, node v) const noexcept;

    /// Same topology with all weights replaced (indexed by edge id).
    Graph with_weights(std::span<const double> edge_weights) const;

private:
    void finalize();

    node n_ = 0;
    edgeid m_ = 0;
    bool uniform_weights_ = true;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<node> neighbors_;
    std::vector<double> weights_;
    std::vector<edgeid> slot_edge_;
    std::vector<double> weighted_degree_;
    std::vector<std::pair<node, node>> edges_;
    std::vector<double> edge_weights_;
    std::vector<std::uint64_t> labels_;
};

struct LoadStats {
    std::size_t duplicates = 0;
    std::size_t self_loops = 0;
};

/**
 * Read a whitespace-separated edge list ("u v [w]" per line). Lines starting
 * with '%' or '#' are comments; extra columns are ignored when unweighted.
 * External ids are compacted in order of first appearance. The first copy of
 * a duplicated edge wins.
 */
Graph load_edge_list(std::istream &in, bool weighted, LoadStats *stats = nullptr);
Graph load_edge_list_file(const std::string &path, bool weighted, LoadStats *stats = nullptr);

/// Writes "label_u label_v [w]" per edge, weights with round-trip precision.
void write_edge_list(std::ostream &out, const Graph &g);

/// Binary CSR cache: "LDG1", u64 n, u64 m, u64 offsets[n+1], u64 neighbors[2m], [f64 weights[2m]].
void write_binary(std::ostream &out, const Graph &g);
Graph read_binary(std::istream &in);

/// Loads either format, sniffing the "LDG1" magic.
Graph load_graph(const std::string &path, bool weighted, LoadStats *stats = nullptr);

struct ComponentExtraction {
    Graph graph;
    /// old id -> new id, `none` for dropped vertices.
    std::vector<node> old_to_new;
};

/// Largest connected component; ties go to the component holding the smallest vertex id.
ComponentExtraction largest_connected_component(const Graph &g);

bool is_connected(const Graph &g);

struct BfsTree {
    node root = none;
    std::vector<node> parent;
    std::vector<std::uint32_t> depth;
    std::uint32_t ecc_root = 0;
    /// Vertices in BFS discovery order.
    std::vector<node> order;

    /// Sum of hop distances from the root (combinatorial farness).
    std::uint64_t farness() const;
};

/// Unweighted BFS; neighbors explored in CSR order. Unreached vertices keep depth = max.
BfsTree bfs_tree(const Graph &g, node root);

struct BccComponent {
    std::vector<node> vertices;
    std::vector<edgeid> edges;
};

struct BccDecomposition {
    std::vector<BccComponent> components;
    std::vector<node> articulation_points;
    std::vector<std::size_t> component_of_edge;
};

/// Iterative Hopcroft-Tarjan lowpoint decomposition over the edge stack.
BccDecomposition biconnected_components(const Graph &g);

/// Sum of weighted degrees, 2 * sum of edge weights.
double volume(const Graph &g);

enum class GraphFamily { path, cycle, complete, star, erdos_renyi, watts_strogatz };

struct GeneratorParams {
    GraphFamily family = GraphFamily::path;
    node n = 2;
    double p = 0.1;        // erdos_renyi edge probability
    node k = 4;            // watts_strogatz ring degree (even)
    double beta = 0.1;     // watts_strogatz rewiring probability
    std::uint64_t seed = 1;
    int max_retries = 100; // random families are resampled until connected
};

/// Deterministic test graphs. The star's center is vertex n-1.
Graph generate_test_graph(const GeneratorParams &params);

GraphFamily parse_family(const std::string &name);

} // namespace lapdiag
