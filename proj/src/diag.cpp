#include "lapdiag/diag.hpp"

#include "lapdiag/parallel.hpp"
#include "lapdiag/pivot.hpp"
#include "lapdiag/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lapdiag {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

} // namespace

std::string to_string(AggregationMode mode) {
    return mode == AggregationMode::frequency ? "frequency" : "paper-weighted";
}

AggregationMode parse_aggregation(const std::string &name) {
    if (name == "frequency")
        return AggregationMode::frequency;
    if (name == "paper-weighted" || name == "paper_weighted")
        return AggregationMode::paper_weighted;
    throw std::invalid_argument("unknown aggregation mode '" + name + "'");
}

void ResistanceAccumulator::merge(const ResistanceAccumulator &other) {
    for (std::size_t v = 0; v < R.size(); ++v)
        R[v] += other.R[v];
    samples += other.samples;
}

void ResistanceAccumulator::reset() {
    std::fill(R.begin(), R.end(), 0.0);
    samples = 0.0;
}

double DiagEstimate::trace() const { return std::accumulate(diag.begin(), diag.end(), 0.0); }

std::uint64_t compute_tau(std::uint32_t ecc, std::uint64_t m, double delta, double eps, double kappa) {
    if (!(eps > 0.0))
        throw std::domain_error("compute_tau: eps must be positive");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("compute_tau: delta must lie in (0, 1]");
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::domain_error("compute_tau: kappa must lie in (0, 1)");
    if (m == 0)
        throw std::domain_error("compute_tau: graph has no edges");
    const double rest = 1.0 - kappa;
    const double per_edge =
        std::ceil(std::log(2.0 * static_cast<double>(m) / delta) / (2.0 * rest * rest * eps * eps));
    const double tau = static_cast<double>(ecc) * static_cast<double>(ecc) * per_edge;
    if (!(tau < 0x1.0p63)) {
        std::ostringstream msg;
        msg << "compute_tau: required sample count " << tau << " overflows";
        throw std::domain_error(msg.str());
    }
    return static_cast<std::uint64_t>(ecc) * ecc * static_cast<std::uint64_t>(per_edge);
}

double compute_eta(double eps, double kappa, std::uint64_t n, std::uint64_t m, std::uint64_t diam_bound) {
    if (n < 2)
        throw std::domain_error("compute_eta: n must be at least 2");
    if (diam_bound < 1)
        throw std::domain_error("compute_eta: diameter bound must be at least 1");
    const double dn = static_cast<double>(n);
    return kappa * eps / (3.0 * std::sqrt(static_cast<double>(m) * dn * std::log(dn)) * static_cast<double>(diam_bound));
}

void aggregate(const DfsTimestamps &ts, std::span<const node> tree_parent, const BfsTree &bfs,
               ResistanceAccumulator &acc, double contribution, std::span<const double> bfs_resistance) {
    const node root = bfs.root;
    if (root == none || ts.alpha.size() != bfs.parent.size() || tree_parent.size() != bfs.parent.size() ||
        ts.alpha[root] != 0 || tree_parent[root] != none)
        throw std::invalid_argument("aggregate: spanning tree and BFS tree have different roots");
    if (!bfs_resistance.empty() && bfs_resistance.size() != bfs.parent.size())
        throw std::invalid_argument("aggregate: BFS edge resistances do not match the tree");
    const bool scaled = !bfs_resistance.empty();
    auto &R = acc.R;
    for (std::size_t i = 1; i < bfs.order.size(); ++i) {
        const node v = bfs.order[i];
        double delta = 0.0;
        for (node b = v; b != root;) {
            const node a = bfs.parent[b];
            if (tree_parent[b] == a) {
                if (ts.in_subtree(v, b))
                    delta += scaled ? contribution * bfs_resistance[b] : contribution;
            } else if (tree_parent[a] == b) {
                if (ts.in_subtree(v, a))
                    delta -= scaled ? contribution * bfs_resistance[b] : contribution;
            }
            b = a;
        }
        R[v] += delta;
    }
}

std::vector<double> bfs_edge_resistance(const Graph &g, const BfsTree &bfs) {
    if (!g.weighted())
        return {};
    std::vector<double> r(g.n(), 0.0);
    for (node b = 0; b < g.n(); ++b) {
        const node a = bfs.parent[b];
        if (a == none)
            continue;
        const auto nb = g.neighbors(b);
        const auto wb = g.weights(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (nb[i] == a) {
                r[b] = 1.0 / wb[i];
                break;
            }
    }
    return r;
}

namespace {

struct Worker {
    std::optional<WilsonSampler> plain;
    std::optional<BccWilsonSampler> bcc;
    SpanningTree tree;
    DfsTimestamps ts;
    ResistanceAccumulator local;
    double sampling_ms = 0.0;
    double aggregation_ms = 0.0;

    void sample(node root, Pcg32 &rng) {
        if (bcc)
            bcc->sample(root, rng, tree);
        else
            plain->sample(root, rng, tree);
    }
};

DiagEstimate run_pipeline(const Graph &g, const ApproxParams &params) {
    const auto start = clock_type::now();
    const node n = g.n();
    if (n < 2)
        throw std::domain_error("approx_diag needs at least two vertices");
    if (!(params.eps > 0.0))
        throw std::domain_error("eps must be positive");
    if (!(params.kappa > 0.0 && params.kappa < 1.0))
        throw std::domain_error("kappa must lie in (0, 1)");
    const double delta = params.delta.value_or(1.0 / static_cast<double>(n));
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("delta must lie in (0, 1)");
    if (!is_connected(g))
        throw std::domain_error("approx_diag needs a connected graph");

    DiagEstimate est;
    est.eps = params.eps;
    est.delta = delta;
    est.kappa = params.kappa;
    est.seed = params.seed;
    est.weighted = g.weighted();
    est.use_bcc = params.use_bcc;
    est.aggregation = params.aggregation;
    est.threads = resolve_threads(params.threads);

    auto phase = clock_type::now();
    if (params.pivot) {
        if (*params.pivot >= n)
            throw std::out_of_range("pivot " + std::to_string(*params.pivot) + " out of range");
        est.pivot = *params.pivot;
    } else {
        est.pivot = select_pivot(g, params.pivot_iterations, params.seed).vertex;
    }
    est.timings.pivot_ms = ms_since(phase);

    phase = clock_type::now();
    const BfsTree bfs = bfs_tree(g, est.pivot);
    est.ecc_pivot = bfs.ecc_root;
    const std::vector<double> bfs_resistance = bfs_edge_resistance(g, bfs);
    est.timings.bfs_ms = ms_since(phase);

    est.tau = params.tau_override ? *params.tau_override
                                  : compute_tau(est.ecc_pivot, g.m(), delta, params.eps, params.kappa);
    est.eta = params.cg_tolerance_override
                  ? *params.cg_tolerance_override
                  : compute_eta(params.eps, params.kappa, n, g.m(), 2ull * est.ecc_pivot);

    Worker prototype;
    if (params.use_bcc)
        prototype.bcc.emplace(g, biconnected_components(g));
    else
        prototype.plain.emplace(g);
    prototype.local = ResistanceAccumulator(n, est.pivot);

    // Relative tree weights are taken against sample 0 to stay inside double range.
    const bool weight_trees = g.weighted() && params.aggregation == AggregationMode::paper_weighted;
    double reference_log_weight = 0.0;
    if (weight_trees && est.tau > 0) {
        Pcg32 rng(params.seed, 0);
        prototype.sample(est.pivot, rng);
        reference_log_weight = prototype.tree.log_weight;
    }

    std::vector<Worker> workers(static_cast<std::size_t>(est.threads), prototype);
    ResistanceAccumulator total(n, est.pivot);

    phase = clock_type::now();
    ordered_chunks(
        est.tau, params.chunk_size, est.threads,
        [&](std::size_t slot, std::size_t begin, std::size_t end) {
            Worker &w = workers[slot];
            for (std::size_t i = begin; i < end; ++i) {
                auto t0 = clock_type::now();
                Pcg32 rng(params.seed, i);
                w.sample(est.pivot, rng);
                const double contribution =
                    weight_trees ? std::exp(w.tree.log_weight - reference_log_weight) : 1.0;
                auto t1 = clock_type::now();
                dfs_timestamps(w.tree, w.ts);
                aggregate(w.ts, w.tree.parent, bfs, w.local, contribution, bfs_resistance);
                w.local.samples += contribution;
                auto t2 = clock_type::now();
                w.sampling_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
                w.aggregation_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
            }
        },
        [&](std::size_t slot) {
            total.merge(workers[slot].local);
            workers[slot].local.reset();
        });
    est.timings.sampling_wall_ms = ms_since(phase);
    for (const auto &w : workers) {
        est.timings.sampling_ms += w.sampling_ms;
        est.timings.aggregation_ms += w.aggregation_ms;
    }

    phase = clock_type::now();
    const SolveResult solve = solve_pivot_column(g, est.pivot, est.eta);
    est.timings.solve_ms = ms_since(phase);
    est.solver_iterations = solve.iterations;
    est.solver_residual = solve.residual;
    if (!solve.converged) {
        std::ostringstream msg;
        msg << "conjugate gradient did not reach tolerance " << est.eta << " (residual " << solve.residual
            << " after " << solve.iterations << " iterations; pivot " << est.pivot << ", tau " << est.tau << ")";
        throw SolverError(msg.str());
    }

    phase = clock_type::now();
    const auto &x = solve.x;
    const node u = est.pivot;
    est.resistance.assign(n, 0.0);
    est.diag.assign(n, 0.0);
    for (node v = 0; v < n; ++v) {
        if (v == u)
            continue;
        est.resistance[v] = total.samples > 0.0 ? total.R[v] / total.samples : 0.0;
        est.diag[v] = est.resistance[v] - x[u] + 2.0 * x[v];
    }
    est.diag[u] = x[u];
    est.timings.assembly_ms = ms_since(phase);
    est.timings.total_ms = ms_since(start);
    return est;
}

} // namespace

DiagEstimate approx_diag(const Graph &g, const ApproxParams &params) {
    if (g.weighted())
        throw std::invalid_argument("approx_diag expects an unweighted graph; use approx_diag_weighted");
    return run_pipeline(g, params);
}

DiagEstimate approx_diag_weighted(const Graph &g, const ApproxParams &params) { return run_pipeline(g, params); }

} // namespace lapdiag
