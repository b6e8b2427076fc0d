#include "lapdiag/centrality.hpp"

#include "lapdiag/dense_oracle.hpp"
#include "lapdiag/parallel.hpp"
#include "lapdiag/rng.hpp"
#include "lapdiag/solver.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lapdiag {

std::string to_string(ScoreKind kind) {
    switch (kind) {
    case ScoreKind::electrical_closeness:
        return "electrical_closeness";
    case ScoreKind::electrical_farness:
        return "electrical_farness";
    case ScoreKind::nrwb:
        return "nrwb";
    case ScoreKind::spanning_edge_resistance:
        return "spanning_edge_resistance";
    case ScoreKind::kirchhoff_edge:
        return "kirchhoff_edge";
    }
    return "unknown";
}

Scores electrical_farness(std::span<const double> diag) {
    const double n = static_cast<double>(diag.size());
    const double trace = std::accumulate(diag.begin(), diag.end(), 0.0);
    Scores s;
    s.kind = ScoreKind::electrical_farness;
    s.values.reserve(diag.size());
    for (double d : diag)
        s.values.push_back(n * d + trace);
    return s;
}

Scores electrical_farness(const DiagEstimate &est) { return electrical_farness(est.diag); }

Scores electrical_closeness(std::span<const double> diag) {
    Scores s = electrical_farness(diag);
    s.kind = ScoreKind::electrical_closeness;
    const double n1 = static_cast<double>(diag.size()) - 1.0;
    for (auto &v : s.values)
        v = n1 / v;
    return s;
}

Scores electrical_closeness(const DiagEstimate &est) { return electrical_closeness(est.diag); }

Scores nrwb(std::span<const double> diag) {
    if (diag.size() < 2)
        throw std::domain_error("nrwb needs at least two vertices");
    const double n = static_cast<double>(diag.size());
    const double trace = std::accumulate(diag.begin(), diag.end(), 0.0);
    Scores s = electrical_farness(diag);
    s.kind = ScoreKind::nrwb;
    for (auto &v : s.values)
        v = 1.0 / n + trace / ((n - 1.0) * v);
    return s;
}

Scores nrwb(const DiagEstimate &est) { return nrwb(est.diag); }

double kirchhoff_index(std::span<const double> diag) {
    return static_cast<double>(diag.size()) * std::accumulate(diag.begin(), diag.end(), 0.0);
}

double kirchhoff_index(const DiagEstimate &est) { return kirchhoff_index(est.diag); }

std::uint64_t spanning_edge_sample_count(double eps, std::uint64_t m, double delta) {
    if (!(eps > 0.0))
        throw std::domain_error("eps must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("delta must lie in (0, 1)");
    if (m == 0)
        throw std::domain_error("graph has no edges");
    const double q = std::ceil(2.0 / (eps * eps) * std::log(2.0 * static_cast<double>(m) / delta));
    if (!(q < 0x1.0p63))
        throw std::domain_error("spanning-edge sample count overflows");
    return static_cast<std::uint64_t>(q);
}

namespace {

struct EdgeWorker {
    std::optional<WilsonSampler> plain;
    std::optional<BccWilsonSampler> bcc;
    SpanningTree tree;
    std::vector<double> counts;
};

} // namespace

Scores spanning_edge_resistance(const Graph &g, const EdgeSamplingParams &params) {
    if (g.n() < 2 || !is_connected(g))
        throw std::domain_error("spanning_edge_resistance needs a connected graph with n >= 2");
    const double delta = params.delta.value_or(1.0 / static_cast<double>(g.n()));
    const std::uint64_t q =
        params.trees_override ? *params.trees_override : spanning_edge_sample_count(params.eps, g.m(), delta);
    const int threads = resolve_threads(params.threads);

    EdgeWorker prototype;
    if (params.use_bcc)
        prototype.bcc.emplace(g, biconnected_components(g));
    else
        prototype.plain.emplace(g);
    prototype.counts.assign(g.m(), 0.0);
    std::vector<EdgeWorker> workers(static_cast<std::size_t>(threads), prototype);
    std::vector<double> counts(g.m(), 0.0);

    constexpr node root = 0;
    ordered_chunks(
        q, 16, threads,
        [&](std::size_t slot, std::size_t begin, std::size_t end) {
            auto &w = workers[slot];
            for (std::size_t i = begin; i < end; ++i) {
                Pcg32 rng(params.seed, i);
                if (w.bcc)
                    w.bcc->sample(root, rng, w.tree);
                else
                    w.plain->sample(root, rng, w.tree);
                for (node v = 0; v < g.n(); ++v)
                    if (v != root)
                        w.counts[*g.find_edge(v, w.tree.parent[v])] += 1.0;
            }
        },
        [&](std::size_t slot) {
            auto &local = workers[slot].counts;
            for (edgeid e = 0; e < g.m(); ++e)
                counts[e] += local[e];
            std::fill(local.begin(), local.end(), 0.0);
        });

    Scores s;
    s.kind = ScoreKind::spanning_edge_resistance;
    s.trees = q;
    s.values.resize(g.m());
    for (edgeid e = 0; e < g.m(); ++e)
        s.values[e] = q ? counts[e] / static_cast<double>(q) / g.edge_weight(e) : 0.0;
    return s;
}

Scores kirchhoff_edge_centrality(const Graph &g, const KirchhoffEdgeParams &params) {
    if (!(params.theta > 0.0 && params.theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    if (!(params.eps > 0.0))
        throw std::domain_error("eps must be positive");
    if (g.n() < 2 || !is_connected(g))
        throw std::domain_error("kirchhoff_edge_centrality needs a connected graph with n >= 2");
    const node n = g.n();
    const edgeid m = g.m();
    const double theta = params.theta;

    Scores s;
    s.kind = ScoreKind::kirchhoff_edge;
    std::vector<double> numerator(m, 0.0);
    std::vector<double> resistance(m, 0.0);

    if (params.oracle) {
        const DensePinv pinv(g);
        const auto &P = pinv.matrix();
        for (edgeid e = 0; e < m; ++e) {
            const auto [a, b] = g.edge(e);
            numerator[e] = (P.col(a) - P.col(b)).squaredNorm();
            resistance[e] = pinv.resistance(a, b);
        }
    } else {
        EdgeSamplingParams sampling;
        sampling.eps = params.eps;
        sampling.delta = params.delta;
        sampling.seed = params.seed;
        sampling.threads = params.threads;
        const Scores r = spanning_edge_resistance(g, sampling);
        resistance = r.values;
        s.trees = r.trees;

        const std::uint64_t probes =
            params.num_hutchinson
                ? params.num_hutchinson
                : static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(n)) / (params.eps * params.eps)));
        s.probes = probes;
        const int threads = resolve_threads(params.threads);
        std::vector<std::vector<double>> local(static_cast<std::size_t>(threads), std::vector<double>(m, 0.0));
        SolverConfig config;
        config.tolerance = params.eps / 10.0;
        // Probe streams sit far above the spanning-tree streams.
        constexpr std::uint64_t probe_stream = 1ull << 40;

        ordered_chunks(
            probes, 1, threads,
            [&](std::size_t slot, std::size_t begin, std::size_t end) {
                std::vector<double> z(n);
                for (std::size_t k = begin; k < end; ++k) {
                    Pcg32 rng(params.seed, probe_stream + k);
                    for (auto &zi : z)
                        zi = (rng.next() & 1u) ? 1.0 : -1.0;
                    project_mean_zero(z);
                    const SolveResult y = cg_solve(g, z, config);
                    if (!y.converged)
                        throw SolverError("conjugate gradient failed on a Hutchinson probe (residual " +
                                          std::to_string(y.residual) + ")");
                    auto &acc = local[slot];
                    for (edgeid e = 0; e < m; ++e) {
                        const auto [a, b] = g.edge(e);
                        const double d = y.x[a] - y.x[b];
                        acc[e] += d * d;
                    }
                }
            },
            [&](std::size_t slot) {
                for (edgeid e = 0; e < m; ++e) {
                    numerator[e] += local[slot][e];
                    local[slot][e] = 0.0;
                }
            });
        for (auto &v : numerator)
            v /= static_cast<double>(probes);
    }

    s.values.resize(m);
    std::size_t clamped = 0;
    for (edgeid e = 0; e < m; ++e) {
        const double w = g.edge_weight(e);
        double denominator = 1.0 - (1.0 - theta) * w * resistance[e];
        if (denominator < theta / 2.0) {
            denominator = theta / 2.0;
            ++clamped;
        }
        s.values[e] = static_cast<double>(n) * (1.0 - theta) * w * numerator[e] / denominator;
    }
    if (clamped) {
        std::ostringstream msg;
        msg << clamped << " edge denominator(s) fell below theta/2 due to sampling noise and were clamped";
        s.warnings.push_back(msg.str());
    }
    return s;
}

} // namespace lapdiag
