#include "lapdiag/solver.hpp"

#include <cmath>
#include <numeric>

namespace lapdiag {

void laplacian_matvec(const Graph &g, std::span<const double> x, std::span<double> y) {
    const node n = g.n();
    if (x.size() != n || y.size() != n)
        throw std::invalid_argument("laplacian_matvec: dimension mismatch");
    const auto offsets = g.offsets();
    const auto adj = g.adjacency();
    const auto w = g.adjacency_weights();
    const bool weighted = g.weighted();
#pragma omp parallel for schedule(static) if (n > 50000)
    for (std::int64_t iv = 0; iv < static_cast<std::int64_t>(n); ++iv) {
        const auto v = static_cast<node>(iv);
        double acc = 0.0;
        if (weighted) {
            for (auto s = offsets[v]; s < offsets[v + 1]; ++s)
                acc += w[s] * x[adj[s]];
        } else {
            for (auto s = offsets[v]; s < offsets[v + 1]; ++s)
                acc += x[adj[s]];
        }
        y[v] = g.weighted_degree(v) * x[v] - acc;
    }
}

std::vector<double> laplacian_matvec(const Graph &g, std::span<const double> x) {
    std::vector<double> y(g.n());
    laplacian_matvec(g, x, y);
    return y;
}

void project_mean_zero(std::span<double> x) {
    if (x.empty())
        return;
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (auto &v : x)
        v -= mean;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

SolveResult cg_solve(const Graph &g, std::span<const double> b, const SolverConfig &config) {
    const node n = g.n();
    if (b.size() != n)
        throw std::invalid_argument("cg_solve: right-hand side has wrong dimension");
    if (!(config.tolerance > 0.0))
        throw std::invalid_argument("cg_solve: tolerance must be positive");

    const double bnorm = std::sqrt(dot(b, b));
    const double bsum = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(bsum) > 1e-9 * bnorm)
        throw std::domain_error("cg_solve: right-hand side is not orthogonal to the all-ones vector");

    SolveResult result;
    result.x.assign(n, 0.0);
    if (bnorm == 0.0) {
        result.converged = true;
        return result;
    }
    const std::size_t max_iter = config.max_iterations ? config.max_iterations : 20 * static_cast<std::size_t>(n);

    std::vector<double> inv_diag(n, 1.0);
    if (config.preconditioner == Preconditioner::jacobi)
        for (node v = 0; v < n; ++v)
            inv_diag[v] = g.weighted_degree(v) > 0.0 ? 1.0 / g.weighted_degree(v) : 1.0;

    auto &x = result.x;
    std::vector<double> r(b.begin(), b.end()), z(n), p(n), lp(n);

    // Restart from the true residual when the recursive one has drifted below tolerance.
    for (int restart = 0; restart < 4; ++restart) {
        for (node v = 0; v < n; ++v)
            z[v] = inv_diag[v] * r[v];
        p = z;
        double rz = dot(r, z);
        double res = std::sqrt(dot(r, r)) / bnorm;
        while (res > config.tolerance && result.iterations < max_iter) {
            laplacian_matvec(g, p, lp);
            const double curvature = dot(p, lp);
            if (!(curvature > 0.0))
                break;
            const double alpha = rz / curvature;
            for (node v = 0; v < n; ++v) {
                x[v] += alpha * p[v];
                r[v] -= alpha * lp[v];
            }
            project_mean_zero(x);
            ++result.iterations;
            res = std::sqrt(dot(r, r)) / bnorm;
            for (node v = 0; v < n; ++v)
                z[v] = inv_diag[v] * r[v];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (node v = 0; v < n; ++v)
                p[v] = z[v] + beta * p[v];
        }

        laplacian_matvec(g, x, lp);
        for (node v = 0; v < n; ++v)
            r[v] = b[v] - lp[v];
        result.residual = std::sqrt(dot(r, r)) / bnorm;
        if (result.residual <= config.tolerance || result.iterations >= max_iter)
            break;
    }
    project_mean_zero(x);
    result.converged = result.residual <= config.tolerance;
    return result;
}

SolveResult solve_pivot_column(const Graph &g, node u, double tolerance) {
    if (u >= g.n())
        throw std::out_of_range("pivot " + std::to_string(u) + " out of range");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("solve_pivot_column: tolerance must be positive");
    std::vector<double> b(g.n(), -1.0 / static_cast<double>(g.n()));
    b[u] += 1.0;
    SolverConfig config;
    config.tolerance = tolerance;
    return cg_solve(g, b, config);
}

} // namespace lapdiag
