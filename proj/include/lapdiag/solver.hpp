#pragma once

#include "lapdiag/graph.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lapdiag {

/// Raised when an iterative solve fails to reach its tolerance where the caller needs it to.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Preconditioner { jacobi, none };

struct SolverConfig {
    /// Relative residual bound ||Lx - b||_2 / ||b||_2.
    double tolerance = 1e-9;
    /// 0 selects 20 * n.
    std::size_t max_iterations = 0;
    Preconditioner preconditioner = Preconditioner::jacobi;
};

struct SolveResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// y = L x with L = D - A (weighted).
void laplacian_matvec(const Graph &g, std::span<const double> x, std::span<double> y);
std::vector<double> laplacian_matvec(const Graph &g, std::span<const double> x);

/**
 * Conjugate gradient for L x = b on a connected graph. b must sum to zero;
 * iterates are kept orthogonal to the all-ones vector, so the result is the
 * minimum-norm solution L^+ b. Non-convergence is reported, not thrown.
 */
SolveResult cg_solve(const Graph &g, std::span<const double> b, const SolverConfig &config = {});

/// Column u of L^+ via L x = e_u - 1/n.
SolveResult solve_pivot_column(const Graph &g, node u, double tolerance);

/// Subtract the mean, in place.
void project_mean_zero(std::span<double> x);

} // namespace lapdiag
