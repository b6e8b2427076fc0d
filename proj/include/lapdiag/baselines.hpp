#pragma once

#include "lapdiag/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lapdiag {

enum class ProbeMethod { random, hadamard };

std::string to_string(ProbeMethod method);
ProbeMethod parse_probe_method(const std::string &name);

struct BaselineConfig {
    ProbeMethod method = ProbeMethod::random;
    /// Must be a multiple of four for Hadamard probing.
    std::uint64_t num_vectors = 100;
    double solver_tol = 1e-6;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct BaselineResult {
    std::vector<double> diag;
    std::vector<std::string> warnings;
    std::uint64_t cg_iterations = 0;
};

/// Entry (row, col) of the Sylvester Hadamard matrix of any power-of-two order.
inline double sylvester_entry(std::uint64_t row, std::uint64_t col) {
    return (__builtin_popcountll(row & col) & 1) ? -1.0 : 1.0;
}

/**
 * Stochastic diagonal estimate of L^+:
 *   diag ~ (sum_k z_k .* y_k) ./ (sum_k z_k .* z_k),  L y_k = z_k - mean(z_k).
 * Probes are Rademacher vectors or the first num_vectors rows of the
 * Sylvester Hadamard matrix of order next_pow2(max(n, num_vectors)),
 * truncated to n columns. Since L^+ annihilates the all-ones vector, the
 * centered right-hand side gives y_k = L^+ z_k exactly.
 */
BaselineResult bekas_diag(const Graph &g, const BaselineConfig &config);

} // namespace lapdiag
