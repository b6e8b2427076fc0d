#pragma once

#include "lapdiag/graph.hpp"

#include <Eigen/Dense>

#include <vector>

namespace lapdiag {

/// Size cap for dense oracles; LAPDIAG_ORACLE_LIMIT overrides the default of 4000.
std::size_t default_oracle_limit();

Eigen::MatrixXd dense_laplacian(const Graph &g);

/**
 * Exact L^+ = (L + J/n)^{-1} - J/n by dense Cholesky. Meant as a test and
 * quality oracle on small graphs.
 */
class DensePinv {
public:
    explicit DensePinv(const Graph &g, std::size_t limit = default_oracle_limit());

    const Eigen::MatrixXd &matrix() const noexcept { return pinv_; }
    double operator()(node i, node j) const { return pinv_(i, j); }
    std::vector<double> diag() const;
    double trace() const { return pinv_.trace(); }
    double resistance(node u, node v) const { return pinv_(u, u) + pinv_(v, v) - 2.0 * pinv_(u, v); }

private:
    Eigen::MatrixXd pinv_;
};

} // namespace lapdiag
