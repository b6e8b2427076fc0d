#include "lapdiag/dense_oracle.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lapdiag {

std::size_t default_oracle_limit() {
    if (const char *env = std::getenv("LAPDIAG_ORACLE_LIMIT")) {
        char *end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0')
            return value;
    }
    return 4000;
}

Eigen::MatrixXd dense_laplacian(const Graph &g) {
    const auto n = static_cast<Eigen::Index>(g.n());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        const double w = g.edge_weight(e);
        lap(u, u) += w;
        lap(v, v) += w;
        lap(u, v) -= w;
        lap(v, u) -= w;
    }
    return lap;
}

DensePinv::DensePinv(const Graph &g, std::size_t limit) {
    if (g.n() > limit)
        throw std::length_error("dense oracle limited to " + std::to_string(limit) + " vertices, graph has " +
                                std::to_string(g.n()));
    if (g.n() == 0 || !is_connected(g))
        throw std::domain_error("dense oracle needs a connected graph");
    const auto n = static_cast<Eigen::Index>(g.n());
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::MatrixXd shifted = dense_laplacian(g).array() + inv_n;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("Cholesky factorization of L + J/n failed");
    pinv_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
    pinv_.array() -= inv_n;
    pinv_ = 0.5 * (pinv_ + pinv_.transpose()).eval();
}

std::vector<double> DensePinv::diag() const {
    std::vector<double> d(static_cast<std::size_t>(pinv_.rows()));
    for (Eigen::Index i = 0; i < pinv_.rows(); ++i)
        d[static_cast<std::size_t>(i)] = pinv_(i, i);
    return d;
}

} // namespace lapdiag
