#include "lapdiag/baselines.hpp"

#include "lapdiag/parallel.hpp"
#include "lapdiag/rng.hpp"
#include "lapdiag/solver.hpp"

#include <sstream>
#include <stdexcept>

namespace lapdiag {

std::string to_string(ProbeMethod method) { return method == ProbeMethod::random ? "random" : "hadamard"; }

ProbeMethod parse_probe_method(const std::string &name) {
    if (name == "random")
        return ProbeMethod::random;
    if (name == "hadamard")
        return ProbeMethod::hadamard;
    throw std::invalid_argument("unknown probe method '" + name + "'");
}

BaselineResult bekas_diag(const Graph &g, const BaselineConfig &config) {
    if (config.num_vectors < 1)
        throw std::invalid_argument("bekas_diag needs at least one probe vector");
    if (config.method == ProbeMethod::hadamard && config.num_vectors % 4 != 0)
        throw std::invalid_argument("Hadamard probing needs a multiple of four vectors, got " +
                                    std::to_string(config.num_vectors));
    if (g.n() < 2 || !is_connected(g))
        throw std::domain_error("bekas_diag needs a connected graph with n >= 2");

    const node n = g.n();
    const int threads = resolve_threads(config.threads);

    struct Local {
        std::vector<double> num, den;
        std::uint64_t iterations = 0;
    };
    std::vector<Local> locals(static_cast<std::size_t>(threads), Local{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});
    std::vector<double> num(n, 0.0), den(n, 0.0);
    std::uint64_t iterations = 0;

    SolverConfig solver;
    solver.tolerance = config.solver_tol;

    ordered_chunks(
        config.num_vectors, 1, threads,
        [&](std::size_t slot, std::size_t begin, std::size_t end) {
            std::vector<double> z(n), rhs(n);
            auto &acc = locals[slot];
            for (std::size_t k = begin; k < end; ++k) {
                if (config.method == ProbeMethod::random) {
                    Pcg32 rng(config.seed, k);
                    for (auto &zi : z)
                        zi = (rng.next() & 1u) ? 1.0 : -1.0;
                } else {
                    for (node i = 0; i < n; ++i)
                        z[i] = sylvester_entry(k, i);
                }
                rhs = z;
                project_mean_zero(rhs);
                const SolveResult y = cg_solve(g, rhs, solver);
                if (!y.converged)
                    throw SolverError("conjugate gradient failed on probe " + std::to_string(k) + " (residual " +
                                      std::to_string(y.residual) + ")");
                acc.iterations += y.iterations;
                for (node i = 0; i < n; ++i) {
                    acc.num[i] += z[i] * y.x[i];
                    acc.den[i] += z[i] * z[i];
                }
            }
        },
        [&](std::size_t slot) {
            auto &acc = locals[slot];
            for (node i = 0; i < n; ++i) {
                num[i] += acc.num[i];
                den[i] += acc.den[i];
                acc.num[i] = acc.den[i] = 0.0;
            }
            iterations += acc.iterations;
            acc.iterations = 0;
        });

    BaselineResult result;
    result.cg_iterations = iterations;
    result.diag.assign(n, 0.0);
    std::size_t zero = 0;
    for (node i = 0; i < n; ++i) {
        if (den[i] == 0.0)
            ++zero;
        else
            result.diag[i] = num[i] / den[i];
    }
    if (zero) {
        std::ostringstream msg;
        msg << zero << " diagonal entries had a zero probe denominator and were set to 0";
        result.warnings.push_back(msg.str());
    }
    return result;
}

} // namespace lapdiag
