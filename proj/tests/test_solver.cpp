#include "helpers.hpp"

#include "lapdiag/dense_oracle.hpp"
#include "lapdiag/solver.hpp"

#include <doctest.h>

using namespace lapdiag;
using namespace testing;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    Pcg32 rng(seed, 7);
    std::vector<double> x(n);
    for (auto &v : x)
        v = 2.0 * rng.uniform() - 1.0;
    return x;
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

void check_close(const std::vector<double> &got, const std::vector<double> &want, double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) <= tol);
}

} // namespace

TEST_CASE("laplacian matvec examples") {
    const Graph k2 = make(2, {{0, 1}});
    CHECK(laplacian_matvec(k2, std::vector<double>{1, 0}) == std::vector<double>{1, -1});
    const Graph w = make(3, {{0, 1}, {1, 2}}, {2.0, 3.0});
    CHECK(laplacian_matvec(w, std::vector<double>{1, 0, 0}) == std::vector<double>{2, -2, 0});
    const Graph g = er(50, 0.1, 1);
    for (double y : laplacian_matvec(g, std::vector<double>(g.n(), 1.0)))
        CHECK(y == 0.0);
    std::vector<double> short_x(3);
    std::vector<double> out(g.n());
    CHECK_THROWS(laplacian_matvec(g, short_x, out));
}

TEST_CASE("laplacian is symmetric and PSD") {
    const Graph g = with_random_weights(er(80, 0.08, 4), 4);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto x = random_vector(g.n(), 2 * s), y = random_vector(g.n(), 2 * s + 1);
        const double xly = dot(x, laplacian_matvec(g, y)), ylx = dot(y, laplacian_matvec(g, x));
        CHECK(std::abs(xly - ylx) <= 1e-10 * std::max(1.0, std::abs(xly)));
        CHECK(dot(x, laplacian_matvec(g, x)) >= 0.0);
    }
}

TEST_CASE("cg examples") {
    SolverConfig tight;
    tight.tolerance = 1e-12;
    const Graph k2 = make(2, {{0, 1}});
    const auto r = cg_solve(k2, std::vector<double>{0.5, -0.5}, tight);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(0.25));
    CHECK(r.x[1] == doctest::Approx(-0.25));

    const auto k = cg_solve(k3(), std::vector<double>{2.0 / 3, -1.0 / 3, -1.0 / 3}, tight);
    check_close(k.x, {2.0 / 9, -1.0 / 9, -1.0 / 9}, 1e-10);

    const auto p = cg_solve(p3(), std::vector<double>{2.0 / 3, -1.0 / 3, -1.0 / 3}, tight);
    check_close(p.x, {5.0 / 9, -1.0 / 9, -4.0 / 9}, 1e-10);

    CHECK_THROWS_AS(cg_solve(k3(), std::vector<double>{1, 0, 0}), std::domain_error);
}

TEST_CASE("pivot column") {
    check_close(solve_pivot_column(make(2, {{0, 1}}), 0, 1e-12).x, {0.25, -0.25}, 1e-10);
    check_close(solve_pivot_column(k3(), 0, 1e-12).x, {2.0 / 9, -1.0 / 9, -1.0 / 9}, 1e-10);
    check_close(solve_pivot_column(s3(), 3, 1e-12).x, {-1.0 / 16, -1.0 / 16, -1.0 / 16, 3.0 / 16}, 1e-10);
}

TEST_CASE("cg matches the dense oracle and keeps mean zero") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Graph g = er(160, 0.05, seed);
        if (seed % 2 == 0)
            g = with_random_weights(g, seed);
        const DensePinv pinv(g);
        for (node u : {node(0), node(g.n() / 2)}) {
            const auto r = solve_pivot_column(g, u, 1e-12);
            CHECK(r.converged);
            CHECK(r.residual <= 1e-12);
            double sum = 0.0, big = 0.0, err = 0.0;
            for (node v = 0; v < g.n(); ++v) {
                sum += r.x[v];
                big = std::max(big, std::abs(r.x[v]));
                err = std::max(err, std::abs(r.x[v] - pinv(v, u)));
            }
            CHECK(std::abs(sum) <= 1e-12 * g.n() * big);
            CHECK(err <= 1e-8);
        }
    }
}

TEST_CASE("cg reports non-convergence instead of throwing") {
    SolverConfig cfg;
    cfg.tolerance = 1e-14;
    cfg.max_iterations = 2;
    cfg.preconditioner = Preconditioner::none;
    const Graph g = make(40, [] {
        std::vector<std::pair<node, node>> e;
        for (node v = 0; v + 1 < 40; ++v)
            e.emplace_back(v, v + 1);
        return e;
    }());
    std::vector<double> b(40, 0.0);
    b[0] = 1.0;
    b[39] = -1.0;
    const auto r = cg_solve(g, b, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.residual > 1e-14);
}

TEST_CASE("dense oracle closed forms") {
    const DensePinv k(k3());
    for (double d : k.diag())
        CHECK(d == doctest::Approx(2.0 / 9).epsilon(1e-12));
    CHECK(k.trace() == doctest::Approx(2.0 / 3));

    const DensePinv p(p3());
    const auto pd = p.diag();
    CHECK(pd[0] == doctest::Approx(5.0 / 9));
    CHECK(pd[1] == doctest::Approx(2.0 / 9));
    CHECK(pd[2] == doctest::Approx(5.0 / 9));
    CHECK(p.trace() == doctest::Approx(4.0 / 3));

    const DensePinv s(s3());
    const auto sd = s.diag();
    for (int i = 0; i < 3; ++i)
        CHECK(sd[i] == doctest::Approx(11.0 / 16));
    CHECK(sd[3] == doctest::Approx(3.0 / 16));
    CHECK(s.trace() == doctest::Approx(36.0 / 16));
    double kirchhoff = 0.0;
    for (node a = 0; a < 4; ++a)
        for (node b = a + 1; b < 4; ++b)
            kirchhoff += s.resistance(a, b);
    CHECK(kirchhoff == doctest::Approx(9.0));
}

TEST_CASE("dense oracle identities and limits") {
    const Graph g = with_random_weights(er(90, 0.08, 6), 6);
    const DensePinv pinv(g);
    const Eigen::MatrixXd &P = pinv.matrix();
    CHECK(P.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
    const Eigen::MatrixXd L = dense_laplacian(g);
    CHECK((P * L * P - P).cwiseAbs().maxCoeff() <= 1e-7);

    CHECK_THROWS_AS(DensePinv(g, 10), std::length_error);
    CHECK_THROWS_AS(DensePinv(make(4, {{0, 1}, {2, 3}})), std::domain_error);
}
