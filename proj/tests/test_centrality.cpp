#include "helpers.hpp"

#include "lapdiag/centrality.hpp"
#include "lapdiag/dense_oracle.hpp"

#include <Eigen/LU>
#include <doctest.h>

using namespace lapdiag;
using namespace testing;

namespace {

// Random-walk betweenness straight from M = L + J/n, summing numerator and
// denominator over t separately.
std::vector<double> nrwb_from_m(const Graph &g) {
    const auto n = static_cast<Eigen::Index>(g.n());
    const Eigen::MatrixXd M = dense_laplacian(g) + Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const Eigen::MatrixXd Mi = M.partialPivLu().inverse();
    std::vector<double> out(g.n());
    for (Eigen::Index v = 0; v < n; ++v) {
        double num = 0.0, den = 0.0;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (t == v)
                continue;
            num += Mi(t, t) - Mi(t, v);
            den += Mi(t, t) + Mi(v, v) - 2 * Mi(t, v);
        }
        out[v] = 1.0 / n + num / ((n - 1) * den);
    }
    return out;
}

std::vector<double> all(double x, std::size_t n) { return std::vector<double>(n, x); }

void check_vec(const std::vector<double> &got, const std::vector<double> &want, double tol = 1e-12) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) <= tol);
}

} // namespace

TEST_CASE("vertex measures on closed-form graphs") {
    const auto k = DensePinv(k3()).diag();
    check_vec(electrical_farness(k).values, all(4.0 / 3, 3));
    check_vec(electrical_closeness(k).values, all(1.5, 3));
    check_vec(nrwb(k).values, all(7.0 / 12, 3));
    CHECK(kirchhoff_index(k) == doctest::Approx(2.0));

    const auto p = DensePinv(p3()).diag();
    check_vec(electrical_farness(p).values, {3, 2, 3});
    check_vec(electrical_closeness(p).values, {2.0 / 3, 1, 2.0 / 3});
    check_vec(nrwb(p).values, {5.0 / 9, 2.0 / 3, 5.0 / 9});
    CHECK(kirchhoff_index(p) == doctest::Approx(4.0));

    const auto s = DensePinv(s3()).diag();
    check_vec(electrical_farness(s).values, {5, 5, 5, 3});
    check_vec(electrical_closeness(s).values, {0.6, 0.6, 0.6, 1});
    CHECK(kirchhoff_index(s) == doctest::Approx(9.0));

    const auto c = DensePinv(make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})).diag();
    const auto cb = nrwb(c).values;
    for (double x : cb)
        CHECK(x == doctest::Approx(cb[0]));
    CHECK_THROWS(nrwb(std::vector<double>{1.0}));
}

TEST_CASE("closeness equals the resistance-sum definition") {
    const Graph g = with_random_weights(er(90, 0.08, 3), 3);
    const DensePinv pinv(g);
    const auto c = electrical_closeness(pinv.diag()).values;
    const auto f = electrical_farness(pinv.diag()).values;
    for (node v = 0; v < g.n(); ++v) {
        double sum = 0.0;
        for (node w = 0; w < g.n(); ++w)
            sum += pinv.resistance(v, w);
        CHECK(std::abs(c[v] - (g.n() - 1) / sum) <= 1e-9);
        CHECK(f[v] > 0);
    }
}

TEST_CASE("nrwb from the diagonal matches the M-inverse form") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const node n = 20 + static_cast<node>(seed * 6);
        Graph g = er(n, std::min(1.0, 6.0 / n), seed);
        if (seed % 3 == 0)
            g = with_random_weights(g, seed);
        const auto from_diag = nrwb(DensePinv(g).diag()).values;
        const auto direct = nrwb_from_m(g);
        double err = 0.0;
        for (node v = 0; v < g.n(); ++v) {
            err = std::max(err, std::abs(from_diag[v] - direct[v]));
            CHECK(from_diag[v] > 1.0 / g.n());
        }
        CHECK(err <= 1e-9);
    }
}

TEST_CASE("kirchhoff index equals the pairwise resistance sum") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Graph g = with_random_weights(er(60, 0.1, seed), seed);
        const DensePinv pinv(g);
        double brute = 0.0;
        for (node a = 0; a < g.n(); ++a)
            for (node b = a + 1; b < g.n(); ++b)
                brute += pinv.resistance(a, b);
        CHECK(std::abs(kirchhoff_index(pinv.diag()) - brute) <= 1e-8 * std::max(1.0, brute));
    }
}

TEST_CASE("spanning-edge sample count") {
    CHECK(spanning_edge_sample_count(0.1, 3, 0.1) == static_cast<std::uint64_t>(std::ceil(200 * std::log(60.0))));
    CHECK_THROWS(spanning_edge_sample_count(0.0, 3, 0.1));
    CHECK_THROWS(spanning_edge_sample_count(0.1, 3, 1.5));
}

TEST_CASE("spanning-edge resistance") {
    EdgeSamplingParams p;
    p.eps = 0.05;
    p.threads = 1;
    for (double r : spanning_edge_resistance(k3(), p).values)
        CHECK(std::abs(r - 2.0 / 3) <= 0.05);
    for (double r : spanning_edge_resistance(k4(), p).values)
        CHECK(std::abs(r - 0.5) <= 0.05);

    const Graph tree = make(4, {{0, 1}, {1, 2}, {1, 3}}, {2.0, 0.5, 4.0});
    const auto t = spanning_edge_resistance(tree, p);
    for (edgeid e = 0; e < tree.m(); ++e)
        CHECK(t.values[e] == doctest::Approx(1.0 / tree.edge_weight(e)));
}

TEST_CASE("spanning-edge resistance: Foster's theorem and oracle agreement") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = with_random_weights(er(50, 0.12, seed), seed);
        EdgeSamplingParams p;
        p.eps = 0.1;
        p.seed = seed;
        const Scores s = spanning_edge_resistance(g, p);
        double foster = 0.0;
        for (edgeid e = 0; e < g.m(); ++e)
            foster += g.edge_weight(e) * s.values[e];
        CHECK(std::abs(foster - (g.n() - 1)) <= 1e-9 * g.n());

        const DensePinv pinv(g);
        std::size_t bad = 0;
        for (edgeid e = 0; e < g.m(); ++e) {
            const auto [a, b] = g.edge(e);
            bad += std::abs(g.edge_weight(e) * (s.values[e] - pinv.resistance(a, b))) > p.eps;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("spanning-edge resistance is thread-count independent") {
    const Graph g = er(80, 0.08, 4);
    EdgeSamplingParams p;
    p.eps = 0.2;
    p.threads = 1;
    const auto one = spanning_edge_resistance(g, p).values;
    for (int t : {2, 8}) {
        p.threads = t;
        CHECK(spanning_edge_resistance(g, p).values == one);
    }
}

TEST_CASE("kirchhoff edge centrality: P3 closed form") {
    for (double theta : {0.25, 0.5, 0.75}) {
        KirchhoffEdgeParams p;
        p.theta = theta;
        p.oracle = true;
        const Scores s = kirchhoff_edge_centrality(p3(), p);
        for (double c : s.values)
            CHECK(c == doctest::Approx(2 * (1 - theta) / theta));
    }
    KirchhoffEdgeParams near_one;
    near_one.theta = 1 - 1e-9;
    near_one.oracle = true;
    CHECK(kirchhoff_edge_centrality(p3(), near_one).values[0] < 1e-7);

    KirchhoffEdgeParams k;
    k.oracle = true;
    const auto kv = kirchhoff_edge_centrality(k3(), k).values;
    CHECK(kv[1] == doctest::Approx(kv[0]));
    CHECK(kv[2] == doctest::Approx(kv[0]));

    KirchhoffEdgeParams bad;
    bad.theta = 1.0;
    CHECK_THROWS_AS(kirchhoff_edge_centrality(p3(), bad), std::invalid_argument);
}

TEST_CASE("kirchhoff edge centrality matches two dense oracles") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = with_random_weights(er(40 + 10 * static_cast<node>(seed), 0.12, seed), seed);
        const double base = DensePinv(g).trace();
        for (double theta : {0.25, 0.5, 0.75}) {
            KirchhoffEdgeParams p;
            p.theta = theta;
            p.oracle = true;
            const auto c = kirchhoff_edge_centrality(g, p).values;
            for (edgeid e = 0; e < g.m(); e += 7) {
                std::vector<double> w(g.m());
                for (edgeid f = 0; f < g.m(); ++f)
                    w[f] = g.edge_weight(f);
                w[e] *= theta;
                const double want = g.n() * (DensePinv(g.with_weights(w)).trace() - base);
                CHECK(std::abs(c[e] - want) <= 1e-6 * std::abs(want));
            }
        }
    }
}

TEST_CASE("kirchhoff edge centrality by sampling tracks the oracle") {
    const Graph g = er(50, 0.12, 6);
    KirchhoffEdgeParams exact;
    exact.oracle = true;
    const auto want = kirchhoff_edge_centrality(g, exact).values;
    KirchhoffEdgeParams p;
    p.eps = 0.1;
    p.seed = 3;
    const Scores s = kirchhoff_edge_centrality(g, p);
    CHECK(s.probes == static_cast<std::uint64_t>(std::ceil(std::log(50.0) / 0.01)));
    double rel = 0.0;
    for (edgeid e = 0; e < g.m(); ++e)
        rel += std::abs(s.values[e] - want[e]) / want[e];
    rel /= static_cast<double>(g.m());
    MESSAGE("mean relative error " << rel);
    CHECK(rel <= 0.2);
}
