#include "helpers.hpp"

#include "lapdiag/pivot.hpp"

#include <doctest.h>

using namespace lapdiag;
using namespace testing;

TEST_CASE("pivot on small graphs") {
    CHECK(select_pivot(s3()).vertex == 3);

    const Graph p5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const auto ecc = exact_ecc(p5);
    CHECK(ecc == std::vector<std::uint32_t>{4, 3, 2, 3, 4});
    CHECK(ecc[select_pivot(p5, 10, 42).vertex] <= 3);

    const auto k = select_pivot(k4());
    for (auto b : k.ecc_lower_bounds)
        CHECK(b == 1);
    CHECK(k.vertex == 0);
    CHECK(k.sweeps == 10);
}

TEST_CASE("bounds never exceed exact eccentricities") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = er(150, 0.045, seed);
        const auto ecc = exact_ecc(g);
        const auto pick = select_pivot(g, 10, seed);
        for (node v = 0; v < g.n(); ++v)
            CHECK(pick.ecc_lower_bounds[v] <= ecc[v]);
        const auto best = *std::min_element(pick.ecc_lower_bounds.begin(), pick.ecc_lower_bounds.end());
        CHECK(pick.ecc_lower_bounds[pick.vertex] == best);
    }
}

TEST_CASE("pivot is at least as central as the max-degree vertex on most ER graphs") {
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Graph g = er(120, 0.05, 1000 + seed);
        const auto ecc = exact_ecc(g);
        node hub = 0;
        for (node v = 1; v < g.n(); ++v)
            if (g.degree(v) > g.degree(hub))
                hub = v;
        if (ecc[select_pivot(g, 10, seed).vertex] <= ecc[hub])
            ++wins;
    }
    MESSAGE("pivot no worse than the hub on " << wins << " of 50 graphs");
    CHECK(wins >= 40);
}
