#include "helpers.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace lapdiag;
using namespace testing;

namespace {

Graph parse(const std::string &text, bool weighted = false, LoadStats *stats = nullptr) {
    std::istringstream in(text);
    return load_edge_list(in, weighted, stats);
}

} // namespace

TEST_CASE("edge list: two-edge path") {
    const Graph g = parse("0 1\n1 2\n");
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.find_edge(0, 2) == std::nullopt);
}

TEST_CASE("edge list: duplicates are dropped and counted") {
    LoadStats stats;
    const Graph g = parse("0 1\n0 1\n1 0\n", false, &stats);
    CHECK(g.n() == 2);
    CHECK(g.m() == 1);
    CHECK(stats.duplicates == 2);
}

TEST_CASE("edge list: malformed token names the line") {
    try {
        parse("a b\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse("% header\n0 1\n1 x\n"), ParseError);
}

TEST_CASE("edge list: comments, sparse ids, self-loops, weights") {
    LoadStats stats;
    const Graph g = parse("% konect\n# snap\n10 20 2.5\n20 20 1\n20 7 0.5\n", true, &stats);
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    CHECK(stats.self_loops == 1);
    CHECK(g.vertex_labels()[0] == 10);
    CHECK(g.vertex_labels()[2] == 7);
    CHECK(g.edge_weight(*g.find_edge(0, 1)) == doctest::Approx(2.5));
    CHECK(g.weighted_degree(1) == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse("0 1 0\n", true), std::domain_error);
    CHECK_THROWS_AS(parse("0 1 -2\n", true), std::domain_error);
    CHECK_THROWS_AS(parse("% nothing\n"), std::domain_error);
}

TEST_CASE("CSR invariants") {
    const Graph g = er(60, 0.1, 3);
    CHECK(g.offsets().back() == 2 * g.m());
    std::uint64_t total = 0;
    for (node v = 0; v < g.n(); ++v) {
        total += g.degree(v);
        for (node w : g.neighbors(v)) {
            CHECK(w != v);
            CHECK(g.find_edge(w, v).has_value());
        }
    }
    CHECK(total == 2 * g.m());
    CHECK_THROWS(Graph::from_edges(3, std::vector<std::pair<node, node>>{{0, 1}, {1, 0}}));
    CHECK_THROWS(Graph::from_edges(3, std::vector<std::pair<node, node>>{{1, 1}}));
}

TEST_CASE("text and binary round trips") {
    const Graph g = with_random_weights(er(40, 0.15, 5), 5);
    std::stringstream text;
    write_edge_list(text, g);
    const Graph back = load_edge_list(text, true);
    REQUIRE(back.n() == g.n());
    REQUIRE(back.m() == g.m());
    const auto labels = back.vertex_labels();
    for (edgeid e = 0; e < back.m(); ++e) {
        const auto [a, b] = back.edge(e);
        const auto orig = g.find_edge(static_cast<node>(labels[a]), static_cast<node>(labels[b]));
        REQUIRE(orig.has_value());
        CHECK(back.edge_weight(e) == g.edge_weight(*orig));
    }

    std::stringstream bin;
    write_binary(bin, g);
    const Graph b2 = read_binary(bin);
    CHECK(b2.n() == g.n());
    CHECK(std::equal(b2.adjacency().begin(), b2.adjacency().end(), g.adjacency().begin()));
    CHECK(std::equal(b2.adjacency_weights().begin(), b2.adjacency_weights().end(), g.adjacency_weights().begin()));
    std::stringstream junk("LDG0xxxxxxxx");
    CHECK_THROWS(read_binary(junk));
}

TEST_CASE("largest connected component") {
    {
        const Graph g = make(4, {{0, 1}, {1, 2}});
        const auto lcc = largest_connected_component(g);
        CHECK(lcc.graph.n() == 3);
        CHECK(lcc.old_to_new[3] == none);
        CHECK(is_connected(lcc.graph));
    }
    {
        const Graph g = make(4, {{2, 3}, {0, 1}});
        const auto lcc = largest_connected_component(g);
        CHECK(lcc.graph.n() == 2);
        CHECK(lcc.old_to_new[0] != none);
        CHECK(lcc.old_to_new[2] == none);
    }
    {
        const Graph g = k4();
        const auto lcc = largest_connected_component(g);
        CHECK(lcc.graph.m() == 6);
        CHECK(std::equal(lcc.graph.adjacency().begin(), lcc.graph.adjacency().end(), g.adjacency().begin()));
    }
}

TEST_CASE("bfs trees") {
    const BfsTree a = bfs_tree(p3(), 0);
    CHECK(a.depth == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(a.ecc_root == 2);
    CHECK(bfs_tree(k3(), 0).depth == std::vector<std::uint32_t>{0, 1, 1});
    CHECK(bfs_tree(s3(), 3).ecc_root == 1);
    CHECK(bfs_tree(s3(), 0).ecc_root == 2);
    CHECK_THROWS_AS(bfs_tree(p3(), 7), std::out_of_range);

    const Graph g = er(80, 0.08, 11);
    const BfsTree t = bfs_tree(g, 5);
    for (node v = 0; v < g.n(); ++v) {
        if (v != 5) {
            CHECK(t.depth[v] == t.depth[t.parent[v]] + 1);
            CHECK(g.find_edge(v, t.parent[v]).has_value());
        }
        for (node w : g.neighbors(v))
            CHECK(std::abs(int(t.depth[v]) - int(t.depth[w])) <= 1);
    }
    CHECK(t.ecc_root == *std::max_element(t.depth.begin(), t.depth.end()));
}

TEST_CASE("biconnected components") {
    {
        const auto b = biconnected_components(p3());
        CHECK(b.components.size() == 2);
        CHECK(b.articulation_points == std::vector<node>{1});
    }
    {
        const auto b = biconnected_components(k4());
        CHECK(b.components.size() == 1);
        CHECK(b.articulation_points.empty());
    }
    {
        const auto b = biconnected_components(bowtie());
        CHECK(b.components.size() == 2);
        CHECK(b.articulation_points == std::vector<node>{2});
    }
    // Edge partition and bridges on a random sparse graph.
    const Graph g = er(120, 0.045, 2);
    const auto b = biconnected_components(g);
    std::vector<int> seen(g.m(), 0);
    std::set<node> covered;
    for (const auto &c : b.components) {
        for (edgeid e : c.edges)
            ++seen[e];
        covered.insert(c.vertices.begin(), c.vertices.end());
        if (c.edges.size() == 1)
            CHECK(c.vertices.size() == 2);
    }
    for (edgeid e = 0; e < g.m(); ++e) {
        CHECK(seen[e] == 1);
        CHECK(b.components[b.component_of_edge[e]].edges.size() >= 1);
    }
    CHECK(covered.size() == g.n());
    // Removing an articulation point disconnects the graph.
    for (node x : b.articulation_points) {
        std::vector<std::pair<node, node>> rest;
        for (auto [u, v] : g.edges())
            if (u != x && v != x)
                rest.emplace_back(u < x ? u : u - 1, v < x ? v : v - 1);
        CHECK_FALSE(is_connected(Graph::from_edges(g.n() - 1, rest)));
    }
}

TEST_CASE("volume") {
    CHECK(volume(k3()) == 6.0);
    CHECK(volume(make(3, {{0, 1}, {1, 2}}, {2.0, 3.0})) == 10.0);
    CHECK(volume(make(2, {{0, 1}})) == 2.0);
}

TEST_CASE("generators") {
    GeneratorParams gp;
    gp.family = GraphFamily::complete;
    gp.n = 4;
    CHECK(generate_test_graph(gp).m() == 6);
    gp.family = GraphFamily::path;
    gp.n = 3;
    const Graph p = generate_test_graph(gp);
    CHECK(p.m() == 2);
    CHECK(p.degree(1) == 2);

    const Graph a = er(20, 0.5, 1), b = er(20, 0.5, 1);
    CHECK(std::equal(a.adjacency().begin(), a.adjacency().end(), b.adjacency().begin(), b.adjacency().end()));
    CHECK(is_connected(a));

    gp.family = GraphFamily::watts_strogatz;
    gp.n = 50;
    gp.k = 4;
    gp.beta = 0.2;
    CHECK(is_connected(generate_test_graph(gp)));
    gp.n = 1;
    CHECK_THROWS(generate_test_graph(gp));
    CHECK(parse_family("erdos_renyi") == GraphFamily::erdos_renyi);
    CHECK_THROWS(parse_family("hypercube"));
}
