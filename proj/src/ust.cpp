#include "lapdiag/ust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lapdiag {

void SpanningTree::rebuild_children() {
    const auto n = static_cast<node>(parent.size());
    first_child.assign(n, none);
    next_sibling.assign(n, none);
    for (node v = n; v-- > 0;) {
        const node p = parent[v];
        if (p == none)
            continue;
        next_sibling[v] = first_child[p];
        first_child[p] = v;
    }
}

WilsonSampler::WilsonSampler(const Graph &g)
    : g_(&g), in_tree_(g.n(), 0), next_slot_(g.n(), 0), connected_(g.n() == 0 || is_connected(g)) {
    if (!g.uniform_weights()) {
        const auto w = g.adjacency_weights();
        auto cumulative = std::make_shared<std::vector<double>>(w.size());
        for (node v = 0; v < g.n(); ++v) {
            double acc = 0.0;
            for (auto s = g.offsets()[v]; s < g.offsets()[v + 1]; ++s) {
                acc += w[s];
                (*cumulative)[s] = acc;
            }
        }
        cumulative_ = std::move(cumulative);
    }
}

node WilsonSampler::step(node v, Pcg32 &rng, std::uint64_t &slot) {
    const auto begin = g_->offsets()[v];
    const auto end = g_->offsets()[v + 1];
    if (!cumulative_) {
        slot = begin + rng.bounded(static_cast<std::uint32_t>(end - begin));
    } else {
        const auto &cum = *cumulative_;
        const double target = rng.uniform() * cum[end - 1];
        const auto it = std::upper_bound(cum.begin() + static_cast<std::ptrdiff_t>(begin),
                                         cum.begin() + static_cast<std::ptrdiff_t>(end), target);
        slot = std::min<std::uint64_t>(static_cast<std::uint64_t>(it - cum.begin()), end - 1);
    }
    return g_->adjacency()[slot];
}

void WilsonSampler::sample(node root, Pcg32 &rng, SpanningTree &tree) {
    const Graph &g = *g_;
    const node n = g.n();
    if (root >= n)
        throw std::out_of_range("Wilson root out of range");
    if (!connected_)
        throw std::domain_error("Wilson's algorithm needs a connected graph");

    std::fill(in_tree_.begin(), in_tree_.end(), 0);
    in_tree_[root] = 1;
    tree.root = root;
    tree.parent.assign(n, none);
    steps_ = 0;

    const auto adj = g.adjacency();
    for (node start = 0; start < n; ++start) {
        // Walk until the current tree is hit; overwriting next_slot_ erases loops.
        node v = start;
        while (!in_tree_[v]) {
            v = step(v, rng, next_slot_[v]);
            ++steps_;
        }
        v = start;
        while (!in_tree_[v]) {
            in_tree_[v] = 1;
            const node p = adj[next_slot_[v]];
            tree.parent[v] = p;
            v = p;
        }
    }

    tree.log_weight = 0.0;
    if (g.weighted()) {
        const auto w = g.adjacency_weights();
        for (node v = 0; v < n; ++v)
            if (v != root)
                tree.log_weight += std::log(w[next_slot_[v]]);
    }
    tree.rebuild_children();
}

SpanningTree wilson_sample(const Graph &g, node root, Pcg32 &rng) {
    WilsonSampler sampler(g);
    SpanningTree tree;
    sampler.sample(root, rng, tree);
    return tree;
}

BccWilsonSampler::BccWilsonSampler(const Graph &g, const BccDecomposition &bcc) : g_(&g) {
    if (bcc.component_of_edge.size() != g.m())
        throw std::invalid_argument("biconnected decomposition does not match the graph");
    std::vector<node> local(g.n(), none);
    auto components = std::make_shared<std::vector<Component>>();
    components->reserve(bcc.components.size());
    for (const auto &comp : bcc.components) {
        Component c;
        c.to_global = comp.vertices;
        for (node i = 0; i < c.to_global.size(); ++i)
            local[c.to_global[i]] = i;
        std::vector<std::pair<node, node>> edges;
        std::vector<double> weights;
        edges.reserve(comp.edges.size());
        for (edgeid e : comp.edges) {
            const auto [a, b] = g.edge(e);
            edges.emplace_back(local[a], local[b]);
            if (g.weighted())
                weights.push_back(g.edge_weight(e));
        }
        c.sub = Graph::from_edges(static_cast<node>(c.to_global.size()), edges, weights);
        std::size_t best = 0;
        for (node i = 0; i < c.sub.n(); ++i)
            if (c.sub.degree(i) > best) {
                best = c.sub.degree(i);
                c.local_root = i;
            }
        for (node v : c.to_global)
            local[v] = none;
        components->push_back(std::move(c));
    }
    components_ = std::move(components);
    samplers_.reserve(components_->size());
    for (const auto &c : *components_)
        samplers_.emplace_back(c.sub);
    head_.assign(g.n(), 0);
    link_.reserve(2 * g.n());
    target_.reserve(2 * g.n());
}

void BccWilsonSampler::sample(node root, Pcg32 &rng, SpanningTree &tree) {
    const Graph &g = *g_;
    const node n = g.n();
    if (root >= n)
        throw std::out_of_range("Wilson root out of range");

    constexpr auto nil = std::numeric_limits<std::uint64_t>::max();
    std::fill(head_.begin(), head_.end(), nil);
    link_.clear();
    target_.clear();
    const auto add_arc = [&](node a, node b) {
        target_.push_back(b);
        link_.push_back(head_[a]);
        head_[a] = target_.size() - 1;
    };

    steps_ = 0;
    tree.log_weight = 0.0;
    for (std::size_t c = 0; c < components_->size(); ++c) {
        const auto &comp = (*components_)[c];
        samplers_[c].sample(comp.local_root, rng, local_);
        steps_ += samplers_[c].last_walk_steps();
        tree.log_weight += local_.log_weight;
        for (node i = 0; i < comp.sub.n(); ++i) {
            const node p = local_.parent[i];
            if (p == none)
                continue;
            add_arc(comp.to_global[i], comp.to_global[p]);
            add_arc(comp.to_global[p], comp.to_global[i]);
        }
    }
    if (target_.size() != 2 * static_cast<std::size_t>(n - 1))
        throw std::domain_error("biconnected components do not span the graph");

    // Orient the stitched edges away from the requested root.
    tree.root = root;
    tree.parent.assign(n, none);
    stack_.clear();
    stack_.push_back(root);
    std::size_t reached = 1;
    while (!stack_.empty()) {
        const node v = stack_.back();
        stack_.pop_back();
        for (auto a = head_[v]; a != nil; a = link_[a]) {
            const node w = target_[a];
            if (w == root || tree.parent[w] != none)
                continue;
            tree.parent[w] = v;
            ++reached;
            stack_.push_back(w);
        }
    }
    if (reached != n)
        throw std::domain_error("stitched spanning tree is disconnected");
    tree.rebuild_children();
}

SpanningTree wilson_sample_bcc(const Graph &g, const BccDecomposition &bcc, node root, Pcg32 &rng) {
    BccWilsonSampler sampler(g, bcc);
    SpanningTree tree;
    sampler.sample(root, rng, tree);
    return tree;
}

void dfs_timestamps(const SpanningTree &tree, DfsTimestamps &out) {
    const auto n = tree.parent.size();
    out.alpha.assign(n, 0);
    out.omega.assign(n, 0);
    if (n == 0)
        return;
    std::uint32_t discover = 0, finish = 0;
    node cur = tree.root;
    out.alpha[cur] = discover++;
    for (;;) {
        if (tree.first_child[cur] != none) {
            cur = tree.first_child[cur];
            out.alpha[cur] = discover++;
            continue;
        }
        for (;;) {
            out.omega[cur] = finish++;
            if (cur == tree.root)
                return;
            if (tree.next_sibling[cur] != none) {
                cur = tree.next_sibling[cur];
                out.alpha[cur] = discover++;
                break;
            }
            cur = tree.parent[cur];
        }
    }
}

DfsTimestamps dfs_timestamps(const SpanningTree &tree) {
    DfsTimestamps ts;
    dfs_timestamps(tree, ts);
    return ts;
}

} // namespace lapdiag
