#include "lapdiag/graph.hpp"

#include "lapdiag/rng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stack>
#include <unordered_map>
#include <unordered_set>

namespace lapdiag {

namespace {

std::uint64_t pair_key(node a, node b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32u) | b;
}

} // namespace

Graph Graph::from_edges(node n, std::span<const std::pair<node, node>> edges,
                        std::span<const double> weights, std::vector<std::uint64_t> labels) {
    if (!weights.empty() && weights.size() != edges.size())
        throw std::invalid_argument("weight count does not match edge count");
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("label count does not match vertex count");

    Graph g;
    g.n_ = n;
    g.m_ = edges.size();

    std::vector<std::uint64_t> degree(n, 0);
    {
        std::vector<std::uint64_t> keys;
        keys.reserve(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto [u, v] = edges[i];
            if (u >= n || v >= n)
                throw std::out_of_range("edge endpoint out of range");
            if (u == v)
                throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
            if (!weights.empty() && !(weights[i] > 0.0 && std::isfinite(weights[i])))
                throw std::domain_error("edge weights must be positive and finite");
            keys.push_back(pair_key(u, v));
            ++degree[u];
            ++degree[v];
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            throw std::invalid_argument("duplicate edge");
    }

    g.offsets_.assign(n + 1, 0);
    for (node v = 0; v < n; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.neighbors_.resize(2 * g.m_);
    if (!weights.empty())
        g.weights_.resize(2 * g.m_);

    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        const auto su = cursor[u]++;
        const auto sv = cursor[v]++;
        g.neighbors_[su] = v;
        g.neighbors_[sv] = u;
        if (!weights.empty())
            g.weights_[su] = g.weights_[sv] = weights[i];
    }

    if (labels.empty()) {
        labels.resize(n);
        for (node v = 0; v < n; ++v)
            labels[v] = v;
    }
    g.labels_ = std::move(labels);
    g.finalize();
    return g;
}

Graph Graph::from_csr(std::vector<std::uint64_t> offsets, std::vector<node> neighbors,
                      std::vector<double> weights) {
    if (offsets.empty() || offsets.front() != 0)
        throw std::invalid_argument("malformed CSR offsets");
    Graph g;
    g.n_ = static_cast<node>(offsets.size() - 1);
    if (offsets.back() != neighbors.size() || neighbors.size() % 2 != 0)
        throw std::invalid_argument("CSR offsets do not match neighbor array");
    if (!std::is_sorted(offsets.begin(), offsets.end()))
        throw std::invalid_argument("CSR offsets must be nondecreasing");
    if (!weights.empty() && weights.size() != neighbors.size())
        throw std::invalid_argument("CSR weights do not match neighbor array");
    g.m_ = neighbors.size() / 2;
    for (node v = 0; v < g.n_; ++v) {
        for (auto s = offsets[v]; s < offsets[v + 1]; ++s) {
            if (neighbors[s] >= g.n_ || neighbors[s] == v)
                throw std::invalid_argument("CSR neighbor out of range or self-loop");
            if (!weights.empty() && !(weights[s] > 0.0 && std::isfinite(weights[s])))
                throw std::domain_error("edge weights must be positive and finite");
        }
    }
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(neighbors);
    g.weights_ = std::move(weights);
    g.labels_.resize(g.n_);
    for (node v = 0; v < g.n_; ++v)
        g.labels_[v] = v;
    g.finalize();
    return g;
}

// Pairs the two directed slots of every undirected edge, assigns edge ids in
// (min endpoint, slot) order and verifies symmetry.
void Graph::finalize() {
    struct Slot {
        std::uint64_t key;
        std::uint64_t slot;
    };
    std::vector<Slot> slots;
    slots.reserve(neighbors_.size());
    for (node v = 0; v < n_; ++v)
        for (auto s = offsets_[v]; s < offsets_[v + 1]; ++s)
            slots.push_back({pair_key(v, neighbors_[s]), s});
    std::sort(slots.begin(), slots.end(), [](const Slot &a, const Slot &b) {
        return a.key != b.key ? a.key < b.key : a.slot < b.slot;
    });
    if (slots.size() != 2 * m_)
        throw std::invalid_argument("adjacency size mismatch");

    std::vector<std::uint64_t> partner(neighbors_.size());
    for (std::size_t i = 0; i < slots.size(); i += 2) {
        if (slots[i].key != slots[i + 1].key || (i + 2 < slots.size() && slots[i + 2].key == slots[i].key))
            throw std::invalid_argument("adjacency is not symmetric or has duplicate edges");
        partner[slots[i].slot] = slots[i + 1].slot;
        partner[slots[i + 1].slot] = slots[i].slot;
        if (!weights_.empty() && weights_[slots[i].slot] != weights_[slots[i + 1].slot])
            throw std::invalid_argument("asymmetric edge weight");
    }

    constexpr edgeid unassigned = std::numeric_limits<edgeid>::max();
    slot_edge_.assign(neighbors_.size(), unassigned);
    edges_.clear();
    edges_.reserve(m_);
    edge_weights_.clear();
    for (node v = 0; v < n_; ++v) {
        for (auto s = offsets_[v]; s < offsets_[v + 1]; ++s) {
            if (slot_edge_[s] != unassigned)
                continue;
            const edgeid e = edges_.size();
            slot_edge_[s] = e;
            slot_edge_[partner[s]] = e;
            edges_.emplace_back(v, neighbors_[s]);
            if (!weights_.empty())
                edge_weights_.push_back(weights_[s]);
        }
    }

    weighted_degree_.assign(n_, 0.0);
    for (node v = 0; v < n_; ++v) {
        if (weights_.empty()) {
            weighted_degree_[v] = static_cast<double>(degree(v));
        } else {
            double sum = 0.0;
            for (auto s = offsets_[v]; s < offsets_[v + 1]; ++s)
                sum += weights_[s];
            weighted_degree_[v] = sum;
        }
    }
    uniform_weights_ = weights_.empty() ||
                       std::all_of(weights_.begin(), weights_.end(),
                                   [&](double w) { return w == weights_.front(); });
}

Graph Graph::with_weights(std::span<const double> edge_weights) const {
    if (edge_weights.size() != m_)
        throw std::invalid_argument("weight count does not match edge count");
    std::vector<double> slot_weights(neighbors_.size());
    for (std::size_t s = 0; s < neighbors_.size(); ++s)
        slot_weights[s] = edge_weights[slot_edge_[s]];
    Graph g = from_csr(offsets_, neighbors_, std::move(slot_weights));
    g.labels_ = labels_;
    return g;
}

std::optional<edgeid> Graph::find_edge(node u, node v) const noexcept {
    if (u >= n_ || v >= n_)
        return std::nullopt;
    if (degree(u) > degree(v))
        std::swap(u, v);
    for (auto s = offsets_[u]; s < offsets_[u + 1]; ++s)
        if (neighbors_[s] == v)
            return slot_edge_[s];
    return std::nullopt;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f' || c == ','; }

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected a nonnegative integer vertex id, got '" + std::string(tok) + "'");
    return value;
}

double parse_weight(std::string_view tok, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected a decimal weight, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

Graph load_edge_list(std::istream &in, bool weighted, LoadStats *stats) {
    std::unordered_map<std::uint64_t, node> compact;
    std::vector<std::uint64_t> labels;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<node, node>> edges;
    std::vector<double> weights;
    LoadStats local;

    const auto intern = [&](std::uint64_t label) {
        const auto [it, inserted] = compact.try_emplace(label, static_cast<node>(labels.size()));
        if (inserted) {
            if (labels.size() >= none)
                throw std::length_error("too many vertices");
            labels.push_back(label);
        }
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '%' || tokens[0][0] == '#')
            continue;
        if (tokens.size() < 2)
            throw ParseError(lineno, "expected at least two vertex ids");
        const auto a = parse_id(tokens[0], lineno);
        const auto b = parse_id(tokens[1], lineno);
        double w = 1.0;
        if (weighted) {
            if (tokens.size() < 3)
                throw ParseError(lineno, "missing edge weight");
            w = parse_weight(tokens[2], lineno);
            if (!(w > 0.0) || !std::isfinite(w))
                throw std::domain_error("line " + std::to_string(lineno) + ": edge weight must be positive, got " +
                                        std::string(tokens[2]));
        }
        if (a == b) {
            ++local.self_loops;
            continue;
        }
        const node u = intern(a);
        const node v = intern(b);
        if (!seen.insert(pair_key(u, v)).second) {
            ++local.duplicates;
            continue;
        }
        edges.emplace_back(u, v);
        if (weighted)
            weights.push_back(w);
    }
    if (edges.empty())
        throw std::domain_error("graph has no edges");
    if (stats)
        *stats = local;
    const auto n = static_cast<node>(labels.size());
    return Graph::from_edges(n, edges, weights, std::move(labels));
}

Graph load_edge_list_file(const std::string &path, bool weighted, LoadStats *stats) {
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open graph file '" + path + "'");
    return load_edge_list(in, weighted, stats);
}

void write_edge_list(std::ostream &out, const Graph &g) {
    const auto labels = g.vertex_labels();
    std::array<char, 64> buf{};
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        out << labels[u] << ' ' << labels[v];
        if (g.weighted()) {
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), g.edge_weight(e));
            out << ' ' << std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
        }
        out << '\n';
    }
}

namespace {

constexpr std::array<char, 4> kMagic{'L', 'D', 'G', '1'};

template <class T>
void put_le(std::ostream &out, T value) {
    static_assert(sizeof(T) == 8);
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, 8);
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
    out.write(bytes.data(), 8);
}

template <class T>
T get_le(std::istream &in) {
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char *>(bytes.data()), 8))
        throw std::runtime_error("truncated binary graph file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    T value;
    std::memcpy(&value, &bits, 8);
    return value;
}

} // namespace

void write_binary(std::ostream &out, const Graph &g) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint64_t>(out, g.n());
    put_le<std::uint64_t>(out, g.m());
    for (auto o : g.offsets())
        put_le<std::uint64_t>(out, o);
    for (auto v : g.adjacency())
        put_le<std::uint64_t>(out, v);
    for (auto w : g.adjacency_weights())
        put_le<double>(out, w);
}

Graph read_binary(std::istream &in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw std::runtime_error("not an LDG1 binary graph");
    const auto n = get_le<std::uint64_t>(in);
    const auto m = get_le<std::uint64_t>(in);
    if (n >= none)
        throw std::runtime_error("binary graph vertex count too large");
    std::vector<std::uint64_t> offsets(n + 1);
    for (auto &o : offsets)
        o = get_le<std::uint64_t>(in);
    std::vector<node> neighbors(2 * m);
    for (auto &v : neighbors) {
        const auto raw = get_le<std::uint64_t>(in);
        if (raw >= n)
            throw std::runtime_error("binary graph neighbor out of range");
        v = static_cast<node>(raw);
    }
    std::vector<double> weights;
    if (in.peek() != std::char_traits<char>::eof()) {
        weights.resize(2 * m);
        for (auto &w : weights)
            w = get_le<double>(in);
        if (in.peek() != std::char_traits<char>::eof())
            throw std::runtime_error("trailing bytes in binary graph file");
    }
    return Graph::from_csr(std::move(offsets), std::move(neighbors), std::move(weights));
}

Graph load_graph(const std::string &path, bool weighted, LoadStats *stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open graph file '" + path + "'");
    std::array<char, 4> head{};
    in.read(head.data(), head.size());
    const bool binary = in.gcount() == 4 && head == kMagic;
    in.clear();
    in.seekg(0);
    if (binary) {
        if (stats)
            *stats = {};
        return read_binary(in);
    }
    return load_edge_list(in, weighted, stats);
}

namespace {

// Component index per vertex, numbered in order of each component's smallest vertex.
std::vector<std::uint32_t> label_components(const Graph &g, std::uint32_t &count) {
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(g.n(), unseen);
    std::vector<node> queue;
    queue.reserve(g.n());
    count = 0;
    for (node s = 0; s < g.n(); ++s) {
        if (comp[s] != unseen)
            continue;
        comp[s] = count;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (node w : g.neighbors(queue[head]))
                if (comp[w] == unseen) {
                    comp[w] = count;
                    queue.push_back(w);
                }
        ++count;
    }
    return comp;
}

} // namespace

bool is_connected(const Graph &g) {
    std::uint32_t count = 0;
    label_components(g, count);
    return count <= 1;
}

ComponentExtraction largest_connected_component(const Graph &g) {
    std::uint32_t count = 0;
    const auto comp = label_components(g, count);
    if (count <= 1) {
        ComponentExtraction out{g, std::vector<node>(g.n())};
        for (node v = 0; v < g.n(); ++v)
            out.old_to_new[v] = v;
        return out;
    }
    std::vector<std::size_t> size(count, 0);
    for (auto c : comp)
        ++size[c];
    const auto best = static_cast<std::uint32_t>(std::max_element(size.begin(), size.end()) - size.begin());

    ComponentExtraction out;
    out.old_to_new.assign(g.n(), none);
    std::vector<std::uint64_t> labels;
    node next = 0;
    for (node v = 0; v < g.n(); ++v)
        if (comp[v] == best) {
            out.old_to_new[v] = next++;
            labels.push_back(g.vertex_labels()[v]);
        }
    std::vector<std::pair<node, node>> edges;
    std::vector<double> weights;
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        if (comp[u] != best)
            continue;
        edges.emplace_back(out.old_to_new[u], out.old_to_new[v]);
        if (g.weighted())
            weights.push_back(g.edge_weight(e));
    }
    out.graph = Graph::from_edges(next, edges, weights, std::move(labels));
    return out;
}

std::uint64_t BfsTree::farness() const {
    std::uint64_t sum = 0;
    for (node v : order)
        sum += depth[v];
    return sum;
}

BfsTree bfs_tree(const Graph &g, node root) {
    if (root >= g.n())
        throw std::out_of_range("BFS root " + std::to_string(root) + " out of range");
    BfsTree t;
    t.root = root;
    t.parent.assign(g.n(), none);
    t.depth.assign(g.n(), std::numeric_limits<std::uint32_t>::max());
    t.order.reserve(g.n());
    t.depth[root] = 0;
    t.order.push_back(root);
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        const node v = t.order[head];
        for (node w : g.neighbors(v)) {
            if (t.parent[w] != none || w == root)
                continue;
            t.parent[w] = v;
            t.depth[w] = t.depth[v] + 1;
            t.ecc_root = t.depth[w];
            t.order.push_back(w);
        }
    }
    return t;
}

BccDecomposition biconnected_components(const Graph &g) {
    const node n = g.n();
    constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> disc(n, unvisited), low(n, 0);
    std::vector<edgeid> parent_edge(n, std::numeric_limits<edgeid>::max());
    std::vector<std::uint64_t> cursor(n, 0);
    std::vector<char> is_articulation(n, 0);
    std::vector<edgeid> edge_stack;
    std::vector<node> dfs;
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t time = 0;

    BccDecomposition out;
    out.component_of_edge.assign(g.m(), 0);

    const auto offsets = g.offsets();
    const auto adj = g.adjacency();

    const auto emit = [&](edgeid until) {
        BccComponent comp;
        const auto id = out.components.size();
        const auto mark = static_cast<std::uint32_t>(id + 1);
        while (true) {
            const edgeid e = edge_stack.back();
            edge_stack.pop_back();
            comp.edges.push_back(e);
            out.component_of_edge[e] = id;
            const auto [a, b] = g.edge(e);
            for (node x : {a, b})
                if (stamp[x] != mark) {
                    stamp[x] = mark;
                    comp.vertices.push_back(x);
                }
            if (e == until)
                break;
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        std::sort(comp.edges.begin(), comp.edges.end());
        out.components.push_back(std::move(comp));
    };

    for (node root = 0; root < n; ++root) {
        if (disc[root] != unvisited)
            continue;
        disc[root] = low[root] = time++;
        cursor[root] = offsets[root];
        std::size_t root_children = 0;
        dfs.push_back(root);
        while (!dfs.empty()) {
            const node v = dfs.back();
            if (cursor[v] < offsets[v + 1]) {
                const auto slot = cursor[v]++;
                const node w = adj[slot];
                const edgeid e = g.edge_ids(v)[slot - offsets[v]];
                if (e == parent_edge[v])
                    continue;
                if (disc[w] == unvisited) {
                    edge_stack.push_back(e);
                    parent_edge[w] = e;
                    disc[w] = low[w] = time++;
                    cursor[w] = offsets[w];
                    dfs.push_back(w);
                    if (v == root)
                        ++root_children;
                } else if (disc[w] < disc[v]) {
                    edge_stack.push_back(e);
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            dfs.pop_back();
            if (dfs.empty())
                break;
            const node p = dfs.back();
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= disc[p]) {
                if (p != root)
                    is_articulation[p] = 1;
                emit(parent_edge[v]);
            }
        }
        if (root_children > 1)
            is_articulation[root] = 1;
    }
    for (node v = 0; v < n; ++v)
        if (is_articulation[v])
            out.articulation_points.push_back(v);
    return out;
}

double volume(const Graph &g) {
    double sum = 0.0;
    for (node v = 0; v < g.n(); ++v)
        sum += g.weighted_degree(v);
    return sum;
}

GraphFamily parse_family(const std::string &name) {
    if (name == "path")
        return GraphFamily::path;
    if (name == "cycle")
        return GraphFamily::cycle;
    if (name == "complete")
        return GraphFamily::complete;
    if (name == "star")
        return GraphFamily::star;
    if (name == "er" || name == "erdos_renyi" || name == "erdos-renyi")
        return GraphFamily::erdos_renyi;
    if (name == "ws" || name == "watts_strogatz" || name == "watts-strogatz")
        return GraphFamily::watts_strogatz;
    throw std::invalid_argument("unknown graph family '" + name + "'");
}

Graph generate_test_graph(const GeneratorParams &params) {
    const node n = params.n;
    if (n < 2)
        throw std::invalid_argument("test graphs need n >= 2");
    std::vector<std::pair<node, node>> edges;

    switch (params.family) {
    case GraphFamily::path:
        for (node i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        return Graph::from_edges(n, edges);
    case GraphFamily::cycle:
        if (n < 3)
            throw std::invalid_argument("a cycle needs n >= 3");
        for (node i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 1, 0);
        return Graph::from_edges(n, edges);
    case GraphFamily::complete:
        for (node i = 0; i < n; ++i)
            for (node j = i + 1; j < n; ++j)
                edges.emplace_back(i, j);
        return Graph::from_edges(n, edges);
    case GraphFamily::star:
        for (node i = 0; i + 1 < n; ++i)
            edges.emplace_back(i, n - 1);
        return Graph::from_edges(n, edges);
    case GraphFamily::erdos_renyi: {
        if (!(params.p > 0.0 && params.p <= 1.0))
            throw std::invalid_argument("erdos_renyi needs 0 < p <= 1");
        for (int attempt = 0; attempt < params.max_retries; ++attempt) {
            Pcg32 rng(params.seed, static_cast<std::uint64_t>(attempt));
            edges.clear();
            for (node i = 0; i < n; ++i)
                for (node j = i + 1; j < n; ++j)
                    if (rng.uniform() < params.p)
                        edges.emplace_back(i, j);
            auto g = Graph::from_edges(n, edges);
            if (is_connected(g))
                return g;
        }
        throw std::domain_error("erdos_renyi: no connected sample within the retry budget");
    }
    case GraphFamily::watts_strogatz: {
        const node k = params.k;
        if (k < 2 || k % 2 != 0 || k >= n)
            throw std::invalid_argument("watts_strogatz needs an even k with 2 <= k < n");
        if (!(params.beta >= 0.0 && params.beta <= 1.0))
            throw std::invalid_argument("watts_strogatz needs 0 <= beta <= 1");
        for (int attempt = 0; attempt < params.max_retries; ++attempt) {
            Pcg32 rng(params.seed, static_cast<std::uint64_t>(attempt));
            std::unordered_set<std::uint64_t> present;
            edges.clear();
            for (node i = 0; i < n; ++i)
                for (node j = 1; j <= k / 2; ++j) {
                    const node t = (i + j) % n;
                    edges.emplace_back(i, t);
                    present.insert(pair_key(i, t));
                }
            for (auto &[a, b] : edges) {
                if (rng.uniform() >= params.beta)
                    continue;
                // Rewire the far endpoint, keeping the graph simple.
                for (int tries = 0; tries < 32; ++tries) {
                    const node t = rng.bounded(n);
                    if (t == a || present.contains(pair_key(a, t)))
                        continue;
                    present.erase(pair_key(a, b));
                    present.insert(pair_key(a, t));
                    b = t;
                    break;
                }
            }
            auto g = Graph::from_edges(n, edges);
            if (is_connected(g))
                return g;
        }
        throw std::domain_error("watts_strogatz: no connected sample within the retry budget");
    }
    }
    throw std::invalid_argument("unknown graph family");
}

} // namespace lapdiag
