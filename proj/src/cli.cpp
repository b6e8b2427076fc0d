#include "lapdiag/cli.hpp"

#include "lapdiag/dense_oracle.hpp"
#include "lapdiag/parallel.hpp"
#include "lapdiag/solver.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

namespace lapdiag {

using nlohmann::json;

const char *version_string() {
#ifdef LAPDIAG_VERSION
    return LAPDIAG_VERSION;
#else
    return "0.0.0";
#endif
}

json to_json(const PhaseTimings &t) {
    return {{"pivot_ms", t.pivot_ms},
            {"bfs_ms", t.bfs_ms},
            {"sampling_ms", t.sampling_ms},
            {"aggregation_ms", t.aggregation_ms},
            {"sampling_wall_ms", t.sampling_wall_ms},
            {"solve_ms", t.solve_ms},
            {"assembly_ms", t.assembly_ms},
            {"total_ms", t.total_ms}};
}

json to_json(const DiagEstimate &est) {
    return {{"diag", est.diag},
            {"trace", est.trace()},
            {"pivot", est.pivot},
            {"ecc_pivot", est.ecc_pivot},
            {"tau", est.tau},
            {"eta", est.eta},
            {"solver_iterations", est.solver_iterations},
            {"solver_residual", est.solver_residual}};
}

json to_json(const ErrorReport &report) {
    json topk = json::object();
    for (const auto &[k, v] : report.topk_jaccard)
        topk[std::to_string(k)] = v;
    return {{"max_abs", report.max_abs},
            {"l1_rel", report.l1_rel},
            {"l2_rel", report.l2_rel},
            {"e_rel", report.e_rel},
            {"inverted_pairs_pct", report.inverted_pairs_pct},
            {"topk_jaccard", topk}};
}

json to_json(const Scores &scores) {
    return {{"kind", to_string(scores.kind)},
            {"values", scores.values},
            {"trees", scores.trees},
            {"probes", scores.probes}};
}

std::vector<double> record_vector(const json &record) {
    const json &payload = record.contains("payload") ? record.at("payload") : record;
    if (payload.contains("diag"))
        return payload.at("diag").get<std::vector<double>>();
    if (payload.contains("values"))
        return payload.at("values").get<std::vector<double>>();
    throw std::invalid_argument("record has neither payload.diag nor payload.values");
}

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

// Shortest representation that parses back to the same double.
std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct GraphInput {
    std::string path;
    bool weighted = false;
    bool lcc = false;
};

struct LoadedGraph {
    Graph graph;
    json info;
    std::vector<std::string> warnings;
};

LoadedGraph load_input(const GraphInput &in) {
    LoadedGraph out;
    LoadStats stats;
    Graph g = load_graph(in.path, in.weighted, &stats);
    if (stats.duplicates)
        out.warnings.push_back(std::to_string(stats.duplicates) + " duplicate edge(s) ignored");
    if (stats.self_loops)
        out.warnings.push_back(std::to_string(stats.self_loops) + " self-loop(s) ignored");
    const node n_in = g.n();
    if (!is_connected(g)) {
        if (!in.lcc)
            throw std::domain_error("graph '" + in.path + "' is disconnected; pass --lcc to use its largest component");
        g = largest_connected_component(g).graph;
        out.warnings.push_back("kept the largest component: " + std::to_string(g.n()) + " of " +
                               std::to_string(n_in) + " vertices");
    }
    out.info = {{"path", in.path}, {"n", g.n()}, {"m", g.m()}, {"weighted", g.weighted()}, {"lcc", in.lcc}};
    out.graph = std::move(g);
    return out;
}

json labels_of(const Graph &g) { return g.vertex_labels(); }

json make_record(const std::string &command, json graph, json params, json argv) {
    return {{"command", command},
            {"version", version_string()},
            {"graph", std::move(graph)},
            {"params", std::move(params)},
            {"argv", std::move(argv)},
            {"payload", json::object()},
            {"timings", json::object()},
            {"warnings", json::array()}};
}

void add_warnings(json &record, const std::vector<std::string> &warnings) {
    for (const auto &w : warnings)
        record["warnings"].push_back(w);
}

void emit(const json &record, const std::string &path, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << record.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::ios_base::failure("cannot write '" + path + "'");
    f << record.dump(2) << '\n';
}

json read_json_file(const std::string &path) {
    std::ifstream f(path);
    if (!f)
        throw std::ios_base::failure("cannot open '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::ofstream open_csv(const std::string &path) {
    std::ofstream f(path);
    if (!f)
        throw std::ios_base::failure("cannot write '" + path + "'");
    return f;
}

void write_vertex_csv(const std::string &path, const Graph &g, const std::string &column,
                      std::span<const double> values) {
    auto f = open_csv(path);
    f << "vertex," << column << '\n';
    const auto labels = g.vertex_labels();
    for (node v = 0; v < g.n(); ++v)
        f << labels[v] << ',' << fmt(values[v]) << '\n';
}

void write_edge_csv(const std::string &path, const Graph &g, std::span<const double> values) {
    auto f = open_csv(path);
    f << "u,v,score\n";
    const auto labels = g.vertex_labels();
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto [a, b] = g.edge(e);
        f << labels[a] << ',' << labels[b] << ',' << fmt(values[e]) << '\n';
    }
}

std::vector<std::size_t> clamp_ks(const std::vector<std::size_t> &ks, std::size_t n) {
    std::vector<std::size_t> out;
    for (auto k : ks)
        out.push_back(std::min(k, n));
    return out;
}

void attach_reference(json &record, std::span<const double> est, const std::string &reference,
                      const std::vector<std::size_t> &ks) {
    if (reference.empty())
        return;
    const auto ref = record_vector(read_json_file(reference));
    const ErrorReport report = compare(est, ref, clamp_ks(ks, est.size()));
    record["error_report"] = to_json(report);
    record["params"]["reference"] = reference;
    add_warnings(record, report.warnings);
}

node resolve_label(const Graph &g, const std::string &text) {
    std::uint64_t label = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, label);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("--pivot expects 'auto' or a vertex id, got '" + text + "'");
    const auto labels = g.vertex_labels();
    for (node v = 0; v < g.n(); ++v)
        if (labels[v] == label)
            return v;
    throw std::out_of_range("pivot vertex " + text + " is not in the graph");
}

// ---------------------------------------------------------------- diag

struct DiagOptions {
    GraphInput input;
    double eps = 0.3;
    std::optional<double> delta;
    double kappa = 0.3;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string pivot = "auto";
    std::string aggregation = "frequency";
    bool no_bcc = false;
    std::optional<std::uint64_t> tau;
    std::optional<double> cg_tol;
    std::string out, csv, reference;
    std::vector<std::size_t> ks{10};
};

void add_input_flags(CLI::App *cmd, GraphInput &in) {
    cmd->add_option("graph", in.path, "Edge list or LDG1 binary graph")->required();
    cmd->add_flag("--weighted", in.weighted, "Read a third column as edge weight");
    cmd->add_flag("--lcc", in.lcc, "Restrict a disconnected graph to its largest component");
}

void add_diag_flags(CLI::App *cmd, DiagOptions &o) {
    cmd->add_option("--delta", o.delta, "Failure probability (default 1/n)");
    cmd->add_option("--kappa", o.kappa, "Share of eps given to the solver")->capture_default_str();
    cmd->add_option("--seed", o.seed)->capture_default_str();
    cmd->add_option("--threads", o.threads, "0 = all hardware threads")->capture_default_str();
    cmd->add_option("--pivot", o.pivot, "'auto' or a vertex id")->capture_default_str();
    cmd->add_option("--aggregation", o.aggregation, "frequency | paper-weighted")->capture_default_str();
    cmd->add_flag("--no-bcc", o.no_bcc, "Sample on the whole graph instead of per biconnected component");
    cmd->add_option("--tau", o.tau, "Override the sample count");
    cmd->add_option("--cg-tol-override", o.cg_tol, "Override the CG tolerance");
}

ApproxParams approx_params(const DiagOptions &o, const Graph &g) {
    ApproxParams p;
    p.eps = o.eps;
    p.delta = o.delta;
    p.kappa = o.kappa;
    p.seed = o.seed;
    p.threads = o.threads;
    if (o.pivot != "auto")
        p.pivot = resolve_label(g, o.pivot);
    p.use_bcc = !o.no_bcc;
    p.aggregation = parse_aggregation(o.aggregation);
    p.tau_override = o.tau;
    p.cg_tolerance_override = o.cg_tol;
    return p;
}

json diag_argv(const DiagOptions &o, const DiagEstimate &est) {
    json argv = {"diag", o.input.path, "--eps", fmt(est.eps), "--delta", fmt(est.delta), "--kappa", fmt(est.kappa),
                 "--seed", std::to_string(est.seed), "--threads", std::to_string(est.threads), "--pivot", o.pivot,
                 "--aggregation", to_string(est.aggregation)};
    if (o.input.weighted)
        argv.push_back("--weighted");
    if (o.input.lcc)
        argv.push_back("--lcc");
    if (o.no_bcc)
        argv.push_back("--no-bcc");
    if (o.tau)
        argv.insert(argv.end(), {"--tau", std::to_string(*o.tau)});
    if (o.cg_tol)
        argv.insert(argv.end(), {"--cg-tol-override", fmt(*o.cg_tol)});
    return argv;
}

json diag_record(const DiagOptions &o, const LoadedGraph &lg) {
    const ApproxParams params = approx_params(o, lg.graph);
    const DiagEstimate est = approx_diag_weighted(lg.graph, params);
    json params_json = {{"eps", est.eps},
                        {"delta", est.delta},
                        {"kappa", est.kappa},
                        {"seed", est.seed},
                        {"threads", est.threads},
                        {"pivot", o.pivot},
                        {"pivot_iterations", params.pivot_iterations},
                        {"weighted", o.input.weighted},
                        {"aggregation", to_string(est.aggregation)},
                        {"use_bcc", est.use_bcc},
                        {"chunk_size", params.chunk_size},
                        {"tau_override", o.tau ? json(*o.tau) : json(nullptr)},
                        {"cg_tol_override", o.cg_tol ? json(*o.cg_tol) : json(nullptr)}};
    json record = make_record("diag", lg.info, std::move(params_json), diag_argv(o, est));
    record["payload"] = to_json(est);
    record["payload"]["labels"] = labels_of(lg.graph);
    record["timings"] = to_json(est.timings);
    add_warnings(record, lg.warnings);
    return record;
}

int cmd_diag(const DiagOptions &o, std::ostream &out) {
    const LoadedGraph lg = load_input(o.input);
    json record = diag_record(o, lg);
    const auto diag = record["payload"]["diag"].get<std::vector<double>>();
    attach_reference(record, diag, o.reference, o.ks);
    if (!o.csv.empty())
        write_vertex_csv(o.csv, lg.graph, "diag", diag);
    emit(record, o.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------- exact

struct ExactOptions {
    GraphInput input;
    std::optional<std::size_t> limit;
    std::string out, csv;
};

json exact_record(const ExactOptions &o, const LoadedGraph &lg) {
    const auto start = clock_type::now();
    const std::size_t limit = o.limit.value_or(default_oracle_limit());
    const DensePinv pinv(lg.graph, limit);
    json argv = {"exact", o.input.path, "--oracle-limit", std::to_string(limit)};
    if (o.input.weighted)
        argv.push_back("--weighted");
    if (o.input.lcc)
        argv.push_back("--lcc");
    json record = make_record("exact", lg.info, {{"oracle_limit", limit}, {"weighted", o.input.weighted}}, argv);
    record["payload"] = {{"diag", pinv.diag()}, {"trace", pinv.trace()}, {"labels", labels_of(lg.graph)}};
    record["timings"] = {{"total_ms", ms_since(start)}};
    add_warnings(record, lg.warnings);
    return record;
}

int cmd_exact(const ExactOptions &o, std::ostream &out) {
    const LoadedGraph lg = load_input(o.input);
    const json record = exact_record(o, lg);
    if (!o.csv.empty())
        write_vertex_csv(o.csv, lg.graph, "diag", record["payload"]["diag"].get<std::vector<double>>());
    emit(record, o.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------- bekas

struct BekasOptions {
    GraphInput input;
    std::string method = "random";
    std::uint64_t vectors = 200;
    double solver_tol = 1e-6;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out, csv, reference;
    std::vector<std::size_t> ks{10};
};

json bekas_record(const BekasOptions &o, const LoadedGraph &lg) {
    BaselineConfig config;
    config.method = parse_probe_method(o.method);
    config.num_vectors = o.vectors;
    config.solver_tol = o.solver_tol;
    config.seed = o.seed;
    config.threads = o.threads;
    const auto start = clock_type::now();
    const BaselineResult res = bekas_diag(lg.graph, config);
    const double elapsed = ms_since(start);
    const int threads = resolve_threads(o.threads);
    json argv = {"bekas", o.input.path, "--method", o.method, "--vectors", std::to_string(o.vectors),
                 "--solver-tol", fmt(o.solver_tol), "--seed", std::to_string(o.seed), "--threads",
                 std::to_string(threads)};
    if (o.input.weighted)
        argv.push_back("--weighted");
    if (o.input.lcc)
        argv.push_back("--lcc");
    json params = {{"method", o.method}, {"vectors", o.vectors}, {"solver_tol", o.solver_tol},
                   {"seed", o.seed},     {"threads", threads},   {"weighted", o.input.weighted},
                   {"solver", "cg-jacobi"}, {"centered_probes", true}};
    json record = make_record("bekas", lg.info, std::move(params), argv);
    record["payload"] = {{"diag", res.diag},
                         {"trace", std::accumulate(res.diag.begin(), res.diag.end(), 0.0)},
                         {"cg_iterations", res.cg_iterations},
                         {"labels", labels_of(lg.graph)}};
    record["timings"] = {{"total_ms", elapsed}};
    add_warnings(record, lg.warnings);
    add_warnings(record, res.warnings);
    return record;
}

int cmd_bekas(const BekasOptions &o, std::ostream &out) {
    const LoadedGraph lg = load_input(o.input);
    json record = bekas_record(o, lg);
    const auto diag = record["payload"]["diag"].get<std::vector<double>>();
    attach_reference(record, diag, o.reference, o.ks);
    if (!o.csv.empty())
        write_vertex_csv(o.csv, lg.graph, "diag", diag);
    emit(record, o.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------- centrality

struct CentralityOptions {
    DiagOptions diag;
    std::string measure;
    std::optional<double> eps;
    double theta = 0.5;
    std::uint64_t probes = 0;
    std::optional<std::uint64_t> trees;
    bool oracle = false;
    bool exact = false;
};

int cmd_centrality(CentralityOptions o, std::ostream &out) {
    static const std::vector<std::string> vertex_measures{"closeness", "farness", "nrwb", "kirchhoff"};
    const bool vertex_measure =
        std::find(vertex_measures.begin(), vertex_measures.end(), o.measure) != vertex_measures.end();
    if (!vertex_measure && o.measure != "spanning-edge" && o.measure != "kirchhoff-edge")
        throw std::invalid_argument("unknown measure '" + o.measure + "'");
    if (o.measure == "kirchhoff-edge" && !(o.theta > 0.0 && o.theta < 1.0))
        throw std::invalid_argument("--theta must lie in (0, 1), got " + fmt(o.theta));

    const LoadedGraph lg = load_input(o.diag.input);
    const Graph &g = lg.graph;
    const auto start = clock_type::now();
    json params = {{"measure", o.measure}, {"seed", o.diag.seed}, {"weighted", o.diag.input.weighted}};
    json argv = {"centrality", o.diag.input.path, "--measure", o.measure, "--seed", std::to_string(o.diag.seed)};
    if (o.diag.input.weighted)
        argv.push_back("--weighted");
    if (o.diag.input.lcc)
        argv.push_back("--lcc");
    json payload;
    json timings;
    std::vector<std::string> warnings = lg.warnings;

    if (vertex_measure) {
        std::vector<double> diag;
        if (o.exact) {
            diag = DensePinv(g).diag();
            params["source"] = "exact";
            argv.push_back("--exact");
        } else {
            o.diag.eps = o.eps.value_or(0.3);
            const DiagEstimate est = approx_diag_weighted(g, approx_params(o.diag, g));
            diag = est.diag;
            params["source"] = "ust";
            params["eps"] = est.eps;
            params["delta"] = est.delta;
            params["kappa"] = est.kappa;
            params["threads"] = est.threads;
            params["pivot"] = o.diag.pivot;
            params["aggregation"] = to_string(est.aggregation);
            params["use_bcc"] = est.use_bcc;
            auto rest = diag_argv(o.diag, est);
            argv.insert(argv.end(), rest.begin() + 2, rest.end());
            timings = to_json(est.timings);
        }
        if (o.measure == "kirchhoff") {
            payload = {{"kind", "kirchhoff_index"}, {"value", kirchhoff_index(diag)}};
        } else {
            const Scores s = o.measure == "closeness" ? electrical_closeness(diag)
                             : o.measure == "nrwb"    ? nrwb(diag)
                                                      : electrical_farness(diag);
            payload = to_json(s);
            payload["labels"] = labels_of(g);
            if (!o.diag.csv.empty())
                write_vertex_csv(o.diag.csv, g, "score", s.values);
        }
    } else {
        const double eps = o.eps.value_or(0.1);
        Scores s;
        if (o.measure == "spanning-edge") {
            EdgeSamplingParams p;
            p.eps = eps;
            p.delta = o.diag.delta;
            p.seed = o.diag.seed;
            p.threads = o.diag.threads;
            p.use_bcc = !o.diag.no_bcc;
            p.trees_override = o.trees;
            s = spanning_edge_resistance(g, p);
            params["use_bcc"] = p.use_bcc;
            if (o.diag.no_bcc)
                argv.push_back("--no-bcc");
            if (o.trees) {
                params["trees"] = *o.trees;
                argv.insert(argv.end(), {"--trees", std::to_string(*o.trees)});
            }
        } else {
            KirchhoffEdgeParams p;
            p.theta = o.theta;
            p.eps = eps;
            p.delta = o.diag.delta;
            p.num_hutchinson = o.probes;
            p.seed = o.diag.seed;
            p.threads = o.diag.threads;
            p.oracle = o.oracle;
            s = kirchhoff_edge_centrality(g, p);
            params["theta"] = o.theta;
            params["oracle"] = o.oracle;
            argv.insert(argv.end(), {"--theta", fmt(o.theta)});
            if (o.probes) {
                params["probes"] = o.probes;
                argv.insert(argv.end(), {"--probes", std::to_string(o.probes)});
            }
            if (o.oracle)
                argv.push_back("--oracle");
        }
        params["eps"] = eps;
        argv.insert(argv.end(), {"--eps", fmt(eps)});
        if (o.diag.delta) {
            params["delta"] = *o.diag.delta;
            argv.insert(argv.end(), {"--delta", fmt(*o.diag.delta)});
        }
        const int threads = resolve_threads(o.diag.threads);
        params["threads"] = threads;
        argv.insert(argv.end(), {"--threads", std::to_string(threads)});
        payload = to_json(s);
        json edges = json::array();
        const auto labels = g.vertex_labels();
        for (edgeid e = 0; e < g.m(); ++e) {
            const auto [a, b] = g.edge(e);
            edges.push_back({labels[a], labels[b]});
        }
        payload["edges"] = std::move(edges);
        warnings.insert(warnings.end(), s.warnings.begin(), s.warnings.end());
        if (!o.diag.csv.empty())
            write_edge_csv(o.diag.csv, g, s.values);
    }

    if (timings.is_null())
        timings = json::object();
    timings["total_ms"] = ms_since(start);
    json record = make_record("centrality", lg.info, std::move(params), std::move(argv));
    record["payload"] = std::move(payload);
    record["timings"] = std::move(timings);
    add_warnings(record, warnings);
    emit(record, o.diag.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
    std::string estimate, reference, out;
    std::vector<std::size_t> ks;
};

int cmd_compare(const CompareOptions &o, std::ostream &out) {
    const auto est = record_vector(read_json_file(o.estimate));
    const auto ref = record_vector(read_json_file(o.reference));
    const ErrorReport report = compare(est, ref, o.ks);
    json argv = {"compare", o.estimate, o.reference};
    for (auto k : o.ks)
        argv.insert(argv.end(), {"--k", std::to_string(k)});
    json record = make_record("compare", nullptr, {{"estimate", o.estimate}, {"reference", o.reference}, {"k", o.ks}},
                              std::move(argv));
    record["payload"] = to_json(report);
    record["timings"] = json::object();
    add_warnings(record, report.warnings);
    emit(record, o.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    std::string list;
    std::string out;
    std::vector<double> ust_eps{0.3, 0.9};
    std::vector<std::uint64_t> bekas{50, 100, 200};
    std::vector<std::uint64_t> bekas_h{64, 128, 256};
    std::vector<std::string> methods{"ust", "bekas", "bekas-h"};
    double kappa = 0.3;
    double solver_tol = 1e-6;
    std::uint64_t seed = 1;
    int threads = 0;
    bool weighted = false;
    bool lcc = false;
    bool ndjson = false;
    std::vector<std::size_t> ks{10};
};

std::vector<std::string> read_graph_list(const std::string &path) {
    std::ifstream f(path);
    if (!f)
        throw std::ios_base::failure("cannot open graph list '" + path + "'");
    std::vector<std::string> graphs;
    const auto base = std::filesystem::path(path).parent_path();
    for (std::string line; std::getline(f, line);) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::filesystem::path p(line.substr(first, last - first + 1));
        if (p.is_relative() && !std::filesystem::exists(p))
            p = base / p;
        graphs.push_back(p.string());
    }
    return graphs;
}

int cmd_bench(const BenchOptions &o, std::ostream &out, std::ostream &err) {
    for (const auto &m : o.methods)
        if (m != "ust" && m != "bekas" && m != "bekas-h")
            throw std::invalid_argument("unknown bench method '" + m + "'");
    const auto enabled = [&](const std::string &m) {
        return std::find(o.methods.begin(), o.methods.end(), m) != o.methods.end();
    };
    const auto graphs = read_graph_list(o.list);
    if (graphs.empty())
        throw std::invalid_argument("graph list '" + o.list + "' is empty");
    std::filesystem::create_directories(o.out);
    const auto dir = std::filesystem::path(o.out);
    std::ofstream summary(dir / "summary.csv");
    if (!summary)
        throw std::ios_base::failure("cannot write " + (dir / "summary.csv").string());
    summary << "graph,method,param,time_ms,max_abs,inversions_pct,status\n";
    std::ofstream ndjson;
    if (o.ndjson)
        ndjson.open(dir / "records.ndjson");

    std::size_t failures = 0;
    for (const auto &path : graphs) {
        const std::string stem = std::filesystem::path(path).stem().string();
        const GraphInput input{path, o.weighted, o.lcc};

        const auto store = [&](const json &record, const std::string &name) {
            if (o.ndjson) {
                ndjson << record.dump() << '\n';
            } else {
                std::ofstream f(dir / (stem + "." + name + ".json"));
                f << record.dump(2) << '\n';
            }
        };
        const auto row = [&](const std::string &method, const std::string &param, const json *record,
                             const std::string &status) {
            summary << stem << ',' << method << ',' << param << ',';
            if (record) {
                summary << fmt(record->at("timings").at("total_ms").get<double>()) << ',';
                if (record->contains("error_report"))
                    summary << fmt(record->at("error_report").at("max_abs").get<double>()) << ','
                            << fmt(record->at("error_report").at("inverted_pairs_pct").get<double>());
                else
                    summary << ',';
            } else {
                summary << ",,";
            }
            summary << ',' << status << '\n';
        };
        const auto fail = [&](const std::string &method, const std::string &param, const std::exception &e) {
            ++failures;
            err << "bench: " << path << " " << method << " " << param << ": " << e.what() << '\n';
            json record = {{"command", "bench"},
                           {"version", version_string()},
                           {"graph", {{"path", path}}},
                           {"params", {{"method", method}, {"param", param}}},
                           {"error", e.what()}};
            store(record, method + "-" + param + ".error");
            row(method, param, nullptr, std::string("error"));
        };

        LoadedGraph lg;
        try {
            lg = load_input(input);
        } catch (const std::exception &e) {
            fail("load", "-", e);
            continue;
        }

        std::optional<std::vector<double>> reference;
        try {
            ExactOptions eo;
            eo.input = input;
            const json record = exact_record(eo, lg);
            reference = record["payload"]["diag"].get<std::vector<double>>();
            store(record, "exact");
        } catch (const std::length_error &e) {
            err << "bench: " << path << ": no dense reference (" << e.what() << ")\n";
        } catch (const std::exception &e) {
            fail("exact", "-", e);
        }
        const auto with_reference = [&](json &record) {
            if (!reference)
                return;
            const auto est = record["payload"]["diag"].get<std::vector<double>>();
            const ErrorReport report = compare(est, *reference, clamp_ks(o.ks, est.size()));
            record["error_report"] = to_json(report);
            add_warnings(record, report.warnings);
        };

        for (double eps : enabled("ust") ? o.ust_eps : std::vector<double>{}) {
            const std::string param = fmt(eps);
            try {
                DiagOptions d;
                d.input = input;
                d.eps = eps;
                d.kappa = o.kappa;
                d.seed = o.seed;
                d.threads = o.threads;
                json record = diag_record(d, lg);
                with_reference(record);
                store(record, "ust-" + param);
                row("ust", param, &record, "ok");
            } catch (const std::exception &e) {
                fail("ust", param, e);
            }
        }
        for (const auto &[method, counts] :
             {std::pair{std::string("random"), o.bekas}, std::pair{std::string("hadamard"), o.bekas_h}}) {
            const std::string label = method == "random" ? "bekas" : "bekas-h";
            if (!enabled(label))
                continue;
            for (auto s : counts) {
                const std::string param = std::to_string(s);
                try {
                    BekasOptions b;
                    b.input = input;
                    b.method = method;
                    b.vectors = s;
                    b.solver_tol = o.solver_tol;
                    b.seed = o.seed;
                    b.threads = o.threads;
                    json record = bekas_record(b, lg);
                    with_reference(record);
                    store(record, label + "-" + param);
                    row(label, param, &record, "ok");
                } catch (const std::exception &e) {
                    fail(label, param, e);
                }
            }
        }
    }
    out << "bench: " << graphs.size() << " graph(s), " << failures << " failure(s); summary in "
        << (dir / "summary.csv").string() << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- generate / convert

struct GenerateOptions {
    std::string family = "erdos_renyi";
    node n = 100;
    double p = 0.05;
    node k = 4;
    double beta = 0.1;
    std::uint64_t seed = 1;
    std::string out;
    bool binary = false;
};

void write_graph(const Graph &g, const std::string &path, bool binary, std::ostream &out) {
    if (path.empty() || path == "-") {
        if (binary)
            throw std::invalid_argument("binary output needs --out");
        write_edge_list(out, g);
        return;
    }
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f)
        throw std::ios_base::failure("cannot write '" + path + "'");
    if (binary)
        write_binary(f, g);
    else
        write_edge_list(f, g);
}

int cmd_generate(const GenerateOptions &o, std::ostream &out) {
    GeneratorParams p;
    p.family = parse_family(o.family);
    p.n = o.n;
    p.p = o.p;
    p.k = o.k;
    p.beta = o.beta;
    p.seed = o.seed;
    write_graph(generate_test_graph(p), o.out, o.binary, out);
    return exit_ok;
}

struct ConvertOptions {
    GraphInput input;
    std::string out;
    bool binary = false;
};

int cmd_convert(const ConvertOptions &o, std::ostream &out) {
    LoadStats stats;
    Graph g = load_graph(o.input.path, o.input.weighted, &stats);
    if (o.input.lcc)
        g = largest_connected_component(g).graph;
    write_graph(g, o.out, o.binary, out);
    return exit_ok;
}

int cmd_rerun(const std::string &path, const std::string &target, std::ostream &out, std::ostream &err) {
    const json record = read_json_file(path);
    if (!record.contains("argv"))
        throw std::invalid_argument("'" + path + "' carries no argv to rerun");
    auto args = record.at("argv").get<std::vector<std::string>>();
    if (!target.empty())
        args.insert(args.end(), {"--out", target});
    return run_cli(args, out, err);
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Approximate diagonal of the Laplacian pseudoinverse and electrical centralities", "lapdiag"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    DiagOptions diag;
    auto *c_diag = app.add_subcommand("diag", "Approximate diag(L^+) by spanning-tree sampling");
    add_input_flags(c_diag, diag.input);
    c_diag->add_option("--eps", diag.eps, "Absolute error target")->capture_default_str();
    add_diag_flags(c_diag, diag);
    c_diag->add_option("--out", diag.out, "JSON output (default stdout)");
    c_diag->add_option("--csv", diag.csv, "Also write vertex,diag CSV");
    c_diag->add_option("--reference", diag.reference, "Run record to compare against");
    c_diag->add_option("--k", diag.ks, "Top-k sizes for the comparison");

    ExactOptions exact;
    auto *c_exact = app.add_subcommand("exact", "Dense diag(L^+) for small graphs");
    add_input_flags(c_exact, exact.input);
    c_exact->add_option("--oracle-limit", exact.limit, "Largest n accepted (default LAPDIAG_ORACLE_LIMIT or 4000)");
    c_exact->add_option("--out", exact.out);
    c_exact->add_option("--csv", exact.csv);

    BekasOptions bekas;
    auto *c_bekas = app.add_subcommand("bekas", "Stochastic probing estimate of diag(L^+)");
    add_input_flags(c_bekas, bekas.input);
    c_bekas->add_option("--method", bekas.method, "random | hadamard")->capture_default_str();
    c_bekas->add_option("--vectors", bekas.vectors)->capture_default_str();
    c_bekas->add_option("--solver-tol", bekas.solver_tol)->capture_default_str();
    c_bekas->add_option("--seed", bekas.seed)->capture_default_str();
    c_bekas->add_option("--threads", bekas.threads)->capture_default_str();
    c_bekas->add_option("--out", bekas.out);
    c_bekas->add_option("--csv", bekas.csv);
    c_bekas->add_option("--reference", bekas.reference);
    c_bekas->add_option("--k", bekas.ks);

    CentralityOptions cent;
    auto *c_cent = app.add_subcommand("centrality", "Electrical closeness, NRWB, Kirchhoff index and edge measures");
    add_input_flags(c_cent, cent.diag.input);
    c_cent->add_option("--measure", cent.measure, "closeness | farness | nrwb | kirchhoff | spanning-edge | kirchhoff-edge")
        ->required();
    c_cent->add_option("--eps", cent.eps, "Error target (default 0.3 for vertex, 0.1 for edge measures)");
    add_diag_flags(c_cent, cent.diag);
    c_cent->add_option("--theta", cent.theta, "Edge down-weighting factor in (0, 1)")->capture_default_str();
    c_cent->add_option("--probes", cent.probes, "Hutchinson probes (default ceil(ln n / eps^2))");
    c_cent->add_option("--trees", cent.trees, "Override the spanning-tree count");
    c_cent->add_flag("--oracle", cent.oracle, "Exact dense values for kirchhoff-edge");
    c_cent->add_flag("--exact", cent.exact, "Exact dense diagonal for vertex measures");
    c_cent->add_option("--out", cent.diag.out);
    c_cent->add_option("--csv", cent.diag.csv, "vertex,score or u,v,score CSV");

    CompareOptions cmp;
    auto *c_cmp = app.add_subcommand("compare", "Error report of one run record against another");
    c_cmp->add_option("estimate", cmp.estimate)->required();
    c_cmp->add_option("reference", cmp.reference)->required();
    c_cmp->add_option("--k", cmp.ks, "Top-k sizes (smallest diagonal entries)");
    c_cmp->add_option("--out", cmp.out);

    BenchOptions bench;
    auto *c_bench = app.add_subcommand("bench", "Run the estimator grid over a list of graphs");
    c_bench->add_option("graphs", bench.list, "File with one graph path per line")->required();
    c_bench->add_option("--out", bench.out, "Output directory")->required();
    c_bench->add_option("--ust-eps", bench.ust_eps)->capture_default_str();
    c_bench->add_option("--bekas", bench.bekas, "Random-probe vector counts")->capture_default_str();
    c_bench->add_option("--bekas-h", bench.bekas_h, "Hadamard vector counts")->capture_default_str();
    c_bench->add_option("--methods", bench.methods, "Subset of ust,bekas,bekas-h")->delimiter(',')->capture_default_str();
    c_bench->add_option("--kappa", bench.kappa)->capture_default_str();
    c_bench->add_option("--solver-tol", bench.solver_tol)->capture_default_str();
    c_bench->add_option("--seed", bench.seed)->capture_default_str();
    c_bench->add_option("--threads", bench.threads)->capture_default_str();
    c_bench->add_option("--k", bench.ks)->capture_default_str();
    c_bench->add_flag("--weighted", bench.weighted);
    c_bench->add_flag("--lcc", bench.lcc);
    c_bench->add_flag("--ndjson", bench.ndjson, "One records.ndjson instead of a file per cell");

    GenerateOptions gen;
    auto *c_gen = app.add_subcommand("generate", "Write a seeded test graph as an edge list");
    c_gen->add_option("--family", gen.family, "path | cycle | complete | star | erdos_renyi | watts_strogatz")
        ->capture_default_str();
    c_gen->add_option("--n", gen.n)->capture_default_str();
    c_gen->add_option("--p", gen.p)->capture_default_str();
    c_gen->add_option("--k", gen.k)->capture_default_str();
    c_gen->add_option("--beta", gen.beta)->capture_default_str();
    c_gen->add_option("--seed", gen.seed)->capture_default_str();
    c_gen->add_option("--out", gen.out);
    c_gen->add_flag("--binary", gen.binary);

    ConvertOptions conv;
    auto *c_conv = app.add_subcommand("convert", "Convert between edge lists and the binary format");
    add_input_flags(c_conv, conv.input);
    c_conv->add_option("--out", conv.out)->required();
    c_conv->add_flag("--binary", conv.binary);

    std::string rerun_path, rerun_out;
    auto *c_rerun = app.add_subcommand("rerun", "Re-execute the argv stored in a run record");
    c_rerun->add_option("record", rerun_path)->required();
    c_rerun->add_option("--out", rerun_out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*c_diag)
            return cmd_diag(diag, out);
        if (*c_exact)
            return cmd_exact(exact, out);
        if (*c_bekas)
            return cmd_bekas(bekas, out);
        if (*c_cent)
            return cmd_centrality(cent, out);
        if (*c_cmp)
            return cmd_compare(cmp, out);
        if (*c_bench)
            return cmd_bench(bench, out, err);
        if (*c_gen)
            return cmd_generate(gen, out);
        if (*c_conv)
            return cmd_convert(conv, out);
        if (*c_rerun)
            return cmd_rerun(rerun_path, rerun_out, out, err);
    } catch (const SolverError &e) {
        err << "lapdiag: solver failure: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::exception &e) {
        err << "lapdiag: " << e.what() << '\n';
        return exit_input;
    }
    return exit_internal;
}

} // namespace lapdiag
