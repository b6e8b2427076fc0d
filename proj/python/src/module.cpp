#include "lapdiag/baselines.hpp"
#include "lapdiag/centrality.hpp"
#include "lapdiag/cli.hpp"
#include "lapdiag/dense_oracle.hpp"
#include "lapdiag/diag.hpp"
#include "lapdiag/metrics.hpp"
#include "lapdiag/solver.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace lapdiag;

namespace {

py::array_t<double> to_array(const std::vector<double> &v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast> &a) {
    if (a.ndim() != 1)
        throw std::invalid_argument("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

Graph graph_from_edges(node n, const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> &edges,
                       std::optional<py::array_t<double, py::array::c_style | py::array::forcecast>> weights) {
    if (edges.ndim() != 2 || (edges.shape(0) > 0 && edges.shape(1) != 2))
        throw std::invalid_argument("edges must have shape (m, 2)");
    std::vector<std::pair<node, node>> list;
    list.reserve(static_cast<std::size_t>(edges.shape(0)));
    auto e = edges.unchecked<2>();
    for (py::ssize_t i = 0; i < edges.shape(0); ++i) {
        if (e(i, 0) < 0 || e(i, 1) < 0)
            throw std::invalid_argument("negative vertex id");
        list.emplace_back(static_cast<node>(e(i, 0)), static_cast<node>(e(i, 1)));
    }
    std::vector<double> w;
    if (weights) {
        w = from_array(*weights);
        if (w.size() != list.size())
            throw std::invalid_argument("weights must have one entry per edge");
    }
    return Graph::from_edges(n, list, w);
}

py::array_t<std::int64_t> edge_array(const Graph &g) {
    py::array_t<std::int64_t> a({static_cast<py::ssize_t>(g.m()), py::ssize_t{2}});
    auto r = a.mutable_unchecked<2>();
    for (edgeid e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        r(e, 0) = u;
        r(e, 1) = v;
    }
    return a;
}

py::dict estimate_dict(const DiagEstimate &est) {
    py::dict d;
    d["diag"] = to_array(est.diag);
    d["resistance"] = to_array(est.resistance);
    d["pivot"] = est.pivot;
    d["tau"] = est.tau;
    d["eps"] = est.eps;
    d["delta"] = est.delta;
    d["kappa"] = est.kappa;
    d["eta"] = est.eta;
    d["seed"] = est.seed;
    d["ecc_pivot"] = est.ecc_pivot;
    d["threads"] = est.threads;
    d["solver_iterations"] = est.solver_iterations;
    d["timings"] = py::module_::import("json").attr("loads")(to_json(est.timings).dump());
    return d;
}

py::dict scores_dict(const Scores &s) {
    py::dict d;
    d["kind"] = to_string(s.kind);
    d["values"] = to_array(s.values);
    d["trees"] = s.trees;
    d["probes"] = s.probes;
    d["warnings"] = s.warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_lapdiag, m) {
    m.doc() = "Approximate diagonal of the Laplacian pseudoinverse and electrical centralities.";
    m.attr("__version__") = version_string();

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"), py::arg("weights") = py::none())
        .def_static(
            "load", [](const std::string &path, bool weighted) { return load_graph(path, weighted); },
            py::arg("path"), py::arg("weighted") = false)
        .def_static(
            "generate",
            [](const std::string &family, node n, double p, node k, double beta, std::uint64_t seed) {
                GeneratorParams params;
                params.family = parse_family(family);
                params.n = n;
                params.p = p;
                params.k = k;
                params.beta = beta;
                params.seed = seed;
                return generate_test_graph(params);
            },
            py::arg("family"), py::arg("n"), py::arg("p") = 0.1, py::arg("k") = 4, py::arg("beta") = 0.1,
            py::arg("seed") = 1)
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def_property_readonly("weighted", &Graph::weighted)
        .def("edges", &edge_array)
        .def("edge_weights",
             [](const Graph &g) {
                 std::vector<double> w(g.m());
                 for (edgeid e = 0; e < g.m(); ++e)
                     w[e] = g.edge_weight(e);
                 return to_array(w);
             })
        .def("is_connected", [](const Graph &g) { return is_connected(g); })
        .def("largest_component", [](const Graph &g) { return largest_connected_component(g).graph; })
        .def("save",
             [](const Graph &g, const std::string &path) {
                 std::ofstream f(path);
                 if (!f)
                     throw std::runtime_error("cannot write " + path);
                 write_edge_list(f, g);
             })
        .def("__repr__", [](const Graph &g) {
            std::ostringstream s;
            s << "Graph(n=" << g.n() << ", m=" << g.m() << (g.weighted() ? ", weighted" : "") << ")";
            return s.str();
        });

    m.def(
        "approx_diag",
        [](const Graph &g, double eps, std::optional<double> delta, double kappa, std::uint64_t seed, int threads,
           std::optional<node> pivot, bool use_bcc, const std::string &aggregation) {
            ApproxParams p;
            p.eps = eps;
            p.delta = delta;
            p.kappa = kappa;
            p.seed = seed;
            p.threads = threads;
            p.pivot = pivot;
            p.use_bcc = use_bcc;
            p.aggregation = parse_aggregation(aggregation);
            DiagEstimate est;
            {
                py::gil_scoped_release release;
                est = g.weighted() ? approx_diag_weighted(g, p) : approx_diag(g, p);
            }
            return estimate_dict(est);
        },
        py::arg("graph"), py::arg("eps") = 0.3, py::arg("delta") = py::none(), py::arg("kappa") = 0.3,
        py::arg("seed") = 1, py::arg("threads") = 0, py::arg("pivot") = py::none(), py::arg("use_bcc") = true,
        py::arg("aggregation") = "frequency",
        "Estimate diag(L^+) within +-eps with probability 1 - delta. Returns a dict with 'diag' and metadata.");

    m.def(
        "exact_diag", [](const Graph &g, std::size_t limit) { return to_array(DensePinv(g, limit).diag()); },
        py::arg("graph"), py::arg("limit") = default_oracle_limit(), "Dense diag(L^+) for small graphs.");

    m.def(
        "bekas_diag",
        [](const Graph &g, const std::string &method, std::uint64_t num_vectors, double solver_tol, std::uint64_t seed,
           int threads) {
            BaselineConfig c;
            c.method = parse_probe_method(method);
            c.num_vectors = num_vectors;
            c.solver_tol = solver_tol;
            c.seed = seed;
            c.threads = threads;
            BaselineResult r;
            {
                py::gil_scoped_release release;
                r = bekas_diag(g, c);
            }
            return to_array(r.diag);
        },
        py::arg("graph"), py::arg("method") = "random", py::arg("num_vectors") = 100, py::arg("solver_tol") = 1e-6,
        py::arg("seed") = 1, py::arg("threads") = 0);

    m.def("electrical_closeness", [](const std::vector<double> &d) { return to_array(electrical_closeness(d).values); },
          py::arg("diag"));
    m.def("electrical_farness", [](const std::vector<double> &d) { return to_array(electrical_farness(d).values); },
          py::arg("diag"));
    m.def("nrwb", [](const std::vector<double> &d) { return to_array(nrwb(d).values); }, py::arg("diag"));
    m.def("kirchhoff_index", [](const std::vector<double> &d) { return kirchhoff_index(d); }, py::arg("diag"));

    m.def(
        "spanning_edge_resistance",
        [](const Graph &g, double eps, std::optional<double> delta, std::uint64_t seed, int threads) {
            EdgeSamplingParams p;
            p.eps = eps;
            p.delta = delta;
            p.seed = seed;
            p.threads = threads;
            Scores s;
            {
                py::gil_scoped_release release;
                s = spanning_edge_resistance(g, p);
            }
            return scores_dict(s);
        },
        py::arg("graph"), py::arg("eps") = 0.1, py::arg("delta") = py::none(), py::arg("seed") = 1,
        py::arg("threads") = 0);

    m.def(
        "kirchhoff_edge_centrality",
        [](const Graph &g, double theta, double eps, std::uint64_t probes, std::uint64_t seed, int threads,
           bool oracle) {
            KirchhoffEdgeParams p;
            p.theta = theta;
            p.eps = eps;
            p.num_hutchinson = probes;
            p.seed = seed;
            p.threads = threads;
            p.oracle = oracle;
            Scores s;
            {
                py::gil_scoped_release release;
                s = kirchhoff_edge_centrality(g, p);
            }
            return scores_dict(s);
        },
        py::arg("graph"), py::arg("theta") = 0.5, py::arg("eps") = 0.1, py::arg("probes") = 0, py::arg("seed") = 1,
        py::arg("threads") = 0, py::arg("oracle") = false);

    m.def(
        "compare",
        [](const std::vector<double> &est, const std::vector<double> &ref, const std::vector<std::size_t> &ks) {
            return py::module_::import("json").attr("loads")(to_json(compare(est, ref, ks)).dump());
        },
        py::arg("estimate"), py::arg("reference"), py::arg("ks") = std::vector<std::size_t>{});

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the lapdiag command line in-process; returns (exit_code, stdout, stderr).");
}
