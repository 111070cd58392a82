#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsdag/bif.hpp"
#include "tsdag/effects.hpp"
#include "tsdag/graph_algos.hpp"
#include "tsdag/harness.hpp"
#include "tsdag/serialize.hpp"
#include "tsdag/tracker.hpp"

namespace py = pybind11;
using namespace tsdag;

namespace {

TargetFamily family_from_lists(const MixedGraph& g, const std::vector<std::vector<std::string>>& sets) {
    TargetFamily fam;
    for (const auto& names : sets) {
        std::vector<int> s;
        for (const auto& n : names) {
            int v = g.index_of(n);
            if (v < 0) throw std::invalid_argument("unknown vertex " + n);
            s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        fam.sets.push_back(std::move(s));
    }
    return fam;
}

std::vector<std::vector<std::string>> family_to_lists(const MixedGraph& g, const TargetFamily& fam) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : fam.sets) {
        std::vector<std::string> names;
        for (int v : s) names.push_back(g.name(v));
        out.push_back(std::move(names));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_tsdag, m) {
    m.doc() = "Adaptive interventional discovery of causal DAGs over discrete Bayesian networks";

    py::class_<MixedGraph>(m, "MixedGraph")
        .def(py::init<std::vector<std::string>>())
        .def_static("with_default_names", &MixedGraph::with_default_names)
        .def("num_vertices", &MixedGraph::num_vertices)
        .def("names", &MixedGraph::names)
        .def("index_of", [](const MixedGraph& g, const std::string& n) { return g.index_of(n); })
        .def("add_directed", &MixedGraph::add_directed)
        .def("add_undirected", &MixedGraph::add_undirected)
        .def("has_directed", &MixedGraph::has_directed)
        .def("has_undirected", &MixedGraph::has_undirected)
        .def("directed_edges", &MixedGraph::directed_edges)
        .def("undirected_edges", &MixedGraph::undirected_edges)
        .def("is_dag", &MixedGraph::is_dag)
        .def("__eq__", [](const MixedGraph& a, const MixedGraph& b) { return a == b; })
        .def("__repr__", [](const MixedGraph& g) {
            return "<MixedGraph " + std::to_string(g.num_vertices()) + " vertices, " +
                   std::to_string(g.num_directed_edges()) + " directed, " +
                   std::to_string(g.num_undirected_edges()) + " undirected>";
        });

    m.def("apply_meek_rules", [](const MixedGraph& g) { return apply_meek_rules(g); });
    m.def("cpdag_of", &cpdag_of);
    m.def("enumerate_mec", &enumerate_mec, py::arg("graph"), py::arg("max_undirected") = 20);
    m.def("pco", [](const MixedGraph& g, const std::vector<int>& s) { return pco(g, s).buckets; });
    m.def("shd", &shd);
    m.def("is_chordal", &is_chordal);
    m.def("parse_edge_list", &parse_edge_list);
    m.def("to_edge_list", &to_edge_list);

    py::class_<Factor>(m, "Factor")
        .def("scope", &Factor::scope)
        .def("cards", &Factor::cards)
        .def("values", [](const Factor& f) { return f.values(); });

    py::class_<DiscreteNet>(m, "DiscreteNet")
        .def("graph", &DiscreteNet::graph)
        .def("cards", &DiscreteNet::cards)
        .def("num_vars", &DiscreteNet::num_vars);

    m.def("parse_bif", &parse_bif);
    m.def("serialize_bif", &serialize_bif, py::arg("net"), py::arg("name") = "net");
    m.def("joint", [](const DiscreteNet& net) { return joint(net); });
    m.def("interventional",
          [](const DiscreteNet& net, const std::vector<int>& targets, const std::vector<int>& values) {
              return interventional(net, Intervention{targets, values});
          });
    m.def("kl_divergence", &kl_divergence);
    m.def("draw_samples",
          [](const DiscreteNet& net, const std::vector<int>& targets, const std::vector<int>& values,
             uint64_t seed, int count) {
              Rng rng(seed);
              std::vector<std::vector<int>> out;
              for (int i = 0; i < count; ++i) out.push_back(draw_sample(net, {targets, values}, rng));
              return out;
          },
          py::arg("net"), py::arg("targets"), py::arg("values"), py::arg("seed"), py::arg("count") = 1);

    m.def("random_instance",
          [](int nodes, double rho, int card, uint64_t seed) {
              Rng rng(seed);
              return random_cpts(random_chordal_dag(nodes, rho, rng), std::vector<int>(nodes, card), rng);
          },
          py::arg("nodes"), py::arg("rho"), py::arg("card") = 2, py::arg("seed") = 1);

    m.def("graph_separating_system",
          [](const MixedGraph& cpdag, std::optional<int> k) {
              return family_to_lists(cpdag, graph_separating_system(cpdag, k));
          },
          py::arg("cpdag"), py::arg("k") = std::nullopt);
    m.def("nk_separating_system", [](int n, int k) { return nk_separating_system(n, k).sets; });

    m.def("identify_effect",
          [](const MixedGraph& g, const std::vector<int>& x, const std::vector<int>& xv,
             const std::vector<int>& y, const Factor& obs) { return identify_effect(g, x, xv, y, obs); });
    m.def("enumerate_cut_configs", [](const MixedGraph& g, const std::vector<int>& s) {
        std::vector<std::pair<std::vector<std::pair<int, int>>, MixedGraph>> out;
        for (auto& [cfg, closure] : enumerate_cut_configs(g, s)) out.emplace_back(cfg.oriented, closure);
        return out;
    });

    py::class_<DiscoveryResult>(m, "DiscoveryResult")
        .def_readonly("terminated", &DiscoveryResult::terminated)
        .def_readonly("inconclusive", &DiscoveryResult::inconclusive)
        .def_readonly("realizable", &DiscoveryResult::realizable)
        .def_readonly("stopping_time", &DiscoveryResult::stopping_time)
        .def_readonly("final_d", &DiscoveryResult::final_d)
        .def_readonly("chosen", &DiscoveryResult::chosen)
        .def("__repr__", [](const DiscoveryResult& r) {
            return std::string("<DiscoveryResult ") + (r.terminated ? "terminated" : "inconclusive") +
                   " after " + std::to_string(r.stopping_time) + " samples>";
        });

    m.def("run_discovery",
          [](const DiscreteNet& net, double delta, const std::string& mode, uint64_t seed,
             int64_t max_samples, const std::vector<std::vector<std::string>>& targets) {
              MixedGraph cpdag = cpdag_of(net.graph());
              Factor obs = joint(net);
              TargetFamily fam = targets.empty() ? graph_separating_system(cpdag, std::nullopt)
                                                 : family_from_lists(cpdag, targets);
              NetEnv env(net, seed);
              RunCaps caps;
              caps.max_rounds = max_samples;
              caps.truth = &net.graph();
              return run_discovery(env, cpdag, obs, net.cards(), fam, delta,
                                   mode == "exact" ? Mode::Exact : Mode::Practical, caps);
          },
          py::arg("net"), py::arg("delta") = 0.1, py::arg("mode") = "practical", py::arg("seed") = 1,
          py::arg("max_samples") = 200000, py::arg("targets") = std::vector<std::vector<std::string>>{});

    m.def("oracle_rates",
          [](const DiscreteNet& net, const std::vector<std::vector<std::string>>& targets) {
              MixedGraph cpdag = cpdag_of(net.graph());
              Factor obs = joint(net);
              TargetFamily fam = targets.empty() ? graph_separating_system(cpdag, std::nullopt)
                                                 : family_from_lists(cpdag, targets);
              Hypotheses hyp = build_hypotheses(cpdag, obs, net.cards(), fam, Mode::Exact);
              OracleComplexity c = oracle_complexity(hyp, net.graph());
              OracleComplexity lo = oracle_complexity_lower(hyp, net.graph());
              return py::make_tuple(c.value, lo.value, c.allocation);
          },
          py::arg("net"), py::arg("targets") = std::vector<std::vector<std::string>>{},
          "exact and per-cut lower information rates of the oracle allocation");

    m.def("threshold_f", &threshold_f, py::arg("x"), py::arg("t"), py::arg("n_actions"),
          py::arg("joint_size"));

    m.def("run_benchmark", [](const std::string& config_json) {
        BenchmarkOutput out = run_benchmark(config_from_json(config_json));
        return py::make_tuple(out.csv, out.summary_json);
    });
}
