#include <doctest.h>

#include <set>

#include "tsdag/graph_algos.hpp"
#include "tsdag/harness.hpp"
#include "test_util.hpp"

using namespace tsdag;
using test::make_graph;

TEST_CASE("full density produces the complete graph over some order") {
    Rng rng(1);
    MixedGraph dag = random_chordal_dag(5, 1.0, rng);
    CHECK(dag.num_directed_edges() == 10);
    CHECK(dag.is_dag());
}

TEST_CASE("generated instances are connected moral chordal DAGs") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + rng.uniform_int(7);
        double rho = 0.1 + 0.9 * rng.uniform();
        MixedGraph dag = random_chordal_dag(n, rho, rng);
        CHECK(dag.is_dag());
        MixedGraph skel = skeleton_of(dag);
        CHECK(is_chordal(skel));
        CHECK(skel.chain_components().size() == 1);  // connected
        CHECK(v_structures(dag).empty());            // moral
    }
    CHECK_THROWS(random_chordal_dag(1, 0.5, rng));
    CHECK_THROWS(random_chordal_dag(4, 0.0, rng));
}

TEST_CASE("random tables are positive rows on the simplex") {
    Rng rng(9);
    MixedGraph dag = random_chordal_dag(5, 0.5, rng);
    DiscreteNet net = random_cpts(dag, {2, 2, 2, 2, 2}, rng);
    for (int v = 0; v < 5; ++v) {
        const Cpt& c = net.cpt(v);
        int k = net.cards()[v];
        for (size_t r = 0; r * k < c.table.size(); ++r) {
            double s = 0;
            for (int i = 0; i < k; ++i) {
                CHECK(c.table[r * k + i] > 0.0);
                s += c.table[r * k + i];
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // identical seeds rebuild the identical net
    Rng r1(123), r2(123);
    DiscreteNet a = random_cpts(random_chordal_dag(4, 0.6, r1), {2, 2, 2, 2}, r1);
    DiscreteNet b = random_cpts(random_chordal_dag(4, 0.6, r2), {2, 2, 2, 2}, r2);
    CHECK(a == b);
}

TEST_CASE("baseline orients a deterministic effect quickly") {
    // one undirected edge; do(V1) flips V2 deterministically
    MixedGraph g = make_graph(2, {{0, 1}});
    DiscreteNet net(g, {2, 2}, {{{}, {0.5, 0.5}}, {{0}, {1.0, 0.0, 0.0, 1.0}}});
    MixedGraph cpdag = cpdag_of(g);
    TargetFamily fam;
    fam.sets = {{0}};
    NetEnv env(net, 3);
    Rng pick(4);
    BaselineResult res = random_baseline(env, cpdag, net.cards(), fam, 500, pick, &g);
    CHECK(res.samples_to_complete > 0);
    CHECK(res.samples_to_complete < 100);
    CHECK(res.final_graph == g);
}

TEST_CASE("baseline with no budget returns the input graph") {
    Rng rng(11);
    DiscreteNet net = test::random_binary_net(4, 0.5, rng);
    MixedGraph cpdag = cpdag_of(net.graph());
    TargetFamily fam = graph_separating_system(cpdag, std::nullopt);
    NetEnv env(net, 1);
    Rng pick(2);
    BaselineResult res = random_baseline(env, cpdag, net.cards(), fam, 0, pick, &net.graph());
    CHECK(res.final_graph == cpdag);
    CHECK(res.rounds.empty());
}

TEST_CASE("baseline commitments are monotone under the closure") {
    Rng rng(13);
    DiscreteNet net = test::random_binary_net(5, 0.6, rng);
    MixedGraph cpdag = cpdag_of(net.graph());
    if (cpdag.num_undirected_edges() == 0) return;
    TargetFamily fam = graph_separating_system(cpdag, std::nullopt);
    NetEnv env(net, 21);
    Rng pick(22);
    BaselineResult res = random_baseline(env, cpdag, net.cards(), fam, 2000, pick, &net.graph());
    const MixedGraph* prev = &cpdag;
    for (const auto& [t, g] : res.snapshots) {
        for (auto [a, b] : prev->directed_edges()) CHECK(g.has_directed(a, b));
        prev = &g;
    }
}

TEST_CASE("single practical benchmark trial ends at distance zero") {
    ExperimentConfig cfg;
    cfg.nodes = 3;
    cfg.rho = 1.0;
    cfg.delta = 0.1;
    cfg.algo = "practical";
    cfg.trials = 1;
    cfg.seed = 31;
    cfg.max_samples = 60000;
    cfg.trace_every = 1;
    cfg.threads = 1;
    BenchmarkOutput out = run_benchmark(cfg);
    REQUIRE(out.trials.size() == 1);
    CHECK(out.trials[0].terminated);
    CHECK(out.trials[0].final_shd == 0);
    // final CSV row carries distance zero and the terminated flag
    auto pos = out.csv.find_last_of('\n', out.csv.size() - 2);
    std::string last = out.csv.substr(pos + 1);
    CHECK(last.find(",0,1\n") != std::string::npos);
}

TEST_CASE("exact-mode benchmark trial recovers a dense 3-node instance") {
    ExperimentConfig cfg;
    cfg.nodes = 3;
    cfg.rho = 1.0;
    cfg.delta = 0.3;
    cfg.algo = "exact";
    cfg.trials = 1;
    cfg.seed = 9;
    cfg.max_samples = 120000;
    cfg.trace_every = 100;
    cfg.threads = 1;
    BenchmarkOutput out = run_benchmark(cfg);
    REQUIRE(out.trials.size() == 1);
    CHECK(out.trials[0].terminated);
    CHECK(out.trials[0].final_shd == 0);
}

TEST_CASE("benchmark output is byte-identical across invocations") {
    ExperimentConfig cfg;
    cfg.nodes = 4;
    cfg.rho = 0.6;
    cfg.delta = 0.25;
    cfg.algo = "practical";
    cfg.trials = 4;
    cfg.seed = 77;
    cfg.max_samples = 4000;
    cfg.trace_every = 10;
    cfg.threads = 4;
    BenchmarkOutput a = run_benchmark(cfg);
    cfg.threads = 2;  // thread count must not change the bytes
    BenchmarkOutput b = run_benchmark(cfg);
    CHECK(a.csv == b.csv);
    CHECK(a.summary_json == b.summary_json);
    CHECK(a.csv.find("trial,t,samples,arm,d_t,shd,terminated") != std::string::npos);
}

TEST_CASE("benchmark config validation and JSON round trip") {
    ExperimentConfig cfg;
    cfg.rho = 1.5;
    CHECK_THROWS(cfg.validate());
    cfg.rho = 0.5;
    cfg.algo = "nope";
    CHECK_THROWS(cfg.validate());
    cfg.algo = "exact";
    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.algo == cfg.algo);
    CHECK(back.rho == cfg.rho);
    CHECK(back.seed == cfg.seed);
}

TEST_CASE("baseline benchmark runs end to end") {
    ExperimentConfig cfg;
    cfg.nodes = 3;
    cfg.rho = 1.0;
    cfg.algo = "random-baseline";
    cfg.trials = 2;
    cfg.seed = 5;
    cfg.max_samples = 3000;
    cfg.trace_every = 50;
    cfg.threads = 2;
    BenchmarkOutput out = run_benchmark(cfg);
    CHECK(out.trials.size() == 2);
    CHECK(out.csv.find("S0") != std::string::npos);
}
