#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsdag/bif.hpp"
#include "tsdag/graph_algos.hpp"
#include "tsdag/harness.hpp"
#include "tsdag/serialize.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct CommonArgs {
    tsdag::ExperimentConfig cfg;
    std::string config_file;
    int target_k = -1;

    void add_to(CLI::App* app, bool with_trials) {
        app->add_option("--config", config_file, "load settings from a JSON file first");
        app->add_option("--nodes", cfg.nodes, "number of variables for random instances");
        app->add_option("--rho", cfg.rho, "edge density parameter in (0, 1]");
        app->add_option("--card", cfg.card, "cardinality of every variable");
        app->add_option("--delta", cfg.delta, "confidence parameter in (0, 1)");
        app->add_option("--algo", cfg.algo, "exact | practical | random-baseline");
        app->add_option("--seed", cfg.seed, "master seed");
        app->add_option("--max-samples", cfg.max_samples, "interventional sample cap per run");
        app->add_option("--targets", cfg.targets_file, "target family JSON (defaults to auto construction)");
        app->add_option("--bif", cfg.bif_file, "network file instead of random instances");
        app->add_option("--out", cfg.out_path, "output path prefix");
        app->add_option("-k,--target-k", target_k, "size bound for constructed target sets");
        app->add_option("--trace-every", cfg.trace_every, "record every n-th round");
        app->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        if (with_trials) app->add_option("--trials", cfg.trials, "number of trials");
    }

    void finalize(CLI::App* app) {
        if (!config_file.empty()) {
            tsdag::ExperimentConfig cli = cfg;
            int cli_k = target_k;
            cfg = tsdag::config_from_json(slurp(config_file));
            // Explicit command line options win over the file.
            if (app->count("--nodes")) cfg.nodes = cli.nodes;
            if (app->count("--rho")) cfg.rho = cli.rho;
            if (app->count("--card")) cfg.card = cli.card;
            if (app->count("--delta")) cfg.delta = cli.delta;
            if (app->count("--algo")) cfg.algo = cli.algo;
            if (app->count("--seed")) cfg.seed = cli.seed;
            if (app->count("--max-samples")) cfg.max_samples = cli.max_samples;
            if (app->count("--targets")) cfg.targets_file = cli.targets_file;
            if (app->count("--bif")) cfg.bif_file = cli.bif_file;
            if (app->count("--out")) cfg.out_path = cli.out_path;
            if (app->count("--trace-every")) cfg.trace_every = cli.trace_every;
            if (app->count("--threads")) cfg.threads = cli.threads;
            if (app->count("--trials")) cfg.trials = cli.trials;
            if (app->count("--target-k")) target_k = cli_k;
        }
        if (app->count("--target-k") || target_k >= 0)
            if (target_k >= 0) cfg.target_k = target_k;
        cfg.validate();
    }
};

tsdag::DiscreteNet instance_net(const tsdag::ExperimentConfig& cfg, uint64_t stream) {
    if (!cfg.bif_file.empty()) return tsdag::parse_bif(slurp(cfg.bif_file));
    tsdag::Rng rng(tsdag::Rng::derive(cfg.seed, stream));
    std::vector<int> cards(cfg.nodes, cfg.card);
    return tsdag::random_cpts(tsdag::random_chordal_dag(cfg.nodes, cfg.rho, rng), cards, rng);
}

int cmd_generate(const tsdag::ExperimentConfig& cfg) {
    tsdag::DiscreteNet net = instance_net(cfg, 0);
    tsdag::MixedGraph cpdag = tsdag::cpdag_of(net.graph());
    tsdag::TargetFamily targets = tsdag::graph_separating_system(cpdag, cfg.target_k);
    spill(cfg.out_path + ".bif", tsdag::serialize_bif(net));
    spill(cfg.out_path + ".cpdag.txt", tsdag::to_edge_list(cpdag));
    spill(cfg.out_path + ".dag.txt", tsdag::to_edge_list(net.graph()));
    spill(cfg.out_path + ".targets.json", tsdag::target_family_to_json(targets, cpdag));
    std::cout << "wrote " << cfg.out_path << ".{bif,cpdag.txt,dag.txt,targets.json}\n";
    return 0;
}

int cmd_run(const tsdag::ExperimentConfig& cfg, const std::string& dump_candidates) {
    tsdag::DiscreteNet net = instance_net(cfg, 0);
    const tsdag::MixedGraph& truth = net.graph();
    tsdag::MixedGraph cpdag = tsdag::cpdag_of(truth);
    tsdag::Factor obs = tsdag::joint(net);
    tsdag::TargetFamily targets =
        cfg.targets_file.empty() ? tsdag::graph_separating_system(cpdag, cfg.target_k)
                                 : tsdag::target_family_from_json(slurp(cfg.targets_file), cpdag);

    if (!dump_candidates.empty()) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& s : targets.sets) {
            tsdag::CandidateSet cs = tsdag::candidate_distributions(cpdag, s, obs, net.cards());
            nlohmann::json entry;
            nlohmann::json names = nlohmann::json::array();
            for (int v : cs.target) names.push_back(cpdag.name(v));
            entry["target"] = names;
            entry["dropped_configs"] = cs.dropped_configs;
            nlohmann::json configs = nlohmann::json::array();
            for (size_t c = 0; c < cs.configs.size(); ++c) {
                nlohmann::json jc;
                nlohmann::json edges = nlohmann::json::array();
                for (auto [a, b] : cs.configs[c].oriented)
                    edges.push_back(cpdag.name(a) + " -> " + cpdag.name(b));
                jc["cut"] = edges;
                nlohmann::json dists = nlohmann::json::array();
                for (const auto& f : cs.dists[c]) dists.push_back(f.values());
                jc["distributions"] = dists;
                configs.push_back(jc);
            }
            entry["configs"] = configs;
            all.push_back(entry);
        }
        spill(dump_candidates, all.dump(2) + "\n");
    }

    tsdag::Mode mode = cfg.algo == "exact" ? tsdag::Mode::Exact : tsdag::Mode::Practical;
    if (cfg.algo == "random-baseline") {
        tsdag::NetEnv env(net, tsdag::Rng::derive(cfg.seed, 1));
        tsdag::Rng pick(tsdag::Rng::derive(cfg.seed, 2));
        tsdag::BaselineResult res =
            tsdag::random_baseline(env, cpdag, net.cards(), targets, cfg.max_samples, pick, &truth);
        nlohmann::json j;
        j["mode"] = "random-baseline";
        j["samples_to_complete"] = res.samples_to_complete;
        j["final_shd"] = res.rounds.empty() ? tsdag::shd(cpdag, truth) : res.rounds.back().shd;
        j["rounds"] = res.rounds.size();
        std::string text = j.dump(2) + "\n";
        if (cfg.out_path.empty() || cfg.out_path == "-")
            std::cout << text;
        else
            spill(cfg.out_path + ".result.json", text);
        return 0;
    }
    tsdag::NetEnv env(net, tsdag::Rng::derive(cfg.seed, 1));
    tsdag::RunCaps caps;
    caps.max_rounds = cfg.max_samples;
    caps.trace_every = cfg.trace_every;
    caps.truth = &truth;
    tsdag::DiscoveryResult res =
        tsdag::run_discovery(env, cpdag, obs, net.cards(), targets, cfg.delta, mode, caps);
    std::string text = tsdag::discovery_result_to_json(res, cpdag);
    if (cfg.out_path.empty() || cfg.out_path == "-")
        std::cout << text;
    else
        spill(cfg.out_path + ".result.json", text);
    std::cerr << (res.terminated ? "terminated" : "inconclusive") << " after " << res.stopping_time
              << " samples; shd to truth " << tsdag::shd(res.chosen, truth) << "\n";
    return 0;
}

int cmd_benchmark(const tsdag::ExperimentConfig& cfg) {
    tsdag::BenchmarkOutput out = tsdag::run_benchmark(cfg);
    spill(cfg.out_path + ".csv", out.csv);
    spill(cfg.out_path + ".summary.json", out.summary_json);
    int done = 0, wrong = 0;
    for (const auto& t : out.trials) {
        if (t.terminated) ++done;
        if (t.terminated && t.final_shd != 0) ++wrong;
    }
    std::cout << "trials " << out.trials.size() << ", terminated " << done << ", wrong " << wrong << "\n"
              << "wrote " << cfg.out_path << ".csv and " << cfg.out_path << ".summary.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive interventional discovery of causal DAGs over discrete Bayesian networks"};
    app.require_subcommand(1);

    CommonArgs gen_args, run_args, bench_args;
    std::string dump_candidates;

    CLI::App* gen = app.add_subcommand("generate", "emit a network, its CPDAG and a target family");
    gen_args.add_to(gen, false);
    CLI::App* run = app.add_subcommand("run", "one discovery run, JSON result");
    run_args.add_to(run, false);
    run->add_option("--dump-candidates", dump_candidates, "debug export of candidate distributions");
    CLI::App* bench = app.add_subcommand("benchmark", "batch trials, CSV plus JSON summary");
    bench_args.add_to(bench, true);

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen->parsed()) {
            gen_args.finalize(gen);
            return cmd_generate(gen_args.cfg);
        }
        if (run->parsed()) {
            run_args.finalize(run);
            return cmd_run(run_args.cfg, dump_candidates);
        }
        bench_args.finalize(bench);
        return cmd_benchmark(bench_args.cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
