#include "tsdag/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tsdag/bif.hpp"
#include "tsdag/graph_algos.hpp"
#include "tsdag/serialize.hpp"
#include "tsdag/stats.hpp"

namespace tsdag {

void ExperimentConfig::validate() const {
    if (nodes < 2) throw std::invalid_argument("config: nodes must be at least 2");
    if (!(rho > 0 && rho <= 1)) throw std::invalid_argument("config: rho must be in (0, 1]");
    if (card < 2) throw std::invalid_argument("config: card must be at least 2");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("config: delta must be in (0, 1)");
    if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (max_samples < 1) throw std::invalid_argument("config: max_samples must be positive");
    if (algo != "exact" && algo != "practical" && algo != "random-baseline")
        throw std::invalid_argument("config: unknown algo '" + algo + "'");
}

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    if (j.contains("nodes")) c.nodes = j["nodes"].get<int>();
    if (j.contains("rho")) c.rho = j["rho"].get<double>();
    if (j.contains("card")) c.card = j["card"].get<int>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("algo")) c.algo = j["algo"].get<std::string>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("max_samples")) c.max_samples = j["max_samples"].get<int64_t>();
    if (j.contains("target_k")) c.target_k = j["target_k"].get<int>();
    if (j.contains("targets_file")) c.targets_file = j["targets_file"].get<std::string>();
    if (j.contains("bif_file")) c.bif_file = j["bif_file"].get<std::string>();
    if (j.contains("out_path")) c.out_path = j["out_path"].get<std::string>();
    if (j.contains("trace_every")) c.trace_every = j["trace_every"].get<int64_t>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    c.validate();
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    nlohmann::json j{{"nodes", c.nodes},      {"rho", c.rho},
                     {"card", c.card},        {"delta", c.delta},
                     {"algo", c.algo},        {"trials", c.trials},
                     {"seed", c.seed},        {"max_samples", c.max_samples},
                     {"targets_file", c.targets_file}, {"bif_file", c.bif_file},
                     {"out_path", c.out_path}, {"trace_every", c.trace_every}};
    if (c.target_k) j["target_k"] = *c.target_k;
    return j.dump(2);
}

MixedGraph random_chordal_dag(int n, double rho, Rng& rng) {
    if (n < 2) throw std::invalid_argument("random_chordal_dag: need at least 2 nodes");
    if (!(rho > 0 && rho <= 1)) throw std::invalid_argument("random_chordal_dag: rho must be in (0, 1]");
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    MixedGraph skel = MixedGraph::with_default_names(n);
    for (int j = 1; j < n; ++j) {
        int indeg = std::min(j, std::max(1, rng.binomial(j, rho)));
        std::vector<int> pred(order.begin(), order.begin() + j);
        for (int pick = 0; pick < indeg; ++pick) {
            int r = pick + rng.uniform_int(j - pick);
            std::swap(pred[pick], pred[r]);
            skel.add_undirected(pred[pick], order[j]);
        }
    }
    std::vector<int> elim(order.rbegin(), order.rend());
    MixedGraph filled = chordalize(skel, elim);
    MixedGraph dag(filled.names());
    for (auto [a, b] : filled.undirected_edges()) {
        if (rank[a] < rank[b])
            dag.add_directed(a, b);
        else
            dag.add_directed(b, a);
    }
    return dag;
}

DiscreteNet random_cpts(const MixedGraph& dag, const std::vector<int>& cards, Rng& rng) {
    if (!dag.is_dag()) throw std::invalid_argument("random_cpts: input must be a DAG");
    int n = dag.num_vertices();
    std::vector<Cpt> cpts(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> parents(dag.parents(v).begin(), dag.parents(v).end());
        int64_t rows = 1;
        for (int p : parents) rows *= cards[p];
        std::vector<double> table(rows * cards[v]);
        for (int64_t r = 0; r < rows; ++r) {
            double z = 0;
            for (int k = 0; k < cards[v]; ++k) {
                double x = rng.exponential();
                table[r * cards[v] + k] = x;
                z += x;
            }
            for (int k = 0; k < cards[v]; ++k) table[r * cards[v] + k] /= z;
        }
        cpts[v] = Cpt{std::move(parents), std::move(table)};
    }
    return DiscreteNet(dag, cards, std::move(cpts));
}

BaselineResult random_baseline(SamplingEnv& env, const MixedGraph& cpdag, const std::vector<int>& cards,
                               const TargetFamily& targets, int64_t budget, Rng& rng, const MixedGraph* truth,
                               double alpha, int64_t min_samples) {
    if (targets.sets.empty() && cpdag.num_undirected_edges() > 0)
        throw std::invalid_argument("random_baseline: empty target family");
    int n = cpdag.num_vertices();
    BaselineResult res;
    MixedGraph committed = cpdag;
    res.final_graph = committed;

    int m = static_cast<int>(targets.sets.size());
    std::vector<std::vector<Intervention>> realizations(m);
    for (int i = 0; i < m; ++i) realizations[i] = all_realizations(targets.sets[i], cards);
    // Pooled contingency tables: per target, per member u, per outside w,
    // counts[value assigned to u][observed w].
    std::vector<std::vector<std::vector<std::vector<std::vector<double>>>>> tables(m);
    for (int i = 0; i < m; ++i) {
        tables[i].resize(targets.sets[i].size());
        for (size_t ui = 0; ui < targets.sets[i].size(); ++ui) {
            int u = targets.sets[i][ui];
            tables[i][ui].resize(n);
            for (int w = 0; w < n; ++w)
                tables[i][ui][w].assign(cards[u], std::vector<double>(cards[w], 0.0));
        }
    }
    std::vector<int64_t> target_count(m, 0);

    auto commit = [&](int tail, int head) {
        committed.orient(tail, head);
        committed = apply_meek_rules(committed);
    };

    int current_shd = truth ? shd(committed, *truth) : -1;
    if (truth && current_shd == 0) res.samples_to_complete = 0;
    for (int64_t t = 1; t <= budget; ++t) {
        int ti = m > 0 ? rng.uniform_int(m) : 0;
        if (m == 0) break;
        const auto& reals = realizations[ti];
        const Intervention& iv = reals[rng.uniform_int(static_cast<int>(reals.size()))];
        std::vector<int> sample = env.draw(iv);
        ++target_count[ti];
        const auto& set = targets.sets[ti];
        for (size_t ui = 0; ui < set.size(); ++ui) {
            int uval = iv.values[ui];
            for (int w = 0; w < n; ++w)
                if (!std::binary_search(set.begin(), set.end(), w)) tables[ti][ui][w][uval][sample[w]] += 1;
        }
        bool committed_any = false;
        for (size_t ui = 0; ui < set.size(); ++ui) {
            int u = set[ui];
            for (int w = 0; w < n; ++w) {
                if (!committed.has_undirected(u, w)) continue;
                if (std::binary_search(set.begin(), set.end(), w)) continue;
                ChiSquareResult test = chi_square_independence(tables[ti][ui][w]);
                if (test.abstained) continue;
                if (test.p_value < alpha) {
                    commit(u, w);
                    committed_any = true;
                } else if (target_count[ti] >= min_samples) {
                    commit(w, u);
                    committed_any = true;
                }
            }
        }
        if (committed_any) {
            res.snapshots.emplace_back(t, committed);
            if (truth) current_shd = shd(committed, *truth);
        }
        res.rounds.push_back({t, ti, current_shd});
        if (truth && current_shd == 0 && res.samples_to_complete < 0) res.samples_to_complete = t;
    }
    res.final_graph = committed;
    return res;
}

namespace {

struct TrialOutput {
    std::string csv;
    TrialSummary summary;
    std::vector<std::pair<int64_t, int>> shd_steps;  // (round, shd) change points
    int64_t length = 0;
    int final_shd = -1;
};

TrialOutput run_one_trial(const ExperimentConfig& cfg, int trial, const DiscreteNet* fixed_net,
                          const TargetFamily* fixed_targets) {
    TrialOutput out;
    out.summary.trial = trial;
    Rng gen_rng(Rng::derive(cfg.seed, 3 * trial));
    uint64_t env_seed = Rng::derive(cfg.seed, 3 * trial + 1);
    Rng pick_rng(Rng::derive(cfg.seed, 3 * trial + 2));

    DiscreteNet net;
    if (fixed_net) {
        net = *fixed_net;
    } else {
        std::vector<int> cards(cfg.nodes, cfg.card);
        net = random_cpts(random_chordal_dag(cfg.nodes, cfg.rho, gen_rng), cards, gen_rng);
    }
    const MixedGraph& truth = net.graph();
    MixedGraph cpdag = cpdag_of(truth);
    Factor obs = joint(net);
    TargetFamily targets =
        fixed_targets ? *fixed_targets : graph_separating_system(cpdag, cfg.target_k);

    if (cfg.algo == "random-baseline") {
        NetEnv env(net, env_seed);
        BaselineResult base =
            random_baseline(env, cpdag, net.cards(), targets, cfg.max_samples, pick_rng, &truth);
        char buf[128];
        for (const auto& row : base.rounds) {
            if (cfg.trace_every > 1 && row.t % cfg.trace_every != 0 && row.t != cfg.max_samples) continue;
            std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,S%d,,%d,0\n", trial, static_cast<long long>(row.t),
                          static_cast<long long>(row.t), row.target, row.shd);
            out.csv += buf;
        }
        out.length = static_cast<int64_t>(base.rounds.size());
        out.final_shd = base.rounds.empty() ? (shd(cpdag, truth)) : base.rounds.back().shd;
        out.summary.terminated = base.samples_to_complete >= 0;
        out.summary.samples =
            base.samples_to_complete >= 0 ? base.samples_to_complete : static_cast<int64_t>(base.rounds.size());
        out.summary.final_shd = out.final_shd;
        int prev = -2;
        for (const auto& row : base.rounds)
            if (row.shd != prev) {
                out.shd_steps.emplace_back(row.t, row.shd);
                prev = row.shd;
            }
        return out;
    }

    Mode mode = cfg.algo == "exact" ? Mode::Exact : Mode::Practical;
    NetEnv env(net, env_seed);
    RunCaps caps;
    caps.max_rounds = cfg.max_samples;
    caps.trace_every = cfg.trace_every;
    caps.truth = &truth;
    DiscoveryResult res = run_discovery(env, cpdag, obs, net.cards(), targets, cfg.delta, mode, caps);
    out.csv = trace_to_csv(res, trial);
    out.length = res.stopping_time;
    out.final_shd = shd(res.chosen, truth);
    out.summary.terminated = res.terminated;
    out.summary.realizable = res.realizable;
    out.summary.samples = res.stopping_time;
    out.summary.final_shd = out.final_shd;
    int prev = -2;
    for (const auto& row : res.trace)
        if (row.shd != prev) {
            out.shd_steps.emplace_back(row.t, row.shd);
            prev = row.shd;
        }
    return out;
}

}  // namespace

BenchmarkOutput run_benchmark(const ExperimentConfig& cfg) {
    cfg.validate();
    DiscreteNet fixed_net;
    bool have_net = false;
    if (!cfg.bif_file.empty()) {
        std::ifstream in(cfg.bif_file);
        if (!in) throw std::runtime_error("cannot open BIF file " + cfg.bif_file);
        std::stringstream ss;
        ss << in.rdbuf();
        fixed_net = parse_bif(ss.str());
        have_net = true;
    }
    TargetFamily fixed_targets;
    bool have_targets = false;
    if (!cfg.targets_file.empty()) {
        if (!have_net) throw std::invalid_argument("a targets file requires a fixed network (--bif)");
        std::ifstream in(cfg.targets_file);
        if (!in) throw std::runtime_error("cannot open targets file " + cfg.targets_file);
        std::stringstream ss;
        ss << in.rdbuf();
        fixed_targets = target_family_from_json(ss.str(), fixed_net.graph());
        have_targets = true;
    }

    std::vector<TrialOutput> outputs(cfg.trials);
    std::vector<std::string> errors(cfg.trials);
    int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, cfg.trials));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
                try {
                    outputs[i] = run_one_trial(cfg, i, have_net ? &fixed_net : nullptr,
                                               have_targets ? &fixed_targets : nullptr);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& th : pool) th.join();

    BenchmarkOutput out;
    out.csv = "# tsdag benchmark csv v1\ntrial,t,samples,arm,d_t,shd,terminated\n";
    nlohmann::json trial_json = nlohmann::json::array();
    int64_t max_len = 1;
    for (int i = 0; i < cfg.trials; ++i) {
        if (!errors[i].empty()) {
            trial_json.push_back({{"trial", i}, {"error", errors[i]}});
            continue;
        }
        out.csv += outputs[i].csv;
        out.trials.push_back(outputs[i].summary);
        max_len = std::max(max_len, outputs[i].length);
        trial_json.push_back({{"trial", i},
                              {"terminated", outputs[i].summary.terminated},
                              {"realizable", outputs[i].summary.realizable},
                              {"samples", outputs[i].summary.samples},
                              {"final_shd", outputs[i].summary.final_shd}});
    }

    // Mean and two-standard-deviation band of the SHD per sample count,
    // holding each terminated trial at its final value.
    auto value_at = [](const TrialOutput& o, int64_t t) -> double {
        double v = static_cast<double>(o.final_shd);
        for (const auto& [tt, s] : o.shd_steps) {
            if (tt > t) break;
            v = s;
        }
        if (!o.shd_steps.empty() && t < o.shd_steps.front().first) return static_cast<double>(o.shd_steps.front().second);
        return v;
    };
    nlohmann::json samples_axis = nlohmann::json::array(), mean_arr = nlohmann::json::array(),
                   lo_arr = nlohmann::json::array(), hi_arr = nlohmann::json::array();
    int64_t step = std::max<int64_t>(1, max_len / 512);
    for (int64_t t = step; t <= max_len; t += step) {
        double mean = 0;
        int count = 0;
        for (int i = 0; i < cfg.trials; ++i) {
            if (!errors[i].empty()) continue;
            mean += value_at(outputs[i], t);
            ++count;
        }
        if (count == 0) break;
        mean /= count;
        double var = 0;
        for (int i = 0; i < cfg.trials; ++i) {
            if (!errors[i].empty()) continue;
            double dv = value_at(outputs[i], t) - mean;
            var += dv * dv;
        }
        double sd = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
        samples_axis.push_back(t);
        mean_arr.push_back(mean);
        lo_arr.push_back(mean - 2 * sd);
        hi_arr.push_back(mean + 2 * sd);
    }
    nlohmann::json summary;
    summary["config"] = nlohmann::json::parse(config_to_json(cfg));
    summary["trials"] = trial_json;
    summary["aggregate"] = {{"samples", samples_axis}, {"mean_shd", mean_arr},
                            {"band_low", lo_arr},      {"band_high", hi_arr}};
    out.summary_json = summary.dump(2) + "\n";
    return out;
}

}  // namespace tsdag
