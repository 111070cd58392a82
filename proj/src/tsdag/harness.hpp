#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsdag/discrete_net.hpp"
#include "tsdag/graph.hpp"
#include "tsdag/separating.hpp"
#include "tsdag/tracker.hpp"

namespace tsdag {

struct ExperimentConfig {
    int nodes = 4;
    double rho = 0.5;
    int card = 2;
    double delta = 0.1;
    std::string algo = "practical";  // exact | practical | random-baseline
    int trials = 50;
    uint64_t seed = 1;
    int64_t max_samples = 20000;
    std::optional<int> target_k;
    std::string targets_file;  // empty = construct automatically
    std::string bif_file;      // empty = random instance per trial
    std::string out_path = "benchmark";
    int64_t trace_every = 1;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

/// Connected moral DAG over a random order: node j picks
/// max(1, Binomial(j-1, rho)) parents among its predecessors, then the
/// skeleton is chordalized by eliminating in reverse order and the fill
/// edges are oriented along the order. The CPDAG of the result is its
/// skeleton (no unshielded colliders survive).
MixedGraph random_chordal_dag(int n, double rho, Rng& rng);

/// CPT rows drawn uniformly from the simplex (Dirichlet with unit weights),
/// strictly positive almost surely.
DiscreteNet random_cpts(const MixedGraph& dag, const std::vector<int>& cards, Rng& rng);

struct BaselineRound {
    int64_t t = 0;
    int target = -1;
    int shd = -1;
};

struct BaselineResult {
    std::vector<BaselineRound> rounds;
    MixedGraph final_graph;
    /// Estimate whenever an orientation was committed, keyed by round.
    std::vector<std::pair<int64_t, MixedGraph>> snapshots;
    int64_t samples_to_complete = -1;  // first round with zero distance to the truth
};

/// Uniform-random interventions over the target family; each still-undirected
/// cut edge u -- w (u in S) is committed to u -> w once the pooled samples of
/// S show dependence between the assigned u and the observed w (Pearson test
/// at `alpha`), and to w -> u once independence survives `min_samples`
/// pooled samples. Orientation rules are closed after each commitment.
BaselineResult random_baseline(SamplingEnv& env, const MixedGraph& cpdag, const std::vector<int>& cards,
                               const TargetFamily& targets, int64_t budget, Rng& rng,
                               const MixedGraph* truth = nullptr, double alpha = 0.05,
                               int64_t min_samples = 30);

struct TrialSummary {
    int trial = 0;
    bool terminated = false;
    bool realizable = true;
    int64_t samples = 0;
    int final_shd = -1;
};

struct BenchmarkOutput {
    std::string csv;
    std::string summary_json;
    std::vector<TrialSummary> trials;
};

/// Batch experiment: per trial, generate or load the instance, run the
/// selected algorithm with the sample cap and log one CSV row per recorded
/// round. Byte-identical output for identical config and seed.
BenchmarkOutput run_benchmark(const ExperimentConfig& config);

}  // namespace tsdag
