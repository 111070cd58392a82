#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tsdag/adahedge.hpp"
#include "tsdag/discrete_net.hpp"
#include "tsdag/effects.hpp"
#include "tsdag/factor.hpp"
#include "tsdag/graph.hpp"
#include "tsdag/separating.hpp"

namespace tsdag {

enum class Mode { Exact, Practical };

struct TrackerOptions {
    /// Model probabilities are floored at this value (then renormalized)
    /// before any divergence against them, so rewards stay finite.
    double prob_floor = 1e-9;
    /// Reward clip for the weight updates; defaults to the largest finite
    /// pairwise divergence between candidate distributions.
    std::optional<double> reward_cap;
    /// The exact variant refuses equivalence classes larger than this.
    int max_mec_members = 4096;
    int max_cut_edges = 20;
};

/// Concentration threshold ( x ceil(x ln t + 1) 2e / K )^K e^(1-x) with
/// K = n_actions * (joint_size - 1); the stopping rule fires when this drops
/// below delta inside the validity region x >= K.
double threshold_f(double x, int64_t t, int64_t n_actions, int64_t joint_size);
double log_threshold_f(double x, int64_t t, int64_t k_exponent);

/// Precomputed hypothesis structures shared by the tracker and the oracle
/// complexity diagnostics. Targets whose cut admits a single configuration
/// are pruned: their arms cannot distinguish anything.
struct ArmInfo {
    Intervention iv;
    int target = 0;       // index into candidate sets
    int realization = 0;  // index into Dom(S)
};

struct Hypotheses {
    std::vector<int> cards;
    int64_t joint_size = 1;
    std::vector<CandidateSet> per_target;
    std::vector<ArmInfo> arms;
    std::vector<std::vector<int>> arms_of_target;
    /// log p per (target, config, realization, outcome); raw keeps exact
    /// zeros as -inf for likelihood scoring, clip is floored+renormalized
    /// for divergences.
    std::vector<std::vector<std::vector<std::vector<double>>>> logp_raw, logp_clip;
    std::vector<int> pruned_targets;  // indices into the original family
    double reward_cap = 1.0;

    // Exact mode only.
    std::vector<MixedGraph> dags;
    std::vector<std::vector<int>> dag_config;  // [dag][target] -> config index

    int num_targets() const { return static_cast<int>(per_target.size()); }
    int num_arms() const { return static_cast<int>(arms.size()); }
};

Hypotheses build_hypotheses(const MixedGraph& cpdag, const Factor& obs, const std::vector<int>& cards,
                            const TargetFamily& family, Mode mode, const TrackerOptions& opts = {});

/// Sample source hiding the true DAG.
class SamplingEnv {
public:
    virtual ~SamplingEnv() = default;
    virtual std::vector<int> draw(const Intervention& iv) = 0;
};

class NetEnv final : public SamplingEnv {
public:
    NetEnv(const DiscreteNet& net, uint64_t seed) : net_(&net), rng_(seed) {}
    std::vector<int> draw(const Intervention& iv) override { return draw_sample(*net_, iv, rng_); }

private:
    const DiscreteNet* net_;
    Rng rng_;
};

/// All per-round state: counts, per-arm outcome tallies, weight and learning
/// rate state of the allocation optimizers, and the cumulative allocations
/// the matching rule tracks.
class Tracker {
public:
    Tracker(const Hypotheses* hyp, Mode mode, const TrackerOptions& opts = {});

    Mode mode() const { return mode_; }
    const Hypotheses& hypotheses() const { return *hyp_; }
    int64_t round() const { return t_; }
    int64_t count(int arm) const { return counts_[arm]; }
    double alloc_sum(int arm) const { return alloc_sum_[arm]; }

    /// One weight-update step: returns alpha_t (a point in the simplex over
    /// the arms) computed from the current weights, then feeds the optimizers
    /// their reward vectors. Does not touch the matching sums.
    std::vector<double> compute_allocation();
    /// Adds one allocation round to the per-arm running sums.
    void record_allocation(std::span<const double> alpha);
    /// Forced exploration below sqrt(t), otherwise allocation matching.
    int select_arm() const;
    /// Ingest one sample (full assignment) for an arm.
    void observe(int arm, std::span<const int> sample);

    /// Index of the most probable DAG (exact mode).
    int most_probable_dag() const;
    /// Most probable cut configuration per target (practical mode).
    std::vector<int> most_probable_configs() const;
    /// Information distance from the empirical distributions to the nearest
    /// alternative hypothesis; +inf when there is no alternative.
    double stopping_statistic() const;
    bool stop_condition(double d, double delta) const;

    /// N_t(s) * KL(empirical_s || candidate) in O(1) from running sums.
    double n_kl(int arm, int config) const;

private:
    const Hypotheses* hyp_;
    Mode mode_;
    TrackerOptions opts_;
    int64_t t_ = 0;
    std::vector<int64_t> counts_;
    std::vector<std::vector<int64_t>> outcome_counts_;
    std::vector<double> alloc_sum_;
    std::vector<double> ent_term_;                    // sum_v N(s,v) ln N(s,v)
    std::vector<std::vector<double>> loglik_raw_;     // [arm][config]
    std::vector<std::vector<double>> loglik_clip_;    // [arm][config]
    std::vector<std::vector<double>> agg_raw_;        // [target][config]
    std::vector<std::vector<double>> agg_clip_;       // [target][config]
    std::vector<AdaHedge> hedges_;                    // per target (practical) or single (exact)
};

struct TraceRow {
    int64_t t = 0;
    int arm = -1;
    double d = 0;
    int shd = -1;
};

struct RunCaps {
    int64_t max_rounds = 200000;
    int64_t trace_every = 1;
    bool check_tracking = false;
    const MixedGraph* truth = nullptr;  // enables SHD in traces when set
    bool record_trace = true;
};

struct DiscoveryResult {
    Mode mode = Mode::Practical;
    bool terminated = false;
    bool inconclusive = false;
    bool realizable = true;
    MixedGraph chosen;
    std::vector<CutConfig> chosen_configs;
    int64_t stopping_time = 0;
    double final_d = 0;
    int64_t tracking_violations = 0;     // the two per-arm allocation bounds
    int64_t exploration_violations = 0;  // forced-exploration count floor
    std::vector<std::string> arm_labels;
    std::vector<TraceRow> trace;
};

DiscoveryResult run_discovery(SamplingEnv& env, const MixedGraph& cpdag, const Factor& obs,
                              const std::vector<int>& cards, const TargetFamily& family, double delta, Mode mode,
                              const RunCaps& caps = {}, const TrackerOptions& opts = {});

/// Orient the CPDAG by a tuple of cut configurations; contradicting
/// orientations are skipped and reported through `conflict`.
MixedGraph apply_config_tuple(const MixedGraph& cpdag, const std::vector<const CutConfig*>& configs,
                              bool* conflict = nullptr);

struct OracleComplexity {
    double value = 0;
    std::vector<double> allocation;  // over the hypotheses' arms
    double duality_gap = 0;
};

/// Game value sup_alpha min_alt sum_s alpha_s KL(P*_s || P^alt_s): the
/// hardest-alternative information rate of the oracle allocation. The exact
/// variant ranges over the DAGs of the class, the lower variant over
/// single-target cut changes.
OracleComplexity oracle_complexity(const Hypotheses& hyp, const MixedGraph& truth);
OracleComplexity oracle_complexity_lower(const Hypotheses& hyp, const MixedGraph& truth);

}  // namespace tsdag
