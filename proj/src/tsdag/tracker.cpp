#include "tsdag/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tsdag/graph_algos.hpp"
#include "tsdag/matrix_game.hpp"

namespace tsdag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlnx(int64_t k) { return k <= 0 ? 0.0 : static_cast<double>(k) * std::log(static_cast<double>(k)); }

// KL between two candidate rows given their clipped log tables.
double kl_from_logs(const std::vector<double>& lp, const std::vector<double>& lq) {
    double kl = 0;
    for (size_t i = 0; i < lp.size(); ++i) kl += std::exp(lp[i]) * (lp[i] - lq[i]);
    return std::max(0.0, kl);
}

}  // namespace

double log_threshold_f(double x, int64_t t, int64_t k_exponent) {
    if (x <= 0) throw std::invalid_argument("threshold_f: x must be positive");
    if (k_exponent <= 0) throw std::invalid_argument("threshold_f: nonpositive exponent");
    if (std::isinf(x)) return -kInf;
    double lnt = std::log(static_cast<double>(std::max<int64_t>(t, 1)));
    double ceil_term = std::ceil(x * lnt + 1.0);
    double k = static_cast<double>(k_exponent);
    return k * (std::log(x) + std::log(ceil_term) + std::log(2.0) + 1.0 - std::log(k)) + 1.0 - x;
}

double threshold_f(double x, int64_t t, int64_t n_actions, int64_t joint_size) {
    return std::exp(log_threshold_f(x, t, n_actions * (joint_size - 1)));
}

Hypotheses build_hypotheses(const MixedGraph& cpdag, const Factor& obs, const std::vector<int>& cards,
                            const TargetFamily& family, Mode mode, const TrackerOptions& opts) {
    int n = cpdag.num_vertices();
    if (static_cast<int>(cards.size()) != n) throw std::invalid_argument("build_hypotheses: bad cardinalities");
    if (static_cast<int>(obs.scope().size()) != n || !obs.is_distribution(1e-6))
        throw std::invalid_argument("build_hypotheses: observational factor must be a joint distribution");
    if (!is_valid_mpdag(cpdag)) throw std::invalid_argument("build_hypotheses: input is not a valid CPDAG");

    Hypotheses hyp;
    hyp.cards = cards;
    for (int c : cards) hyp.joint_size *= c;

    for (size_t fi = 0; fi < family.sets.size(); ++fi) {
        CandidateSet cs = candidate_distributions(cpdag, family.sets[fi], obs, cards);
        if (cs.configs.size() <= 1) {
            hyp.pruned_targets.push_back(static_cast<int>(fi));
            continue;
        }
        int tau = hyp.num_targets();
        hyp.per_target.push_back(std::move(cs));
        const CandidateSet& set = hyp.per_target.back();
        auto realizations = all_realizations(set.target, cards);
        hyp.arms_of_target.emplace_back();
        for (size_t r = 0; r < realizations.size(); ++r) {
            hyp.arms_of_target.back().push_back(hyp.num_arms());
            hyp.arms.push_back({realizations[r], tau, static_cast<int>(r)});
        }
    }

    // Log tables: raw for likelihood scores, floored+renormalized for KL.
    hyp.logp_raw.resize(hyp.num_targets());
    hyp.logp_clip.resize(hyp.num_targets());
    double max_pair_kl = 0;
    for (int tau = 0; tau < hyp.num_targets(); ++tau) {
        const CandidateSet& set = hyp.per_target[tau];
        size_t n_cfg = set.configs.size(), n_real = set.dists[0].size();
        hyp.logp_raw[tau].assign(n_cfg, {});
        hyp.logp_clip[tau].assign(n_cfg, {});
        for (size_t c = 0; c < n_cfg; ++c) {
            hyp.logp_raw[tau][c].resize(n_real);
            hyp.logp_clip[tau][c].resize(n_real);
            for (size_t r = 0; r < n_real; ++r) {
                const Factor& f = set.dists[c][r];
                auto& raw = hyp.logp_raw[tau][c][r];
                auto& clip = hyp.logp_clip[tau][c][r];
                raw.resize(f.size());
                clip.resize(f.size());
                double z = 0;
                for (int64_t i = 0; i < f.size(); ++i) z += std::max(f[i], opts.prob_floor);
                for (int64_t i = 0; i < f.size(); ++i) {
                    raw[i] = f[i] > 0 ? std::log(f[i]) : -kInf;
                    clip[i] = std::log(std::max(f[i], opts.prob_floor) / z);
                }
            }
        }
        for (size_t c1 = 0; c1 < n_cfg; ++c1)
            for (size_t c2 = 0; c2 < n_cfg; ++c2)
                for (size_t r = 0; c1 != c2 && r < n_real; ++r)
                    max_pair_kl = std::max(max_pair_kl, kl_from_logs(hyp.logp_clip[tau][c1][r],
                                                                     hyp.logp_clip[tau][c2][r]));
    }
    hyp.reward_cap = opts.reward_cap.value_or(std::max(max_pair_kl, 1e-6));

    if (mode == Mode::Exact) {
        hyp.dags = enumerate_mec(cpdag, opts.max_cut_edges);
        if (static_cast<int>(hyp.dags.size()) > opts.max_mec_members)
            throw std::invalid_argument("exact mode: the equivalence class has " +
                                        std::to_string(hyp.dags.size()) + " members, above the limit of " +
                                        std::to_string(opts.max_mec_members) +
                                        "; use the practical variant for instances of this size");
        std::vector<std::map<CutConfig, int>> lookup(hyp.num_targets());
        for (int tau = 0; tau < hyp.num_targets(); ++tau)
            for (size_t c = 0; c < hyp.per_target[tau].configs.size(); ++c)
                lookup[tau][hyp.per_target[tau].configs[c]] = static_cast<int>(c);
        for (const auto& dag : hyp.dags) {
            std::vector<int> cfg(hyp.num_targets());
            for (int tau = 0; tau < hyp.num_targets(); ++tau) {
                auto it = lookup[tau].find(cut_config_of(dag, hyp.per_target[tau].target));
                if (it == lookup[tau].end())
                    throw std::logic_error("build_hypotheses: class member with unenumerated cut configuration");
                cfg[tau] = it->second;
            }
            hyp.dag_config.push_back(std::move(cfg));
        }
    }
    return hyp;
}

Tracker::Tracker(const Hypotheses* hyp, Mode mode, const TrackerOptions& opts)
    : hyp_(hyp), mode_(mode), opts_(opts) {
    int arms = hyp_->num_arms();
    if (arms == 0) throw std::invalid_argument("Tracker: no arms");
    if (mode_ == Mode::Exact && hyp_->dags.empty())
        throw std::invalid_argument("Tracker: exact mode needs enumerated class members");
    counts_.assign(arms, 0);
    alloc_sum_.assign(arms, 0.0);
    ent_term_.assign(arms, 0.0);
    outcome_counts_.resize(arms);
    loglik_raw_.resize(arms);
    loglik_clip_.resize(arms);
    for (int a = 0; a < arms; ++a) {
        const ArmInfo& info = hyp_->arms[a];
        size_t outcomes = hyp_->logp_raw[info.target][0][info.realization].size();
        size_t n_cfg = hyp_->per_target[info.target].configs.size();
        outcome_counts_[a].assign(outcomes, 0);
        loglik_raw_[a].assign(n_cfg, 0.0);
        loglik_clip_[a].assign(n_cfg, 0.0);
    }
    for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
        agg_raw_.emplace_back(hyp_->per_target[tau].configs.size(), 0.0);
        agg_clip_.emplace_back(hyp_->per_target[tau].configs.size(), 0.0);
    }
    if (mode_ == Mode::Exact) {
        hedges_.emplace_back(arms);
    } else {
        for (int tau = 0; tau < hyp_->num_targets(); ++tau)
            hedges_.emplace_back(static_cast<int>(hyp_->arms_of_target[tau].size()));
    }
}

void Tracker::observe(int arm, std::span<const int> sample) {
    const ArmInfo& info = hyp_->arms[arm];
    const CandidateSet& set = hyp_->per_target[info.target];
    // Outcome index over V \ S, row-major in ascending variable order; the
    // candidate factors share this layout.
    const Factor& ref = set.dists[0][info.realization];
    int64_t outcome = ref.flat_index_global(sample);
    int64_t k = outcome_counts_[arm][outcome]++;
    ent_term_[arm] += xlnx(k + 1) - xlnx(k);
    ++counts_[arm];
    ++t_;
    for (size_t c = 0; c < set.configs.size(); ++c) {
        double lr = hyp_->logp_raw[info.target][c][info.realization][outcome];
        double lc = hyp_->logp_clip[info.target][c][info.realization][outcome];
        loglik_raw_[arm][c] += lr;
        loglik_clip_[arm][c] += lc;
        agg_raw_[info.target][c] += lr;
        agg_clip_[info.target][c] += lc;
    }
}

double Tracker::n_kl(int arm, int config) const {
    if (counts_[arm] == 0) return 0.0;
    return ent_term_[arm] - xlnx(counts_[arm]) - loglik_clip_[arm][config];
}

int Tracker::most_probable_dag() const {
    int best = 0;
    double best_score = -kInf;
    for (size_t d = 0; d < hyp_->dags.size(); ++d) {
        double s = 0;
        for (int tau = 0; tau < hyp_->num_targets(); ++tau) s += agg_raw_[tau][hyp_->dag_config[d][tau]];
        if (s > best_score) {
            best_score = s;
            best = static_cast<int>(d);
        }
    }
    return best;
}

std::vector<int> Tracker::most_probable_configs() const {
    std::vector<int> out(hyp_->num_targets(), 0);
    for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
        double best = -kInf;
        for (size_t c = 0; c < agg_raw_[tau].size(); ++c)
            if (agg_raw_[tau][c] > best) {
                best = agg_raw_[tau][c];
                out[tau] = static_cast<int>(c);
            }
    }
    return out;
}

double Tracker::stopping_statistic() const {
    if (mode_ == Mode::Exact) {
        if (hyp_->dags.size() <= 1) return kInf;
        int star = most_probable_dag();
        double best = kInf;
        for (size_t d = 0; d < hyp_->dags.size(); ++d) {
            if (static_cast<int>(d) == star) continue;
            double total = 0;
            for (int a = 0; a < hyp_->num_arms(); ++a)
                total += n_kl(a, hyp_->dag_config[d][hyp_->arms[a].target]);
            best = std::min(best, total);
        }
        return best;
    }
    // Practical: smallest total empirical-to-model information over the
    // per-target configuration tuples other than the argmax tuple. The
    // per-target sums decompose, so the minimum either deviates wherever a
    // non-argmax configuration already fits better (possible only when an
    // observed outcome hits a model zero), or pays the cheapest single-target
    // switch.
    auto stars = most_probable_configs();
    double free_total = 0;   // sum of unrestricted per-target minima
    double min_gap = kInf;   // cheapest forced deviation when the free
                             // minimum coincides with the argmax everywhere
    bool deviates = false;
    for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
        double best = 0;
        for (int a : hyp_->arms_of_target[tau]) best += n_kl(a, stars[tau]);
        double alt = kInf;
        for (size_t c = 0; c < agg_clip_[tau].size(); ++c) {
            if (static_cast<int>(c) == stars[tau]) continue;
            double s = 0;
            for (int a : hyp_->arms_of_target[tau]) s += n_kl(a, static_cast<int>(c));
            alt = std::min(alt, s);
        }
        if (alt < best) deviates = true;
        free_total += std::min(best, alt);
        min_gap = std::min(min_gap, alt - best);
    }
    if (std::isinf(min_gap)) return kInf;
    return deviates ? free_total : free_total + min_gap;
}

bool Tracker::stop_condition(double d, double delta) const {
    int64_t k = static_cast<int64_t>(hyp_->num_arms()) * (hyp_->joint_size - 1);
    if (std::isinf(d)) return true;
    if (d < static_cast<double>(k)) return false;
    return log_threshold_f(d, t_, k) < std::log(delta);
}

std::vector<double> Tracker::compute_allocation() {
    int arms = hyp_->num_arms();
    std::vector<double> alpha(arms, 0.0);
    double cap = hyp_->reward_cap;
    auto clip = [cap](double x) { return std::clamp(x, 0.0, cap); };

    if (mode_ == Mode::Exact) {
        std::vector<double> cur = hedges_[0].weights();
        int star = most_probable_dag();
        // Weighted divergence per (target, config), then per class member.
        std::vector<std::vector<double>> wkl(hyp_->num_targets());
        for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
            wkl[tau].assign(hyp_->per_target[tau].configs.size(), 0.0);
            for (int a : hyp_->arms_of_target[tau])
                if (counts_[a] > 0)
                    for (size_t c = 0; c < wkl[tau].size(); ++c)
                        wkl[tau][c] += cur[a] * (n_kl(a, static_cast<int>(c)) / counts_[a]);
        }
        int nearest = -1;
        double nearest_val = kInf;
        for (size_t d = 0; d < hyp_->dags.size(); ++d) {
            if (static_cast<int>(d) == star) continue;
            double s = 0;
            for (int tau = 0; tau < hyp_->num_targets(); ++tau) s += wkl[tau][hyp_->dag_config[d][tau]];
            if (s < nearest_val) {
                nearest_val = s;
                nearest = static_cast<int>(d);
            }
        }
        std::vector<double> rewards(arms, 0.0);
        if (nearest >= 0)
            for (int a = 0; a < arms; ++a) {
                int cfg = hyp_->dag_config[nearest][hyp_->arms[a].target];
                rewards[a] = counts_[a] > 0 ? clip(n_kl(a, cfg) / counts_[a]) : 0.0;
            }
        hedges_[0].update(rewards);
        return cur;
    }

    // Practical: local weights per target, global difficulty weighting.
    auto stars = most_probable_configs();
    std::vector<std::vector<double>> xi(hyp_->num_targets());
    for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
        xi[tau] = hedges_[tau].weights();
        const auto& arm_ids = hyp_->arms_of_target[tau];
        size_t n_cfg = hyp_->per_target[tau].configs.size();
        int nearest = -1;
        double nearest_val = kInf;
        for (size_t c = 0; c < n_cfg; ++c) {
            if (static_cast<int>(c) == stars[tau]) continue;
            double s = 0;
            for (size_t j = 0; j < arm_ids.size(); ++j) {
                int a = arm_ids[j];
                if (counts_[a] > 0) s += xi[tau][j] * (n_kl(a, static_cast<int>(c)) / counts_[a]);
            }
            if (s < nearest_val) {
                nearest_val = s;
                nearest = static_cast<int>(c);
            }
        }
        std::vector<double> rewards(arm_ids.size(), 0.0);
        if (nearest >= 0)
            for (size_t j = 0; j < arm_ids.size(); ++j) {
                int a = arm_ids[j];
                rewards[j] = counts_[a] > 0 ? clip(n_kl(a, nearest) / counts_[a]) : 0.0;
            }
        hedges_[tau].update(rewards);
    }
    // gamma proportional to inverse cumulative local progress; targets with
    // no progress yet count as hardest and split the mass.
    std::vector<double> gamma(hyp_->num_targets(), 0.0);
    int zeros = 0;
    for (int tau = 0; tau < hyp_->num_targets(); ++tau)
        if (hedges_[tau].mixture_reward() <= 0) ++zeros;
    if (zeros > 0) {
        for (int tau = 0; tau < hyp_->num_targets(); ++tau)
            gamma[tau] = hedges_[tau].mixture_reward() <= 0 ? 1.0 / zeros : 0.0;
    } else {
        double z = 0;
        for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
            gamma[tau] = 1.0 / hedges_[tau].mixture_reward();
            z += gamma[tau];
        }
        for (double& g : gamma) g /= z;
    }
    for (int tau = 0; tau < hyp_->num_targets(); ++tau) {
        const auto& arm_ids = hyp_->arms_of_target[tau];
        for (size_t j = 0; j < arm_ids.size(); ++j) alpha[arm_ids[j]] = gamma[tau] * xi[tau][j];
    }
    return alpha;
}

void Tracker::record_allocation(std::span<const double> alpha) {
    if (static_cast<int>(alpha.size()) != hyp_->num_arms())
        throw std::invalid_argument("record_allocation: size mismatch");
    for (int a = 0; a < hyp_->num_arms(); ++a) alloc_sum_[a] += alpha[a];
}

int Tracker::select_arm() const {
    int arms = hyp_->num_arms();
    double sq = std::sqrt(static_cast<double>(t_));
    int least = 0;
    for (int a = 1; a < arms; ++a)
        if (counts_[a] < counts_[least]) least = a;
    if (static_cast<double>(counts_[least]) < sq) return least;  // forced exploration
    int pick = 0;
    double best = -kInf;
    for (int a = 0; a < arms; ++a) {
        double ratio = alloc_sum_[a] / static_cast<double>(counts_[a]);
        if (ratio > best) {
            best = ratio;
            pick = a;
        }
    }
    return pick;
}

MixedGraph apply_config_tuple(const MixedGraph& cpdag, const std::vector<const CutConfig*>& configs,
                              bool* conflict) {
    MixedGraph g = cpdag;
    bool conf = false;
    for (const CutConfig* cfg : configs)
        for (auto [a, b] : cfg->oriented) {
            if (g.has_undirected(a, b))
                g.orient(a, b);
            else if (!g.has_directed(a, b))
                conf = true;
        }
    if (conflict) *conflict = conf;
    return g;
}

namespace {

MixedGraph practical_estimate(const Hypotheses& hyp, const MixedGraph& cpdag, const std::vector<int>& cfg_idx) {
    std::vector<const CutConfig*> cfgs;
    cfgs.reserve(cfg_idx.size());
    for (int tau = 0; tau < hyp.num_targets(); ++tau) cfgs.push_back(&hyp.per_target[tau].configs[cfg_idx[tau]]);
    return apply_config_tuple(cpdag, cfgs);
}

}  // namespace

DiscoveryResult run_discovery(SamplingEnv& env, const MixedGraph& cpdag, const Factor& obs,
                              const std::vector<int>& cards, const TargetFamily& family, double delta, Mode mode,
                              const RunCaps& caps, const TrackerOptions& opts) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("run_discovery: delta must be in (0, 1)");
    if (!cuts_all_undirected_edges(cpdag, family))
        throw std::invalid_argument("run_discovery: target family does not cut every undirected edge");
    Hypotheses hyp = build_hypotheses(cpdag, obs, cards, family, mode, opts);

    DiscoveryResult res;
    res.mode = mode;
    if (hyp.num_arms() == 0) {
        // Every cut is already determined: the class is a singleton.
        res.terminated = true;
        res.final_d = kInf;
        res.chosen = mode == Mode::Exact ? hyp.dags.at(0) : cpdag;
        return res;
    }

    Tracker tr(&hyp, mode, opts);
    int64_t n_arms = hyp.num_arms();
    for (const auto& arm : hyp.arms) res.arm_labels.push_back(arm.iv.label(cpdag));
    double d = 0;

    auto current_shd = [&]() -> int {
        if (!caps.truth) return -1;
        if (mode == Mode::Exact) return shd(hyp.dags[tr.most_probable_dag()], *caps.truth);
        return shd(practical_estimate(hyp, cpdag, tr.most_probable_configs()), *caps.truth);
    };
    auto push_trace = [&](int arm) {
        if (!caps.record_trace) return;
        if (caps.trace_every > 1 && tr.round() % caps.trace_every != 0) return;
        res.trace.push_back({tr.round(), arm, d, current_shd()});
    };
    auto check_tracking = [&]() {
        if (!caps.check_tracking || tr.round() < n_arms) return;
        double sq = std::sqrt(static_cast<double>(tr.round()));
        int64_t min_count = tr.count(0);
        for (int a = 0; a < n_arms; ++a) {
            double lower = tr.alloc_sum(a) - (n_arms - 1) * (sq + 2) - 1e-7;
            double upper = std::max(1.0 + tr.alloc_sum(a), sq + 1.0) + 1e-7;
            double c = static_cast<double>(tr.count(a));
            if (c < lower || c > upper) ++res.tracking_violations;
            min_count = std::min(min_count, tr.count(a));
        }
        if (static_cast<double>(min_count) < std::floor(sq) - static_cast<double>(n_arms))
            ++res.exploration_violations;
    };

    std::vector<double> uniform(n_arms, 1.0 / static_cast<double>(n_arms));
    for (int a = 0; a < n_arms && tr.round() < caps.max_rounds; ++a) {
        tr.record_allocation(uniform);
        auto sample = env.draw(hyp.arms[a].iv);
        tr.observe(a, sample);
        d = tr.stopping_statistic();
        push_trace(a);
        check_tracking();
    }
    int last_arm = static_cast<int>(n_arms) - 1;
    while (!tr.stop_condition(d, delta)) {
        if (tr.round() >= caps.max_rounds) {
            res.inconclusive = true;
            break;
        }
        auto alpha = tr.compute_allocation();
        int arm = tr.select_arm();
        tr.record_allocation(alpha);
        auto sample = env.draw(hyp.arms[arm].iv);
        tr.observe(arm, sample);
        d = tr.stopping_statistic();
        last_arm = arm;
        push_trace(arm);
        check_tracking();
    }
    res.terminated = !res.inconclusive;
    res.stopping_time = tr.round();
    res.final_d = d;
    if (caps.record_trace && (res.trace.empty() || res.trace.back().t != tr.round()))
        res.trace.push_back({tr.round(), last_arm, d, current_shd()});

    if (mode == Mode::Exact) {
        res.chosen = hyp.dags[tr.most_probable_dag()];
    } else {
        auto cfg_idx = tr.most_probable_configs();
        std::vector<const CutConfig*> cfgs;
        res.chosen_configs.reserve(hyp.num_targets());
        for (int tau = 0; tau < hyp.num_targets(); ++tau)
            res.chosen_configs.push_back(hyp.per_target[tau].configs[cfg_idx[tau]]);
        for (const auto& c : res.chosen_configs) cfgs.push_back(&c);
        bool conflict = false;
        MixedGraph oriented = apply_config_tuple(cpdag, cfgs, &conflict);
        if (conflict || !oriented.directed_part_acyclic()) {
            res.realizable = false;
            res.chosen = oriented;
        } else {
            MixedGraph closure = apply_meek_rules(oriented);
            res.realizable = closure.is_dag() && v_structures(closure) == v_structures(cpdag);
            res.chosen = res.realizable ? closure : oriented;
        }
    }
    return res;
}

namespace {

OracleComplexity solve_from_matrix(const std::vector<std::vector<double>>& matrix, int arms) {
    OracleComplexity out;
    if (matrix.empty()) {
        out.value = kInf;
        out.allocation.assign(arms, 1.0 / arms);
        return out;
    }
    GameSolution sol = solve_matrix_game(matrix);
    out.value = sol.value;
    out.allocation = sol.col_strategy;
    out.duality_gap = sol.gap();
    return out;
}

}  // namespace

OracleComplexity oracle_complexity(const Hypotheses& hyp, const MixedGraph& truth) {
    if (hyp.dags.empty())
        throw std::invalid_argument("oracle_complexity: needs hypotheses built for the exact mode");
    int truth_idx = -1;
    for (size_t d = 0; d < hyp.dags.size(); ++d)
        if (hyp.dags[d] == truth) truth_idx = static_cast<int>(d);
    if (truth_idx < 0) throw std::invalid_argument("oracle_complexity: truth is not in the class");
    std::vector<std::vector<double>> matrix;
    for (size_t d = 0; d < hyp.dags.size(); ++d) {
        if (static_cast<int>(d) == truth_idx) continue;
        std::vector<double> row(hyp.num_arms(), 0.0);
        for (int a = 0; a < hyp.num_arms(); ++a) {
            const ArmInfo& info = hyp.arms[a];
            int c_true = hyp.dag_config[truth_idx][info.target];
            int c_alt = hyp.dag_config[d][info.target];
            row[a] = kl_from_logs(hyp.logp_clip[info.target][c_true][info.realization],
                                  hyp.logp_clip[info.target][c_alt][info.realization]);
        }
        matrix.push_back(std::move(row));
    }
    return solve_from_matrix(matrix, hyp.num_arms());
}

OracleComplexity oracle_complexity_lower(const Hypotheses& hyp, const MixedGraph& truth) {
    if (!truth.is_dag()) throw std::invalid_argument("oracle_complexity_lower: truth must be a DAG");
    std::vector<std::vector<double>> matrix;
    for (int tau = 0; tau < hyp.num_targets(); ++tau) {
        const CandidateSet& set = hyp.per_target[tau];
        CutConfig truth_cfg = cut_config_of(truth, set.target);
        int c_true = -1;
        for (size_t c = 0; c < set.configs.size(); ++c)
            if (set.configs[c] == truth_cfg) c_true = static_cast<int>(c);
        if (c_true < 0) throw std::invalid_argument("oracle_complexity_lower: truth cut not enumerated");
        for (size_t c = 0; c < set.configs.size(); ++c) {
            if (static_cast<int>(c) == c_true) continue;
            std::vector<double> row(hyp.num_arms(), 0.0);
            for (int a : hyp.arms_of_target[tau]) {
                const ArmInfo& info = hyp.arms[a];
                row[a] = kl_from_logs(hyp.logp_clip[tau][c_true][info.realization],
                                      hyp.logp_clip[tau][c][info.realization]);
            }
            matrix.push_back(std::move(row));
        }
    }
    return solve_from_matrix(matrix, hyp.num_arms());
}

}  // namespace tsdag
