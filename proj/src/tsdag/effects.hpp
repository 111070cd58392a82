#pragma once

#include <stdexcept>
#include <vector>

#include "tsdag/discrete_net.hpp"
#include "tsdag/factor.hpp"
#include "tsdag/graph.hpp"
#include "tsdag/graph_algos.hpp"

namespace tsdag {

/// The requested effect is not identifiable from the MPDAG: some possibly
/// proper causal path from the targets starts with an undirected edge.
class IdentifiabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Orientation of all edges in the cut E[S, V \ S], stored as (tail, head)
/// pairs keyed by the unordered pair.
struct CutConfig {
    std::vector<std::pair<int, int>> oriented;

    bool operator==(const CutConfig& o) const { return oriented == o.oriented; }
    bool operator<(const CutConfig& o) const { return oriented < o.oriented; }
};

/// Cut orientation of a fully directed graph restricted to E[S, V \ S].
CutConfig cut_config_of(const MixedGraph& dag, const std::vector<int>& s);

/// P_x(y): interventional distribution of y under do(x = x_values),
/// identified from the observational joint via bucket factorization over the
/// ancestors of y outside x. Result scope is y sorted ascending. Throws
/// IdentifiabilityError when the MPDAG does not identify the effect.
Factor identify_effect(const MixedGraph& m, const std::vector<int>& x, const std::vector<int>& x_values,
                       const std::vector<int>& y, const Factor& obs);

/// True when no possibly proper causal path from x to y starts with an
/// undirected edge, i.e. identify_effect is applicable.
bool effect_identifiable(const MixedGraph& m, const std::vector<int>& x, const std::vector<int>& y);

/// All orientations of the undirected cut edges at `s` whose orientation
/// rule closure is a valid MPDAG representing at least one DAG of [m].
/// Deterministic order (lexicographic in the orientation vector). Invalid
/// vectors are dropped; `dropped` reports how many, for observability.
std::vector<std::pair<CutConfig, MixedGraph>> enumerate_cut_configs(const MixedGraph& m, const std::vector<int>& s,
                                                                    int* dropped = nullptr,
                                                                    int max_cut_edges = 20);

/// Candidate interventional distributions for one target set: one tuple of
/// factors over V \ S (one factor per realization of S, lexicographic) per
/// valid cut configuration.
struct CandidateSet {
    std::vector<int> target;  // sorted
    std::vector<CutConfig> configs;
    std::vector<MixedGraph> closures;
    std::vector<std::vector<Factor>> dists;  // [config][realization]
    int dropped_configs = 0;
};

CandidateSet candidate_distributions(const MixedGraph& m, const std::vector<int>& s, const Factor& obs,
                                     const std::vector<int>& cards);

/// Smallest over config pairs of the largest-over-realizations L1 distance;
/// a diagnostic for faithfulness violations (values at or below ~1e-9 mean
/// two configurations are observationally indistinguishable).
double min_pairwise_l1(const CandidateSet& cs);

}  // namespace tsdag
