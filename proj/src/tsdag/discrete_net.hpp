#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsdag/factor.hpp"
#include "tsdag/graph.hpp"
#include "tsdag/rng.hpp"

namespace tsdag {

/// A do() action: a target node set together with one realization over it.
/// Empty targets is the observational arm.
struct Intervention {
    std::vector<int> targets;  // sorted ascending
    std::vector<int> values;   // same length

    static Intervention observational() { return {}; }
    bool is_observational() const { return targets.empty(); }
    bool operator==(const Intervention& o) const { return targets == o.targets && values == o.values; }
    bool operator<(const Intervention& o) const {
        if (targets != o.targets) return targets < o.targets;
        return values < o.values;
    }
    std::string label(const MixedGraph& g) const;
};

/// Domain of a target set: all realizations, lexicographic in value order.
std::vector<Intervention> all_realizations(const std::vector<int>& targets, const std::vector<int>& cards);

/// Conditional probability table of one variable: rows indexed by the flat
/// assignment of the (sorted) parents, each row over the child's values.
struct Cpt {
    std::vector<int> parents;
    std::vector<double> table;
};

/// Discrete Bayesian network: DAG, per-variable cardinalities and CPTs.
class DiscreteNet {
public:
    DiscreteNet() = default;
    DiscreteNet(MixedGraph graph, std::vector<int> cards, std::vector<Cpt> cpts,
                std::vector<std::vector<std::string>> state_names = {});

    const MixedGraph& graph() const { return graph_; }
    const std::vector<int>& cards() const { return cards_; }
    const std::vector<Cpt>& cpts() const { return cpts_; }
    const Cpt& cpt(int v) const { return cpts_.at(v); }
    int num_vars() const { return graph_.num_vertices(); }
    const std::vector<std::vector<std::string>>& state_names() const { return state_names_; }

    /// P(var = a[var] | parents from a) for a full global assignment a.
    double prob(int var, std::span<const int> assignment) const;
    /// Row offset into the CPT table for the parent values in `assignment`.
    int64_t row_offset(int var, std::span<const int> assignment) const;

    int64_t joint_size() const;
    bool operator==(const DiscreteNet& o) const;

private:
    void validate() const;

    MixedGraph graph_;
    std::vector<int> cards_;
    std::vector<Cpt> cpts_;
    std::vector<std::vector<std::string>> state_names_;
};

void validate_intervention(const DiscreteNet& net, const Intervention& iv);

/// Full joint via the Markov factorization. Scope is 0..n-1 in order.
Factor joint(const DiscreteNet& net, int64_t cell_cap = int64_t{1} << 24);

/// Truncated factorization: mass only on assignments consistent with the
/// realization, product of the non-intervened factors there.
Factor interventional(const DiscreteNet& net, const Intervention& iv, int64_t cell_cap = int64_t{1} << 24);

/// Ancestral sampling with intervened nodes clamped; bit-reproducible under a
/// fixed rng state.
std::vector<int> draw_sample(const DiscreteNet& net, const Intervention& iv, Rng& rng);

}  // namespace tsdag
