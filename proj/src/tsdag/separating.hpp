#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsdag/graph.hpp"

namespace tsdag {

/// Family of intervention target sets.
struct TargetFamily {
    std::vector<std::vector<int>> sets;  // each sorted, deduplicated, nonempty
    std::optional<int> bound_k;
};

/// Distinct labels of length ceil(log_a n) over the alphabet {0, ..., a};
/// each letter appears at most ceil(n/a) times per position. Requires
/// n >= 2 and a >= 2.
std::vector<std::vector<int>> label_elements(int n, int a);

/// Family over {0, ..., n-1} with all set sizes <= k that contains, for every
/// pair of elements, a set holding exactly one of them. Size at most
/// ceil(n/k) * ceil(log_{ceil(n/k)} n). The construction needs k < n/2; for
/// larger k the bound is reduced to max(1, ceil(n/2) - 1), which only makes
/// the sets smaller.
TargetFamily nk_separating_system(int n, int k);

/// Target sets cutting every undirected edge of the CPDAG. Built from a
/// greedy coloring along a perfect elimination ordering of each chain
/// component; without a size bound the color classes themselves are combined
/// through the labeling scheme, with a bound the element-level construction
/// is used on the vertices incident to undirected edges. Rejects CPDAGs
/// whose undirected part is not chordal.
TargetFamily graph_separating_system(const MixedGraph& cpdag, std::optional<int> k = std::nullopt);

/// Cut-validity check for user-supplied families: every undirected edge has
/// some set containing exactly one endpoint.
bool cuts_all_undirected_edges(const MixedGraph& cpdag, const TargetFamily& family);

std::string target_family_to_json(const TargetFamily& family, const MixedGraph& g);
TargetFamily target_family_from_json(const std::string& text, const MixedGraph& g);

}  // namespace tsdag
