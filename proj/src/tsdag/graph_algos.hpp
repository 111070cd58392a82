#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsdag/graph.hpp"

namespace tsdag {

/// Ordered partition of a vertex subset; for buckets i < j every edge between
/// them points from bucket i into bucket j.
struct BucketOrdering {
    std::vector<std::vector<int>> buckets;
};

/// Fixpoint of the four orientation-propagation rules. Only promotes
/// undirected edges to directed ones, never removes an edge; idempotent.
/// `shuffle_seed` randomizes the sweep order (the fixpoint does not depend on
/// it, which the tests assert). Rejects input whose directed part is cyclic.
MixedGraph apply_meek_rules(const MixedGraph& g, std::optional<uint64_t> shuffle_seed = std::nullopt);

/// Canonical representative of the input DAG's Markov equivalence class:
/// skeleton plus unshielded colliders, closed under the orientation rules.
MixedGraph cpdag_of(const MixedGraph& dag);

/// All DAGs represented by the input graph: acyclic orientations of the
/// undirected edges that create no new unshielded collider. Deterministic
/// order (lexicographic in the orientation vector over the sorted undirected
/// edge list, 0 = low-index endpoint as tail). Refuses inputs with more than
/// `max_undirected` undirected edges and inputs with invalid chain structure.
std::vector<MixedGraph> enumerate_mec(const MixedGraph& m, int max_undirected = 20);

/// Partial causal ordering of `s` inside the MPDAG `m` by peeling sink chain
/// components. Throws if `s` contains out-of-range vertices or `m` has a
/// semi-directed cycle.
BucketOrdering pco(const MixedGraph& m, const std::vector<int>& s);

/// Structural Hamming distance: number of vertex pairs whose edge status
/// (absent / a->b / b->a / a--b) differs; a reversal costs one edit.
/// Requires equal vertex name sets.
int shd(const MixedGraph& a, const MixedGraph& b);

/// Unshielded colliders a -> c <- b with a, b nonadjacent; returned as
/// {a, c, b} with a < b, sorted.
std::vector<std::array<int, 3>> v_structures(const MixedGraph& g);

/// Chain-graph test: no directed edge inside an undirected component and the
/// component quotient of the directed edges is acyclic.
bool is_chain_graph(const MixedGraph& g);

/// Every chain component induces a chordal undirected subgraph.
bool has_chordal_components(const MixedGraph& g);

/// Valid MPDAG/CPDAG shape: acyclic directed part, chain graph, chordal
/// chain components.
bool is_valid_mpdag(const MixedGraph& g);

/// Chordality of the undirected part (directed edges must be absent).
bool is_chordal(const MixedGraph& g);

/// Perfect elimination ordering candidate from maximum-cardinality search
/// with lexicographic tie-breaking; a true PEO iff the graph is chordal.
std::vector<int> peo(const MixedGraph& g);

/// Eliminate vertices in the given order, connecting the remaining neighbors
/// of each eliminated vertex. The result is chordal with the order as a PEO.
MixedGraph chordalize(const MixedGraph& g, const std::vector<int>& order);

/// Greedy coloring along the reverse of peo(g); uses max-clique many colors
/// on chordal graphs. Returns one color id in [0, chi) per vertex.
std::vector<int> greedy_coloring(const MixedGraph& g);

/// All edges replaced by undirected ones.
MixedGraph skeleton_of(const MixedGraph& g);

}  // namespace tsdag
