#pragma once

#include <string>

#include "tsdag/graph.hpp"
#include "tsdag/tracker.hpp"

namespace tsdag {

/// Edge-list text format: one item per line; `a -> b` for directed edges,
/// `a -- b` for undirected ones, a bare token declares an isolated vertex.
/// Vertex order is first appearance.
std::string to_edge_list(const MixedGraph& g);
MixedGraph parse_edge_list(const std::string& text);

std::string discovery_result_to_json(const DiscoveryResult& res, const MixedGraph& cpdag);

/// Trace rows as CSV with the benchmark schema.
std::string trace_to_csv(const DiscoveryResult& res, int trial_id);

}  // namespace tsdag
