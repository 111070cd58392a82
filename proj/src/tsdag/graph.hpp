#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tsdag {

/// Partially directed graph over named vertices. One representation serves
/// DAGs, PDAGs, CPDAGs and MPDAGs; a vertex pair carries at most one edge,
/// either directed or undirected, and self loops are rejected.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::vector<std::string> names);

    /// n vertices named V1..Vn.
    static MixedGraph with_default_names(int n);

    int num_vertices() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    /// Index of a vertex name, -1 if absent.
    int index_of(std::string_view name) const;

    void add_directed(int tail, int head);
    void add_undirected(int a, int b);
    void remove_directed(int tail, int head);
    void remove_undirected(int a, int b);
    /// Promote the undirected edge {tail, head} to tail -> head.
    void orient(int tail, int head);

    bool has_directed(int tail, int head) const;
    bool has_undirected(int a, int b) const;
    bool adjacent(int a, int b) const;

    const std::set<int>& parents(int v) const { return parents_.at(v); }
    const std::set<int>& children(int v) const { return children_.at(v); }
    const std::set<int>& neighbors(int v) const { return neighbors_.at(v); }

    int num_directed_edges() const;
    int num_undirected_edges() const;
    std::vector<std::pair<int, int>> directed_edges() const;
    /// Each pair with first < second.
    std::vector<std::pair<int, int>> undirected_edges() const;

    bool directed_part_acyclic() const;
    bool is_dag() const { return num_undirected_edges() == 0 && directed_part_acyclic(); }
    /// Topological order of the directed part; throws if cyclic.
    std::vector<int> topological_order() const;

    /// Vertices with a directed path into some y (each y included), following
    /// directed edges only. When `allowed` is given, the search stays inside
    /// the allowed vertex set.
    std::vector<int> ancestors(const std::vector<int>& ys, const std::vector<char>* allowed = nullptr) const;

    /// Connected components of the undirected part, each sorted, ordered by
    /// smallest member.
    std::vector<std::vector<int>> chain_components() const;

    bool operator==(const MixedGraph& o) const;

private:
    void check_vertex(int v) const;
    void check_new_edge(int a, int b) const;

    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
    std::vector<std::set<int>> parents_, children_, neighbors_;
};

}  // namespace tsdag
