#include "tsdag/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsdag {

MixedGraph::MixedGraph(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("MixedGraph: empty vertex name");
        auto [it, inserted] = index_.emplace(names_[i], static_cast<int>(i));
        (void)it;
        if (!inserted) throw std::invalid_argument("MixedGraph: duplicate vertex name " + names_[i]);
    }
    parents_.resize(names_.size());
    children_.resize(names_.size());
    neighbors_.resize(names_.size());
}

MixedGraph MixedGraph::with_default_names(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 1; i <= n; ++i) names.push_back("V" + std::to_string(i));
    return MixedGraph(std::move(names));
}

int MixedGraph::index_of(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void MixedGraph::check_vertex(int v) const {
    if (v < 0 || v >= num_vertices()) throw std::out_of_range("MixedGraph: vertex index out of range");
}

void MixedGraph::check_new_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("MixedGraph: self loop");
    if (adjacent(a, b)) throw std::invalid_argument("MixedGraph: pair already has an edge");
}

void MixedGraph::add_directed(int tail, int head) {
    check_new_edge(tail, head);
    children_[tail].insert(head);
    parents_[head].insert(tail);
}

void MixedGraph::add_undirected(int a, int b) {
    check_new_edge(a, b);
    neighbors_[a].insert(b);
    neighbors_[b].insert(a);
}

void MixedGraph::remove_directed(int tail, int head) {
    if (!has_directed(tail, head)) throw std::invalid_argument("MixedGraph: no such directed edge");
    children_[tail].erase(head);
    parents_[head].erase(tail);
}

void MixedGraph::remove_undirected(int a, int b) {
    if (!has_undirected(a, b)) throw std::invalid_argument("MixedGraph: no such undirected edge");
    neighbors_[a].erase(b);
    neighbors_[b].erase(a);
}

void MixedGraph::orient(int tail, int head) {
    remove_undirected(tail, head);
    children_[tail].insert(head);
    parents_[head].insert(tail);
}

bool MixedGraph::has_directed(int tail, int head) const {
    check_vertex(tail);
    check_vertex(head);
    return children_[tail].count(head) > 0;
}

bool MixedGraph::has_undirected(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    return neighbors_[a].count(b) > 0;
}

bool MixedGraph::adjacent(int a, int b) const {
    return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
}

int MixedGraph::num_directed_edges() const {
    int n = 0;
    for (const auto& c : children_) n += static_cast<int>(c.size());
    return n;
}

int MixedGraph::num_undirected_edges() const {
    int n = 0;
    for (const auto& c : neighbors_) n += static_cast<int>(c.size());
    return n / 2;
}

std::vector<std::pair<int, int>> MixedGraph::directed_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < num_vertices(); ++v)
        for (int c : children_[v]) out.emplace_back(v, c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> MixedGraph::undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < num_vertices(); ++v)
        for (int w : neighbors_[v])
            if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

bool MixedGraph::directed_part_acyclic() const {
    std::vector<int> indeg(num_vertices(), 0);
    for (int v = 0; v < num_vertices(); ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::vector<int> stack;
    for (int v = 0; v < num_vertices(); ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int c : children_[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    return seen == num_vertices();
}

std::vector<int> MixedGraph::topological_order() const {
    std::vector<int> indeg(num_vertices(), 0);
    for (int v = 0; v < num_vertices(); ++v) indeg[v] = static_cast<int>(parents_[v].size());
    // Min-index first keeps the order deterministic.
    std::set<int> ready;
    for (int v = 0; v < num_vertices(); ++v)
        if (indeg[v] == 0) ready.insert(v);
    std::vector<int> order;
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) ready.insert(c);
    }
    if (static_cast<int>(order.size()) != num_vertices())
        throw std::invalid_argument("topological_order: directed part is cyclic");
    return order;
}

std::vector<int> MixedGraph::ancestors(const std::vector<int>& ys, const std::vector<char>* allowed) const {
    std::vector<char> in(num_vertices(), 0);
    std::vector<int> stack;
    for (int y : ys) {
        check_vertex(y);
        if (allowed && !(*allowed)[y]) continue;
        if (!in[y]) {
            in[y] = 1;
            stack.push_back(y);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : parents_[v]) {
            if (allowed && !(*allowed)[p]) continue;
            if (!in[p]) {
                in[p] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

std::vector<std::vector<int>> MixedGraph::chain_components() const {
    std::vector<char> seen(num_vertices(), 0);
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < num_vertices(); ++v) {
        if (seen[v]) continue;
        std::vector<int> comp, stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : neighbors_[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool MixedGraph::operator==(const MixedGraph& o) const {
    return names_ == o.names_ && parents_ == o.parents_ && neighbors_ == o.neighbors_;
}

}  // namespace tsdag
