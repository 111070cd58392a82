#include "tsdag/graph_algos.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "tsdag/rng.hpp"

namespace tsdag {

namespace {

// R1..R4 premises for orienting u -> w; the edge {u, w} must be undirected.
bool meek_wants(const MixedGraph& m, int u, int w) {
    // R1: p -> u with p, w nonadjacent.
    for (int p : m.parents(u))
        if (!m.adjacent(p, w)) return true;
    // R2: chain u -> c -> w.
    for (int c : m.children(u))
        if (m.has_directed(c, w)) return true;
    // R3: u - k -> w and u - l -> w with k, l nonadjacent.
    {
        std::vector<int> mid;
        for (int k : m.neighbors(u))
            if (m.has_directed(k, w)) mid.push_back(k);
        for (size_t i = 0; i < mid.size(); ++i)
            for (size_t j = i + 1; j < mid.size(); ++j)
                if (!m.adjacent(mid[i], mid[j])) return true;
    }
    // R4: u - k, chain k -> l -> w, k and w nonadjacent.
    for (int k : m.neighbors(u)) {
        if (k == w || m.adjacent(k, w)) continue;
        for (int l : m.children(k))
            if (m.has_directed(l, w)) return true;
    }
    return false;
}

}  // namespace

MixedGraph apply_meek_rules(const MixedGraph& g, std::optional<uint64_t> shuffle_seed) {
    if (!g.directed_part_acyclic()) throw std::invalid_argument("apply_meek_rules: directed part is cyclic");
    MixedGraph m = g;
    std::optional<Rng> rng;
    if (shuffle_seed) rng.emplace(*shuffle_seed);
    bool changed = true;
    while (changed) {
        changed = false;
        auto edges = m.undirected_edges();
        if (rng) rng->shuffle(edges);
        for (auto [a, b] : edges) {
            if (!m.has_undirected(a, b)) continue;
            if (meek_wants(m, a, b)) {
                m.orient(a, b);
                changed = true;
            } else if (meek_wants(m, b, a)) {
                m.orient(b, a);
                changed = true;
            }
        }
    }
    return m;
}

std::vector<std::array<int, 3>> v_structures(const MixedGraph& g) {
    std::vector<std::array<int, 3>> out;
    for (int c = 0; c < g.num_vertices(); ++c) {
        std::vector<int> ps(g.parents(c).begin(), g.parents(c).end());
        for (size_t i = 0; i < ps.size(); ++i)
            for (size_t j = i + 1; j < ps.size(); ++j)
                if (!g.adjacent(ps[i], ps[j])) out.push_back({ps[i], c, ps[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

MixedGraph skeleton_of(const MixedGraph& g) {
    MixedGraph s(g.names());
    for (auto [a, b] : g.undirected_edges()) s.add_undirected(a, b);
    for (auto [a, b] : g.directed_edges())
        if (!s.has_undirected(a, b)) s.add_undirected(std::min(a, b), std::max(a, b));
    return s;
}

MixedGraph cpdag_of(const MixedGraph& dag) {
    if (!dag.is_dag()) throw std::invalid_argument("cpdag_of: input is not a DAG");
    MixedGraph c = skeleton_of(dag);
    for (const auto& vs : v_structures(dag)) {
        if (c.has_undirected(vs[0], vs[1])) c.orient(vs[0], vs[1]);
        if (c.has_undirected(vs[2], vs[1])) c.orient(vs[2], vs[1]);
    }
    return apply_meek_rules(c);
}

bool is_chain_graph(const MixedGraph& g) {
    auto comps = g.chain_components();
    std::vector<int> comp_of(g.num_vertices());
    for (size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
    // Quotient over components must be acyclic and free of internal arrows.
    int k = static_cast<int>(comps.size());
    std::vector<std::set<int>> qadj(k);
    std::vector<int> indeg(k, 0);
    for (auto [a, b] : g.directed_edges()) {
        if (comp_of[a] == comp_of[b]) return false;
        if (qadj[comp_of[a]].insert(comp_of[b]).second) ++indeg[comp_of[b]];
    }
    std::vector<int> stack;
    for (int i = 0; i < k; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : qadj[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen == k;
}

namespace {

MixedGraph undirected_induced(const MixedGraph& g, const std::vector<int>& verts) {
    std::vector<std::string> names;
    names.reserve(verts.size());
    for (int v : verts) names.push_back(g.name(v));
    MixedGraph h(std::move(names));
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (g.has_undirected(verts[i], verts[j])) h.add_undirected(static_cast<int>(i), static_cast<int>(j));
    return h;
}

std::vector<int> mcs_visit_order(const MixedGraph& g) {
    int n = g.num_vertices();
    std::vector<int> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
        visited[best] = 1;
        order.push_back(best);
        for (int w : g.neighbors(best))
            if (!visited[w]) ++weight[w];
    }
    return order;
}

bool check_peo(const MixedGraph& g, const std::vector<int>& elim) {
    int n = g.num_vertices();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[elim[i]] = i;
    for (int v = 0; v < n; ++v) {
        std::vector<int> later;
        for (int w : g.neighbors(v))
            if (pos[w] > pos[v]) later.push_back(w);
        for (size_t i = 0; i < later.size(); ++i)
            for (size_t j = i + 1; j < later.size(); ++j)
                if (!g.has_undirected(later[i], later[j])) return false;
    }
    return true;
}

}  // namespace

std::vector<int> peo(const MixedGraph& g) {
    auto order = mcs_visit_order(g);
    std::reverse(order.begin(), order.end());
    return order;
}

bool is_chordal(const MixedGraph& g) {
    if (g.num_directed_edges() > 0) throw std::invalid_argument("is_chordal: expects an undirected graph");
    return check_peo(g, peo(g));
}

MixedGraph chordalize(const MixedGraph& g, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != g.num_vertices())
        throw std::invalid_argument("chordalize: order must cover all vertices");
    MixedGraph h = g;
    std::vector<char> gone(g.num_vertices(), 0);
    for (int v : order) {
        std::vector<int> alive;
        for (int w : h.neighbors(v))
            if (!gone[w]) alive.push_back(w);
        for (size_t i = 0; i < alive.size(); ++i)
            for (size_t j = i + 1; j < alive.size(); ++j)
                if (!h.adjacent(alive[i], alive[j])) h.add_undirected(alive[i], alive[j]);
        gone[v] = 1;
    }
    return h;
}

bool has_chordal_components(const MixedGraph& g) {
    for (const auto& comp : g.chain_components()) {
        if (comp.size() < 3) continue;
        if (!is_chordal(undirected_induced(g, comp))) return false;
    }
    return true;
}

bool is_valid_mpdag(const MixedGraph& g) {
    return g.directed_part_acyclic() && is_chain_graph(g) && has_chordal_components(g);
}

std::vector<int> greedy_coloring(const MixedGraph& g) {
    // Reverse elimination order: the already-colored neighborhood of each
    // vertex is a clique on chordal inputs.
    auto order = mcs_visit_order(g);
    std::vector<int> color(g.num_vertices(), -1);
    for (int v : order) {
        std::set<int> used;
        for (int w : g.neighbors(v))
            if (color[w] >= 0) used.insert(color[w]);
        int c = 0;
        while (used.count(c)) ++c;
        color[v] = c;
    }
    return color;
}

std::vector<MixedGraph> enumerate_mec(const MixedGraph& m, int max_undirected) {
    if (!m.directed_part_acyclic()) throw std::invalid_argument("enumerate_mec: directed part is cyclic");
    if (!is_chain_graph(m)) throw std::invalid_argument("enumerate_mec: invalid chain structure");
    if (!has_chordal_components(m)) throw std::invalid_argument("enumerate_mec: chain components are not chordal");
    auto undirected = m.undirected_edges();
    int u = static_cast<int>(undirected.size());
    if (u > max_undirected)
        throw std::invalid_argument("enumerate_mec: " + std::to_string(u) +
                                    " undirected edges exceed the enumeration limit");
    auto base_vs = v_structures(m);
    std::vector<MixedGraph> out;
    for (uint64_t mask = 0; mask < (1ULL << u); ++mask) {
        MixedGraph d = m;
        for (int i = 0; i < u; ++i) {
            auto [a, b] = undirected[i];
            if (mask & (1ULL << i))
                d.orient(b, a);
            else
                d.orient(a, b);
        }
        if (!d.directed_part_acyclic()) continue;
        if (v_structures(d) != base_vs) continue;
        out.push_back(std::move(d));
    }
    return out;
}

BucketOrdering pco(const MixedGraph& m, const std::vector<int>& s) {
    for (int v : s)
        if (v < 0 || v >= m.num_vertices()) throw std::invalid_argument("pco: vertex outside the graph");
    std::vector<char> in_s(m.num_vertices(), 0);
    for (int v : s) in_s[v] = 1;

    auto comps = m.chain_components();
    std::vector<int> comp_of(m.num_vertices());
    for (size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
    std::vector<char> alive(comps.size(), 1);
    int remaining = static_cast<int>(comps.size());

    std::deque<std::vector<int>> buckets;
    while (remaining > 0) {
        int pick = -1;
        for (size_t ci = 0; ci < comps.size() && pick < 0; ++ci) {
            if (!alive[ci]) continue;
            bool sink = true;
            for (int v : comps[ci]) {
                for (int c : m.children(v))
                    if (alive[comp_of[c]] && comp_of[c] != static_cast<int>(ci)) {
                        sink = false;
                        break;
                    }
                if (!sink) break;
            }
            if (sink) pick = static_cast<int>(ci);
        }
        if (pick < 0) throw std::invalid_argument("pco: input has a semi-directed cycle");
        alive[pick] = 0;
        --remaining;
        std::vector<int> bucket;
        for (int v : comps[pick])
            if (in_s[v]) bucket.push_back(v);
        if (!bucket.empty()) buckets.push_front(std::move(bucket));
    }
    BucketOrdering out;
    out.buckets.assign(buckets.begin(), buckets.end());
    return out;
}

int shd(const MixedGraph& a, const MixedGraph& b) {
    if (a.num_vertices() != b.num_vertices()) throw std::invalid_argument("shd: vertex sets differ");
    std::vector<int> map_ab(a.num_vertices());
    for (int v = 0; v < a.num_vertices(); ++v) {
        int w = b.index_of(a.name(v));
        if (w < 0) throw std::invalid_argument("shd: vertex sets differ");
        map_ab[v] = w;
    }
    auto status = [](const MixedGraph& g, int x, int y) -> int {
        if (g.has_directed(x, y)) return 1;
        if (g.has_directed(y, x)) return 2;
        if (g.has_undirected(x, y)) return 3;
        return 0;
    };
    int edits = 0;
    for (int x = 0; x < a.num_vertices(); ++x)
        for (int y = x + 1; y < a.num_vertices(); ++y)
            if (status(a, x, y) != status(b, map_ab[x], map_ab[y])) ++edits;
    return edits;
}

}  // namespace tsdag
