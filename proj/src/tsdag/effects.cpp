#include "tsdag/effects.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tsdag {

namespace {

std::vector<std::pair<int, int>> cut_edges(const MixedGraph& g, const std::vector<char>& in_s) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : g.directed_edges())
        if (in_s[a] != in_s[b]) out.push_back({a, b});
    for (auto [a, b] : g.undirected_edges())
        if (in_s[a] != in_s[b]) out.push_back({a, b});
    return out;
}

std::vector<char> member_mask(int n, const std::vector<int>& s) {
    std::vector<char> mask(n, 0);
    for (int v : s) {
        if (v < 0 || v >= n) throw std::invalid_argument("vertex index out of range");
        mask[v] = 1;
    }
    return mask;
}

CutConfig canonical_config(std::vector<std::pair<int, int>> oriented) {
    std::sort(oriented.begin(), oriented.end(), [](const auto& a, const auto& b) {
        auto ka = std::minmax(a.first, a.second);
        auto kb = std::minmax(b.first, b.second);
        return ka < kb;
    });
    return CutConfig{std::move(oriented)};
}

}  // namespace

CutConfig cut_config_of(const MixedGraph& dag, const std::vector<int>& s) {
    auto in_s = member_mask(dag.num_vertices(), s);
    std::vector<std::pair<int, int>> oriented;
    for (auto [a, b] : dag.directed_edges())
        if (in_s[a] != in_s[b]) oriented.push_back({a, b});
    return canonical_config(std::move(oriented));
}

bool effect_identifiable(const MixedGraph& m, const std::vector<int>& x, const std::vector<int>& y) {
    auto in_x = member_mask(m.num_vertices(), x);
    auto in_y = member_mask(m.num_vertices(), y);
    // Walk possibly causal steps (forward or undirected) that leave x through
    // an undirected edge and stay outside x afterwards; hitting y means a
    // possibly proper causal path starting with an undirected edge exists.
    std::vector<char> seen(m.num_vertices(), 0);
    std::vector<int> stack;
    for (int v : x)
        for (int w : m.neighbors(v))
            if (!in_x[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (in_y[v]) return false;
        auto visit = [&](int w) {
            if (!in_x[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        };
        for (int w : m.children(v)) visit(w);
        for (int w : m.neighbors(v)) visit(w);
    }
    return true;
}

Factor identify_effect(const MixedGraph& m, const std::vector<int>& x, const std::vector<int>& x_values,
                       const std::vector<int>& y, const Factor& obs) {
    int n = m.num_vertices();
    if (static_cast<int>(obs.scope().size()) != n)
        throw std::invalid_argument("identify_effect: observational factor must cover all variables");
    if (x.size() != x_values.size()) throw std::invalid_argument("identify_effect: x/value size mismatch");
    auto in_x = member_mask(n, x);
    auto in_y = member_mask(n, y);
    for (int v : y)
        if (in_x[v]) throw std::invalid_argument("identify_effect: x and y overlap");
    if (y.empty()) throw std::invalid_argument("identify_effect: y is empty");
    if (!effect_identifiable(m, x, y))
        throw IdentifiabilityError("effect not identifiable: possibly proper causal path starting undirected");

    const std::vector<int>& cards = obs.cards();

    // Ancestors of y via directed paths inside V \ x.
    std::vector<char> allowed(n, 1);
    for (int v : x) allowed[v] = 0;
    std::vector<int> an = m.ancestors(y, &allowed);
    BucketOrdering order = pco(m, an);

    // Per bucket: P(bucket | parents) as ratio of two observational marginals.
    struct BucketTerm {
        std::vector<int> members;
        std::vector<int> parents;  // outside the bucket
        Factor joint_marg;         // over members + parents
        Factor par_marg;           // over parents
    };
    std::vector<BucketTerm> terms;
    for (const auto& bucket : order.buckets) {
        BucketTerm t;
        t.members = bucket;
        std::set<int> ps;
        for (int v : bucket)
            for (int p : m.parents(v)) ps.insert(p);
        for (int v : bucket) ps.erase(v);
        t.parents.assign(ps.begin(), ps.end());
        std::vector<int> both = t.members;
        both.insert(both.end(), t.parents.begin(), t.parents.end());
        std::sort(both.begin(), both.end());
        t.joint_marg = obs.marginal(both);
        if (!t.parents.empty()) t.par_marg = obs.marginal(t.parents);
        terms.push_back(std::move(t));
    }

    std::vector<int> ys = y;
    std::sort(ys.begin(), ys.end());
    std::vector<int> y_cards;
    for (int v : ys) y_cards.push_back(cards[v]);
    Factor result(ys, y_cards);

    // Global assignment: x clamped, the an-set enumerated, the rest unused.
    std::vector<int> assign(n, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x_values[i] < 0 || x_values[i] >= cards[x[i]])
            throw std::invalid_argument("identify_effect: x value outside domain");
        assign[x[i]] = x_values[i];
    }
    int64_t an_cells = 1;
    for (int v : an) an_cells *= cards[v];
    for (int64_t it = 0; it < an_cells; ++it) {
        int64_t rest = it;
        for (auto vi = an.rbegin(); vi != an.rend(); ++vi) {
            assign[*vi] = static_cast<int>(rest % cards[*vi]);
            rest /= cards[*vi];
        }
        double p = 1;
        for (const auto& t : terms) {
            double denom = t.parents.empty() ? 1.0 : t.par_marg.value_at_global(assign);
            if (denom <= 0) {
                p = 0;
                break;
            }
            p *= t.joint_marg.value_at_global(assign) / denom;
        }
        if (p != 0) result[result.flat_index_global(assign)] += p;
    }
    return result;
}

std::vector<std::pair<CutConfig, MixedGraph>> enumerate_cut_configs(const MixedGraph& m, const std::vector<int>& s,
                                                                    int* dropped, int max_cut_edges) {
    if (!is_valid_mpdag(m)) throw std::invalid_argument("enumerate_cut_configs: input is not a valid MPDAG");
    auto in_s = member_mask(m.num_vertices(), s);
    std::vector<std::pair<int, int>> undirected_cut;
    std::vector<std::pair<int, int>> fixed;
    for (auto [a, b] : cut_edges(m, in_s)) {
        if (m.has_undirected(a, b))
            undirected_cut.push_back({a, b});
        else
            fixed.push_back({a, b});
    }
    int u = static_cast<int>(undirected_cut.size());
    if (u > max_cut_edges)
        throw std::invalid_argument("enumerate_cut_configs: " + std::to_string(u) +
                                    " undirected cut edges exceed the enumeration limit");
    auto base_vs = v_structures(m);
    std::vector<std::pair<CutConfig, MixedGraph>> out;
    int drop_count = 0;
    for (uint64_t mask = 0; mask < (1ULL << u); ++mask) {
        MixedGraph oriented = m;
        std::vector<std::pair<int, int>> chosen = fixed;
        for (int i = 0; i < u; ++i) {
            auto [a, b] = undirected_cut[i];
            if (mask & (1ULL << i)) {
                oriented.orient(b, a);
                chosen.push_back({b, a});
            } else {
                oriented.orient(a, b);
                chosen.push_back({a, b});
            }
        }
        if (!oriented.directed_part_acyclic()) {
            ++drop_count;
            continue;
        }
        MixedGraph closure = apply_meek_rules(oriented);
        // Valid iff the closure is a proper MPDAG shape and its class is a
        // nonempty subset of [m]: same unshielded colliders, no cycles.
        if (!closure.directed_part_acyclic() || !is_chain_graph(closure) || !has_chordal_components(closure) ||
            v_structures(closure) != base_vs) {
            ++drop_count;
            continue;
        }
        out.emplace_back(canonical_config(std::move(chosen)), std::move(closure));
    }
    if (dropped) *dropped = drop_count;
    return out;
}

CandidateSet candidate_distributions(const MixedGraph& m, const std::vector<int>& s, const Factor& obs,
                                     const std::vector<int>& cards) {
    CandidateSet cs;
    cs.target = s;
    std::sort(cs.target.begin(), cs.target.end());
    std::vector<int> rest;
    for (int v = 0; v < m.num_vertices(); ++v)
        if (!std::binary_search(cs.target.begin(), cs.target.end(), v)) rest.push_back(v);
    if (rest.empty()) throw std::invalid_argument("candidate_distributions: target covers every vertex");

    auto realizations = all_realizations(cs.target, cards);
    for (auto& [config, closure] : enumerate_cut_configs(m, cs.target, &cs.dropped_configs)) {
        std::vector<Factor> dists;
        dists.reserve(realizations.size());
        for (const auto& iv : realizations) {
            try {
                dists.push_back(identify_effect(closure, iv.targets, iv.values, rest, obs));
            } catch (const IdentifiabilityError&) {
                throw std::logic_error(
                    "candidate_distributions: identification failed on an oriented cut; "
                    "this indicates an invalid enumeration");
            }
        }
        cs.configs.push_back(std::move(config));
        cs.closures.push_back(std::move(closure));
        cs.dists.push_back(std::move(dists));
    }
    return cs;
}

double min_pairwise_l1(const CandidateSet& cs) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < cs.configs.size(); ++i)
        for (size_t j = i + 1; j < cs.configs.size(); ++j) {
            double worst = 0;
            for (size_t r = 0; r < cs.dists[i].size(); ++r)
                worst = std::max(worst, cs.dists[i][r].l1_distance(cs.dists[j][r]));
            best = std::min(best, worst);
        }
    return best;
}

}  // namespace tsdag
