#include "tsdag/separating.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tsdag/graph_algos.hpp"

namespace tsdag {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

int ceil_log(int base, int n) {
    // smallest l with base^l >= n
    int l = 0;
    long long p = 1;
    while (p < n) {
        p *= base;
        ++l;
    }
    return l;
}

}  // namespace

std::vector<std::vector<int>> label_elements(int n, int a) {
    if (n < 2 || a < 2) throw std::invalid_argument("label_elements: need n >= 2 and a >= 2");
    int len = ceil_log(a, n);
    std::vector<std::vector<int>> labels(n, std::vector<int>(len, 0));
    for (int d = 1; d <= len; ++d) {
        long long ad = 1;
        for (int i = 0; i < d; ++i) ad *= a;
        long long ad1 = ad / a;  // a^(d-1)
        long long p_d = n / ad, r_d = n % ad;
        long long p_d1 = n / ad1;
        // Digit sequence: blocks of a^(d-1) cycling over {0..a-1} up to
        // p_d * a^d, then blocks of ceil(r_d / a) for the remainder.
        std::vector<int> digit(n);
        long long pos = 0;
        while (pos < p_d * ad) {
            digit[pos] = static_cast<int>((pos / ad1) % a);
            ++pos;
        }
        if (r_d > 0) {
            long long block = ceil_div(static_cast<int>(r_d), a);
            long long start = pos;
            while (pos < n) {
                digit[pos] = static_cast<int>((pos - start) / block);
                ++pos;
            }
        }
        // Letters past position a^(d-1) * p_{d-1} are shifted up by one.
        for (long long j = ad1 * p_d1; j < n; ++j) ++digit[j];
        for (int j = 0; j < n; ++j) labels[j][d - 1] = digit[j];
    }
    // Postconditions of the construction.
    std::set<std::vector<int>> distinct(labels.begin(), labels.end());
    if (static_cast<int>(distinct.size()) != n)
        throw std::logic_error("label_elements: labels are not distinct");
    return labels;
}

TargetFamily nk_separating_system(int n, int k) {
    if (n < 2) throw std::invalid_argument("nk_separating_system: need n >= 2");
    if (k < 1) throw std::invalid_argument("nk_separating_system: need k >= 1");
    int k_eff = 2 * k < n ? k : std::max(1, ceil_div(n, 2) - 1);
    int a = ceil_div(n, k_eff);
    auto labels = label_elements(n, a);
    int len = static_cast<int>(labels[0].size());

    TargetFamily fam;
    fam.bound_k = k;
    std::set<std::vector<int>> seen;
    for (int pos = 0; pos < len; ++pos) {
        for (int letter = 1; letter <= a; ++letter) {
            std::vector<int> s;
            for (int j = 0; j < n; ++j)
                if (labels[j][pos] == letter) s.push_back(j);
            if (s.empty()) continue;
            if (static_cast<int>(s.size()) > k)
                throw std::logic_error("nk_separating_system: set exceeds the size bound");
            if (seen.insert(s).second) fam.sets.push_back(std::move(s));
        }
    }
    return fam;
}

bool cuts_all_undirected_edges(const MixedGraph& cpdag, const TargetFamily& family) {
    for (auto [a, b] : cpdag.undirected_edges()) {
        bool cut = false;
        for (const auto& s : family.sets) {
            bool ina = std::binary_search(s.begin(), s.end(), a);
            bool inb = std::binary_search(s.begin(), s.end(), b);
            if (ina != inb) {
                cut = true;
                break;
            }
        }
        if (!cut) return false;
    }
    return true;
}

TargetFamily graph_separating_system(const MixedGraph& cpdag, std::optional<int> k) {
    if (!cpdag.directed_part_acyclic()) throw std::invalid_argument("graph_separating_system: cyclic input");
    TargetFamily fam;
    fam.bound_k = k;
    auto undirected = cpdag.undirected_edges();
    if (undirected.empty()) return fam;

    MixedGraph undirected_part(cpdag.names());
    for (auto [a, b] : undirected) undirected_part.add_undirected(a, b);
    if (!is_chordal(undirected_part))
        throw std::invalid_argument("graph_separating_system: undirected part is not chordal");

    if (k) {
        // Size-bounded variant: element-level system over the vertices that
        // actually touch an undirected edge.
        std::set<int> touched;
        for (auto [a, b] : undirected) {
            touched.insert(a);
            touched.insert(b);
        }
        std::vector<int> verts(touched.begin(), touched.end());
        TargetFamily base = nk_separating_system(static_cast<int>(verts.size()), *k);
        for (auto& s : base.sets) {
            std::vector<int> mapped;
            for (int e : s) mapped.push_back(verts[e]);
            fam.sets.push_back(std::move(mapped));
        }
    } else {
        auto colors = greedy_coloring(undirected_part);
        int chi = 1 + *std::max_element(colors.begin(), colors.end());
        if (chi < 2) throw std::logic_error("graph_separating_system: impossible color count");
        TargetFamily over_colors = nk_separating_system(chi, std::max(1, ceil_div(chi, 2) - 1));
        std::set<std::vector<int>> seen;
        for (const auto& cs : over_colors.sets) {
            std::vector<int> s;
            for (int v = 0; v < cpdag.num_vertices(); ++v)
                if (!cpdag.neighbors(v).empty() && std::binary_search(cs.begin(), cs.end(), colors[v]))
                    s.push_back(v);
            if (!s.empty() && seen.insert(s).second) fam.sets.push_back(std::move(s));
        }
    }
    if (!cuts_all_undirected_edges(cpdag, fam))
        throw std::logic_error("graph_separating_system: constructed family misses an edge");
    return fam;
}

std::string target_family_to_json(const TargetFamily& family, const MixedGraph& g) {
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : family.sets) {
        nlohmann::json names = nlohmann::json::array();
        for (int v : s) names.push_back(g.name(v));
        sets.push_back(names);
    }
    nlohmann::json out{{"sets", sets}};
    if (family.bound_k) out["bound_k"] = *family.bound_k;
    return out.dump(2) + "\n";
}

TargetFamily target_family_from_json(const std::string& text, const MixedGraph& g) {
    nlohmann::json j = nlohmann::json::parse(text);
    TargetFamily fam;
    if (j.contains("bound_k")) fam.bound_k = j["bound_k"].get<int>();
    std::set<std::vector<int>> seen;
    for (const auto& s : j.at("sets")) {
        std::vector<int> set;
        for (const auto& name : s) {
            int v = g.index_of(name.get<std::string>());
            if (v < 0) throw std::invalid_argument("target set names unknown vertex " + name.get<std::string>());
            set.push_back(v);
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) throw std::invalid_argument("target sets must be nonempty");
        if (seen.insert(set).second) fam.sets.push_back(std::move(set));
    }
    return fam;
}

}  // namespace tsdag
