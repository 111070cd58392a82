#include "tsdag/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace tsdag {

std::string to_edge_list(const MixedGraph& g) {
    std::string out;
    for (int v = 0; v < g.num_vertices(); ++v) out += g.name(v) + "\n";
    for (auto [a, b] : g.directed_edges()) out += g.name(a) + " -> " + g.name(b) + "\n";
    for (auto [a, b] : g.undirected_edges()) out += g.name(a) + " -- " + g.name(b) + "\n";
    return out;
}

MixedGraph parse_edge_list(const std::string& text) {
    struct Item {
        std::string a, b;
        int kind;  // 0 vertex, 1 directed, 2 undirected
    };
    std::vector<Item> items;
    std::vector<std::string> order;
    auto declare = [&](const std::string& name) {
        for (const auto& n : order)
            if (n == name) return;
        order.push_back(name);
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string a, op, b, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> op)) {
            declare(a);
            items.push_back({a, "", 0});
            continue;
        }
        if (!(ls >> b) || (ls >> extra) || (op != "->" && op != "--"))
            throw std::invalid_argument("edge list: malformed line " + std::to_string(lineno));
        declare(a);
        declare(b);
        items.push_back({a, b, op == "->" ? 1 : 2});
    }
    MixedGraph g(order);
    for (const auto& it : items) {
        if (it.kind == 0) continue;
        int a = g.index_of(it.a), b = g.index_of(it.b);
        if (it.kind == 1)
            g.add_directed(a, b);
        else
            g.add_undirected(a, b);
    }
    return g;
}

namespace {

nlohmann::json graph_json(const MixedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.directed_edges()) edges.push_back(g.name(a) + " -> " + g.name(b));
    for (auto [a, b] : g.undirected_edges()) edges.push_back(g.name(a) + " -- " + g.name(b));
    nlohmann::json names = nlohmann::json::array();
    for (const auto& n : g.names()) names.push_back(n);
    return {{"vertices", names}, {"edges", edges}};
}

}  // namespace

std::string discovery_result_to_json(const DiscoveryResult& res, const MixedGraph& cpdag) {
    nlohmann::json j;
    j["mode"] = res.mode == Mode::Exact ? "exact" : "practical";
    j["terminated"] = res.terminated;
    j["inconclusive"] = res.inconclusive;
    j["realizable"] = res.realizable;
    j["stopping_time"] = res.stopping_time;
    j["final_d"] = std::isinf(res.final_d) ? nlohmann::json("inf") : nlohmann::json(res.final_d);
    j["tracking_violations"] = res.tracking_violations;
    j["chosen"] = graph_json(res.chosen);
    nlohmann::json cfgs = nlohmann::json::array();
    for (const auto& cfg : res.chosen_configs) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto [a, b] : cfg.oriented) arr.push_back(cpdag.name(a) + " -> " + cpdag.name(b));
        cfgs.push_back(arr);
    }
    j["chosen_configs"] = cfgs;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& row : res.trace)
        trace.push_back({{"t", row.t}, {"arm", row.arm}, {"d", std::isinf(row.d) ? -1.0 : row.d},
                         {"shd", row.shd}});
    j["trace"] = trace;
    return j.dump(2) + "\n";
}

std::string trace_to_csv(const DiscoveryResult& res, int trial_id) {
    std::string out;
    char buf[128];
    for (const auto& row : res.trace) {
        std::string arm_label =
            row.arm >= 0 && row.arm < static_cast<int>(res.arm_labels.size()) ? res.arm_labels[row.arm] : "";
        bool final_row = row.t == res.stopping_time;
        std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,", trial_id, static_cast<long long>(row.t),
                      static_cast<long long>(row.t));
        out += buf;
        out += arm_label + ",";
        if (std::isinf(row.d))
            out += "inf";
        else {
            std::snprintf(buf, sizeof(buf), "%.17g", row.d);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), ",%d,%d\n", row.shd, final_row && res.terminated ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace tsdag
