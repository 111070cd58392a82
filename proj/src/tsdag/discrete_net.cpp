#include "tsdag/discrete_net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsdag {

std::string Intervention::label(const MixedGraph& g) const {
    if (is_observational()) return "obs";
    std::string out = "do[";
    for (size_t i = 0; i < targets.size(); ++i) {
        if (i) out += ",";
        out += g.name(targets[i]) + "=" + std::to_string(values[i]);
    }
    return out + "]";
}

std::vector<Intervention> all_realizations(const std::vector<int>& targets, const std::vector<int>& cards) {
    std::vector<int> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("all_realizations: duplicate target");
    int64_t total = 1;
    for (int t : sorted) {
        if (t < 0 || t >= static_cast<int>(cards.size()))
            throw std::invalid_argument("all_realizations: target out of range");
        total *= cards[t];
    }
    std::vector<Intervention> out;
    out.reserve(total);
    std::vector<int> vals(sorted.size(), 0);
    for (int64_t i = 0; i < total; ++i) {
        out.push_back({sorted, vals});
        for (int k = static_cast<int>(sorted.size()) - 1; k >= 0; --k) {
            if (++vals[k] < cards[sorted[k]]) break;
            vals[k] = 0;
        }
    }
    return out;
}

DiscreteNet::DiscreteNet(MixedGraph graph, std::vector<int> cards, std::vector<Cpt> cpts,
                         std::vector<std::vector<std::string>> state_names)
    : graph_(std::move(graph)), cards_(std::move(cards)), cpts_(std::move(cpts)),
      state_names_(std::move(state_names)) {
    if (state_names_.empty()) {
        state_names_.resize(cards_.size());
        for (size_t v = 0; v < cards_.size(); ++v)
            for (int s = 0; s < cards_[v]; ++s) state_names_[v].push_back("s" + std::to_string(s));
    }
    validate();
}

void DiscreteNet::validate() const {
    int n = graph_.num_vertices();
    if (static_cast<int>(cards_.size()) != n || static_cast<int>(cpts_.size()) != n ||
        static_cast<int>(state_names_.size()) != n)
        throw std::invalid_argument("DiscreteNet: field sizes disagree with the vertex count");
    if (!graph_.is_dag()) throw std::invalid_argument("DiscreteNet: graph must be a DAG");
    for (int v = 0; v < n; ++v) {
        if (cards_[v] < 1) throw std::invalid_argument("DiscreteNet: cardinalities must be positive");
        if (static_cast<int>(state_names_[v].size()) != cards_[v])
            throw std::invalid_argument("DiscreteNet: state name count disagrees with cardinality");
        std::vector<int> expect(graph_.parents(v).begin(), graph_.parents(v).end());
        if (cpts_[v].parents != expect)
            throw std::invalid_argument("DiscreteNet: CPT parents disagree with the graph");
        int64_t rows = 1;
        for (int p : expect) rows *= cards_[p];
        if (static_cast<int64_t>(cpts_[v].table.size()) != rows * cards_[v])
            throw std::invalid_argument("DiscreteNet: CPT table has the wrong shape");
        for (int64_t r = 0; r < rows; ++r) {
            double s = 0;
            for (int k = 0; k < cards_[v]; ++k) {
                double x = cpts_[v].table[r * cards_[v] + k];
                if (x < 0) throw std::invalid_argument("DiscreteNet: negative CPT entry");
                s += x;
            }
            if (std::abs(s - 1.0) > 1e-12)
                throw std::invalid_argument("DiscreteNet: CPT row does not sum to one");
        }
    }
}

int64_t DiscreteNet::row_offset(int var, std::span<const int> assignment) const {
    const Cpt& c = cpts_[var];
    int64_t row = 0;
    for (int p : c.parents) row = row * cards_[p] + assignment[p];
    return row * cards_[var];
}

double DiscreteNet::prob(int var, std::span<const int> assignment) const {
    return cpts_[var].table[row_offset(var, assignment) + assignment[var]];
}

int64_t DiscreteNet::joint_size() const {
    int64_t n = 1;
    for (int c : cards_) {
        if (n > (int64_t{1} << 62) / c) throw std::overflow_error("DiscreteNet: joint domain overflow");
        n *= c;
    }
    return n;
}

bool DiscreteNet::operator==(const DiscreteNet& o) const {
    return graph_ == o.graph_ && cards_ == o.cards_ && state_names_ == o.state_names_ &&
           [&] {
               for (size_t v = 0; v < cpts_.size(); ++v)
                   if (cpts_[v].parents != o.cpts_[v].parents || cpts_[v].table != o.cpts_[v].table) return false;
               return true;
           }();
}

void validate_intervention(const DiscreteNet& net, const Intervention& iv) {
    if (iv.targets.size() != iv.values.size())
        throw std::invalid_argument("Intervention: target/value size mismatch");
    if (!std::is_sorted(iv.targets.begin(), iv.targets.end()) ||
        std::adjacent_find(iv.targets.begin(), iv.targets.end()) != iv.targets.end())
        throw std::invalid_argument("Intervention: targets must be sorted and distinct");
    for (size_t i = 0; i < iv.targets.size(); ++i) {
        int t = iv.targets[i];
        if (t < 0 || t >= net.num_vars()) throw std::invalid_argument("Intervention: target out of range");
        if (iv.values[i] < 0 || iv.values[i] >= net.cards()[t])
            throw std::invalid_argument("Intervention: value outside the variable domain");
    }
}

namespace {

Factor product_factor(const DiscreteNet& net, const Intervention& iv, int64_t cell_cap) {
    if (net.joint_size() > cell_cap)
        throw std::invalid_argument("joint domain exceeds the size cap of " + std::to_string(cell_cap) + " cells");
    int n = net.num_vars();
    std::vector<int> scope(n);
    for (int i = 0; i < n; ++i) scope[i] = i;
    Factor f(scope, net.cards());
    std::vector<char> intervened(n, 0);
    for (int t : iv.targets) intervened[t] = 1;
    std::vector<int> a(n, 0);
    for (int64_t idx = 0; idx < f.size(); ++idx) {
        f.unflatten(idx, a);
        bool consistent = true;
        for (size_t k = 0; k < iv.targets.size() && consistent; ++k)
            consistent = a[iv.targets[k]] == iv.values[k];
        if (consistent) {
            double p = 1;
            for (int v = 0; v < n && p > 0; ++v)
                if (!intervened[v]) p *= net.prob(v, a);
            f[idx] = p;
        }
    }
    return f;
}

}  // namespace

Factor joint(const DiscreteNet& net, int64_t cell_cap) {
    return product_factor(net, Intervention::observational(), cell_cap);
}

Factor interventional(const DiscreteNet& net, const Intervention& iv, int64_t cell_cap) {
    validate_intervention(net, iv);
    return product_factor(net, iv, cell_cap);
}

std::vector<int> draw_sample(const DiscreteNet& net, const Intervention& iv, Rng& rng) {
    validate_intervention(net, iv);
    int n = net.num_vars();
    std::vector<int> a(n, -1);
    std::vector<char> intervened(n, 0);
    for (size_t k = 0; k < iv.targets.size(); ++k) {
        a[iv.targets[k]] = iv.values[k];
        intervened[iv.targets[k]] = 1;
    }
    for (int v : net.graph().topological_order()) {
        if (intervened[v]) continue;
        int64_t off = net.row_offset(v, a);
        a[v] = rng.categorical(std::span<const double>(net.cpt(v).table).subspan(off, net.cards()[v]));
    }
    return a;
}

}  // namespace tsdag
