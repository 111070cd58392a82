#include "tsdag/factor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsdag {

Factor::Factor(std::vector<int> scope, std::vector<int> cards)
    : scope_(std::move(scope)), cards_(std::move(cards)) {
    if (scope_.size() != cards_.size()) throw std::invalid_argument("Factor: scope/cardinality size mismatch");
    int64_t n = 1;
    for (int c : cards_) {
        if (c < 1) throw std::invalid_argument("Factor: cardinalities must be positive");
        n *= c;
    }
    strides_.assign(scope_.size(), 1);
    for (int i = static_cast<int>(scope_.size()) - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * cards_[i + 1];
    values_.assign(n, 0.0);
}

int64_t Factor::flat_index(std::span<const int> assignment) const {
    int64_t idx = 0;
    for (size_t i = 0; i < scope_.size(); ++i) idx += strides_[i] * assignment[i];
    return idx;
}

void Factor::unflatten(int64_t index, std::span<int> out) const {
    for (size_t i = 0; i < scope_.size(); ++i) {
        out[i] = static_cast<int>(index / strides_[i]);
        index %= strides_[i];
    }
}

int64_t Factor::flat_index_global(std::span<const int> global_assignment) const {
    int64_t idx = 0;
    for (size_t i = 0; i < scope_.size(); ++i) idx += strides_[i] * global_assignment[scope_[i]];
    return idx;
}

double Factor::value_at_global(std::span<const int> global_assignment) const {
    return values_[flat_index_global(global_assignment)];
}

double Factor::sum() const {
    double s = 0;
    for (double v : values_) s += v;
    return s;
}

void Factor::normalize() {
    double s = sum();
    if (s <= 0) throw std::domain_error("Factor::normalize: nonpositive total mass");
    for (double& v : values_) v /= s;
}

bool Factor::is_distribution(double tol) const {
    for (double v : values_)
        if (v < 0) return false;
    return std::abs(sum() - 1.0) <= tol;
}

Factor Factor::marginal(const std::vector<int>& keep) const {
    std::vector<int> keep_pos;
    std::vector<int> keep_cards;
    keep_pos.reserve(keep.size());
    for (int var : keep) {
        int pos = -1;
        for (size_t i = 0; i < scope_.size(); ++i)
            if (scope_[i] == var) pos = static_cast<int>(i);
        if (pos < 0) throw std::invalid_argument("Factor::marginal: variable not in scope");
        keep_pos.push_back(pos);
        keep_cards.push_back(cards_[pos]);
    }
    Factor out(keep, keep_cards);
    std::vector<int> assign(scope_.size());
    for (int64_t i = 0; i < size(); ++i) {
        unflatten(i, assign);
        int64_t j = 0;
        for (size_t k = 0; k < keep_pos.size(); ++k) j = j * keep_cards[k] + assign[keep_pos[k]];
        out[j] += values_[i];
    }
    return out;
}

double Factor::l1_distance(const Factor& o) const {
    if (!same_domain(o)) throw std::invalid_argument("Factor::l1_distance: scope mismatch");
    double d = 0;
    for (int64_t i = 0; i < size(); ++i) d += std::abs(values_[i] - o.values_[i]);
    return d;
}

double kl_divergence(const Factor& p, const Factor& q) {
    if (!p.same_domain(q)) throw std::invalid_argument("kl_divergence: scope mismatch");
    double kl = 0;
    for (int64_t i = 0; i < p.size(); ++i) {
        double pi = p[i];
        if (pi == 0) continue;
        if (q[i] == 0) return std::numeric_limits<double>::infinity();
        kl += pi * std::log(pi / q[i]);
    }
    return kl;
}

}  // namespace tsdag
