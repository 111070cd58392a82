#include "tsdag/adahedge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsdag {

AdaHedge::AdaHedge(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("AdaHedge: need at least one expert");
    cum_reward_.assign(k, 0.0);
    weights_.assign(k, 1.0 / k);
}

double AdaHedge::eta() const {
    if (delta_ <= 0) return std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(k_)) / delta_;
}

double AdaHedge::update(std::span<const double> rewards) {
    if (static_cast<int>(rewards.size()) != k_) throw std::invalid_argument("AdaHedge: reward size mismatch");
    double h = 0;
    for (int i = 0; i < k_; ++i) h += weights_[i] * rewards[i];
    double rmax = *std::max_element(rewards.begin(), rewards.end());
    double e = eta();
    double mix;
    if (std::isinf(e)) {
        mix = rmax;
    } else {
        // (1/eta) ln sum_i w_i exp(eta r_i), stabilized around the max.
        double z = 0;
        for (int i = 0; i < k_; ++i) z += weights_[i] * std::exp(e * (rewards[i] - rmax));
        mix = rmax + std::log(z) / e;
    }
    delta_ += std::max(0.0, mix - h);
    h_total_ += h;
    for (int i = 0; i < k_; ++i) cum_reward_[i] += rewards[i];
    recompute_weights();
    return h;
}

void AdaHedge::recompute_weights() {
    double e = eta();
    double rmax = *std::max_element(cum_reward_.begin(), cum_reward_.end());
    if (std::isinf(e)) {
        int leaders = 0;
        for (int i = 0; i < k_; ++i)
            if (cum_reward_[i] == rmax) ++leaders;
        for (int i = 0; i < k_; ++i) weights_[i] = cum_reward_[i] == rmax ? 1.0 / leaders : 0.0;
        return;
    }
    double z = 0;
    for (int i = 0; i < k_; ++i) {
        weights_[i] = std::exp(e * (cum_reward_[i] - rmax));
        z += weights_[i];
    }
    for (int i = 0; i < k_; ++i) weights_[i] /= z;
}

}  // namespace tsdag
