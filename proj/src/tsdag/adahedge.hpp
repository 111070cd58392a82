#pragma once

#include <span>
#include <vector>

namespace tsdag {

/// Parameter-free exponential weights over K experts receiving bounded
/// rewards. The learning rate eta_t = ln K / Delta_{t-1} decreases as the
/// cumulative mixability gap Delta grows; eta_1 = +inf makes the first step
/// follow-the-leader. Weights are recomputed from cumulative rewards each
/// step, so a temporarily bad expert is never zeroed out permanently.
class AdaHedge {
public:
    explicit AdaHedge(int k);

    int num_experts() const { return k_; }
    const std::vector<double>& weights() const { return weights_; }
    double eta() const;
    double cumulative_gap() const { return delta_; }
    double mixture_reward() const { return h_total_; }

    /// Feed one reward vector; returns the mixture reward <w_t, r_t>.
    double update(std::span<const double> rewards);

private:
    void recompute_weights();

    int k_;
    std::vector<double> cum_reward_;
    std::vector<double> weights_;
    double delta_ = 0;
    double h_total_ = 0;
};

}  // namespace tsdag
