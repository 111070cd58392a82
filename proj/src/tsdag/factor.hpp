#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tsdag {

/// Dense table over the joint assignment space of its scope. Values are
/// row-major in scope order: the last scope variable varies fastest.
class Factor {
public:
    Factor() = default;
    Factor(std::vector<int> scope, std::vector<int> cards);

    const std::vector<int>& scope() const { return scope_; }
    const std::vector<int>& cards() const { return cards_; }
    int64_t size() const { return static_cast<int64_t>(values_.size()); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    double& operator[](int64_t i) { return values_[i]; }
    double operator[](int64_t i) const { return values_[i]; }

    /// Flat index of an assignment given in scope order.
    int64_t flat_index(std::span<const int> assignment) const;
    /// Inverse of flat_index.
    void unflatten(int64_t index, std::span<int> out) const;
    /// Value for a full assignment indexed by global variable id.
    double value_at_global(std::span<const int> global_assignment) const;
    /// Flat index for a full global assignment.
    int64_t flat_index_global(std::span<const int> global_assignment) const;

    double sum() const;
    void normalize();
    bool is_distribution(double tol = 1e-9) const;

    bool same_domain(const Factor& o) const { return scope_ == o.scope_ && cards_ == o.cards_; }

    /// Sum out everything except `keep` (a subset of the scope, in the order
    /// given, which becomes the scope of the result).
    Factor marginal(const std::vector<int>& keep) const;

    double l1_distance(const Factor& o) const;

private:
    std::vector<int> scope_;
    std::vector<int> cards_;
    std::vector<int64_t> strides_;
    std::vector<double> values_;
};

/// sum p ln(p/q) with the conventions 0 ln 0 = 0, 0 ln(0/0) = 0 and
/// x ln(x/0) = +inf for x > 0. Natural log. Scopes must match.
double kl_divergence(const Factor& p, const Factor& q);

}  // namespace tsdag
