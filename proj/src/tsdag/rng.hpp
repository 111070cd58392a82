#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace tsdag {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seeded generator with explicit stream derivation so parallel trials own
/// independent sequences. All draws go through uniform() to keep sample
/// sequences bit-reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Derive the seed of a child stream, e.g. per-trial streams.
    static uint64_t derive(uint64_t master, uint64_t stream) {
        return splitmix64(master ^ splitmix64(stream + 0x51ed270b7a63a5abULL));
    }

    uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    int uniform_int(int n) {
        if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
        return static_cast<int>(gen_() % static_cast<uint64_t>(n));
    }

    /// Inverse-CDF draw from an (unnormalized is fine) nonnegative weight row.
    int categorical(std::span<const double> w) {
        double total = 0;
        for (double x : w) total += x;
        double u = uniform() * total;
        double acc = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            acc += w[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(w.size()) - 1;
    }

    double exponential() { return -std::log1p(-uniform()); }

    int binomial(int n, double p) {
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (uniform() < p) ++k;
        return k;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_int(static_cast<int>(i))]);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tsdag
