#ifndef SNS_RNG_HPP
#define SNS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sns {

// Deterministic generator used by every randomized step. mt19937_64 is fully
// specified by the standard; the bounded/real draws below are implemented here
// rather than with std distributions, whose output is implementation-defined.
// Trial seeds follow the contract seed = base_seed + trial_index.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    uint64_t bounded(uint64_t n) {
        if (n == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Exponential with the given rate (events per unit time).
    double exponential(double rate) { return -std::log1p(-unit()) / rate; }

    // Box-Muller; the spare value is discarded to keep draw counts predictable.
    double normal(double mu, double sigma) {
        double u1 = unit();
        double u2 = unit();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    bool bernoulli(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

// Stateless mix for deriving independent substream seeds.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace sns

#endif
