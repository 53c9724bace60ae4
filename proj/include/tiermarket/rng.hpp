#ifndef TIERMARKET_RNG_HPP
#define TIERMARKET_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace tiermarket {

// Counter-based SplitMix64 stream. A stream is identified by a key derived
// from the master seed plus a list of stream ids (e.g. {purpose, day, user});
// the n-th draw of a stream is a pure function of (key, n). This makes every
// random quantity in the simulator reproducible independently of evaluation
// order, and the sequences are easy to match from other languages.
class Rng {
public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
        std::uint64_t key = mix64(seed);
        for (std::uint64_t id : ids) key = mix64(key ^ id);
        return Rng(key);
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        double u = next_double();
        long long span = hi - lo + 1;
        long long v = lo + static_cast<long long>(u * static_cast<double>(span));
        return v > hi ? hi : v;
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace tiermarket

#endif
