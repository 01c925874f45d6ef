#pragma once

#include <cstdint>
#include <random>

namespace decmatch {

// SplitMix64; used to derive independent substreams from one run seed so that
// parallel trials and nested components never share a generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return engine_; }

    // Deterministic child stream; `tag` distinguishes siblings.
    Rng split(std::uint64_t tag) const {
        std::uint64_t s = seed_ ^ (0xd1342543de82ef95ULL * (tag + 1));
        return Rng(splitmix64(s));
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }
    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace decmatch
