#pragma once

#include <cstdint>
#include <random>

// Seedable, splittable pseudorandom stream. One stream per learner instance.
//
// Consumption contract (relied on for dense/sparse replay): every draw
// consumes exactly one mt19937_64 output word. A learner round consumes the
// action draw first, then one word per sign, and nothing else.

namespace smb {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // 53-bit uniform in [0,1).
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Fair sign in {-1,+1}; consumes one word.
    int next_sign() { return (gen_() >> 63) ? +1 : -1; }

    // Independent child stream; advances this stream by one word.
    Rng split() { return Rng(splitmix64(gen_())); }

private:
    std::mt19937_64 gen_;
};

}  // namespace smb
