#pragma once

#include <cstdint>
#include <vector>

namespace wrc {

/// xoshiro256++ seeded through splitmix64.  Streams for parallel work units
/// are derived by folding the unit keys into the seed, so results are
/// reproducible for a given (seed, key...) regardless of thread count.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    /// Independent stream keyed by (seed, k1, k2, k3).
    static Rng stream(uint64_t seed, uint64_t k1, uint64_t k2 = 0, uint64_t k3 = 0) {
        uint64_t x = seed;
        uint64_t h = splitmix64(x);
        x ^= k1 + 0x9e3779b97f4a7c15ull;
        h ^= splitmix64(x);
        x ^= k2 + 0xbf58476d1ce4e5b9ull;
        h ^= splitmix64(x);
        x ^= k3 + 0x94d049bb133111ebull;
        h ^= splitmix64(x);
        return Rng(h);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in the open interval (0,1).
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Unbiased integer in [0, n), n >= 1 (Lemire's bounded method).
    uint64_t bounded(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t state_[4];
};

/// In-place Fisher-Yates shuffle with unbiased index draws.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.bounded(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace wrc
