#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace godan {

// splitmix64: deterministic across platforms, which std distributions are not.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    // k distinct values from [0, universe), ascending.
    std::vector<uint64_t> sample_distinct(uint64_t universe, size_t k);

private:
    uint64_t state_;
};

}  // namespace godan
