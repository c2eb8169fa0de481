#include "godan/rng.hpp"

#include <algorithm>

namespace godan {

std::vector<uint64_t> Rng::sample_distinct(uint64_t universe, size_t k) {
    if (k > universe) throw std::invalid_argument("sample_distinct: k exceeds universe");
    std::vector<uint64_t> out;
    out.reserve(k);
    while (out.size() < k) {
        const uint64_t x = below(universe);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace godan
