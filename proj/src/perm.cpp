#include "godan/perm.hpp"

#include <algorithm>
#include <stdexcept>

namespace godan {

namespace {

void check_image(const std::vector<uint8_t>& image) {
    const size_t n = image.size();
    if (n == 0 || n > 64) throw std::invalid_argument("permutation order out of range");
    uint64_t seen = 0;
    for (uint8_t s : image) {
        if (s < 1 || s > n) throw std::invalid_argument("symbol out of range in one-line notation");
        if (seen & (1ull << (s - 1))) throw std::invalid_argument("repeated symbol in one-line notation");
        seen |= 1ull << (s - 1);
    }
}

}  // namespace

Permutation::Permutation(std::vector<uint8_t> image) : image_(std::move(image)) {
    check_image(image_);
}

Permutation Permutation::identity(int n) {
    std::vector<uint8_t> im(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
    return Permutation(std::move(im));
}

std::string to_string(const GeneratorTag& g) {
    switch (g.kind) {
        case GenKind::Swap12: return "(12)";
        case GenKind::Cycle123: return "(123)";
        case GenKind::Cycle132: return "(132)";
        case GenKind::DoubleSwap: return "(12)(3" + std::to_string(g.i) + ")";
    }
    return "?";
}

Permutation generator_perm(int n, const GeneratorTag& g) {
    if (n < 3) throw std::invalid_argument("generators need n >= 3");
    std::vector<uint8_t> im(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
    switch (g.kind) {
        case GenKind::Swap12:
            std::swap(im[0], im[1]);
            break;
        case GenKind::Cycle123:  // 1->2, 2->3, 3->1 as a function; one-line is 231
            im[0] = 2; im[1] = 3; im[2] = 1;
            break;
        case GenKind::Cycle132:
            im[0] = 3; im[1] = 1; im[2] = 2;
            break;
        case GenKind::DoubleSwap:
            if (g.i < 4 || g.i > n) throw std::invalid_argument("DoubleSwap index out of range");
            std::swap(im[0], im[1]);
            std::swap(im[2], im[static_cast<size_t>(g.i - 1)]);
            break;
    }
    return Permutation(std::move(im));
}

std::vector<GeneratorTag> omega_star(int n) {
    std::vector<GeneratorTag> gens;
    gens.push_back({GenKind::Swap12, 0});
    gens.push_back({GenKind::Cycle123, 0});
    gens.push_back({GenKind::Cycle132, 0});
    for (int i = 4; i <= n; ++i) gens.push_back({GenKind::DoubleSwap, i});
    return gens;
}

std::vector<GeneratorTag> omega(int n) {
    auto gens = omega_star(n);
    gens.erase(gens.begin());
    return gens;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
    if (sigma.n() != tau.n()) throw std::invalid_argument("compose: order mismatch");
    const int n = sigma.n();
    std::vector<uint8_t> im(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) im[static_cast<size_t>(i - 1)] = sigma.at(tau.at(i));
    return Permutation(std::move(im));
}

Permutation apply_generator(const Permutation& v, const GeneratorTag& g) {
    return compose(v, generator_perm(v.n(), g));
}

Parity parity(const Permutation& v) {
    int inv = 0;
    const int n = v.n();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (v.at(i) > v.at(j)) ++inv;
    return (inv % 2 == 0) ? Parity::Even : Parity::Odd;
}

Permutation inverse(const Permutation& v) {
    const int n = v.n();
    std::vector<uint8_t> im(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) im[static_cast<size_t>(v.at(i) - 1)] = static_cast<uint8_t>(i);
    return Permutation(std::move(im));
}

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

uint64_t perm_rank(const Permutation& v) {
    const int n = v.n();
    uint64_t r = 0;
    for (int i = 1; i <= n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j <= n; ++j)
            if (v.at(j) < v.at(i)) ++smaller;
        r += static_cast<uint64_t>(smaller) * factorial(n - i);
    }
    return r;
}

Permutation perm_unrank(int n, uint64_t r) {
    if (r >= factorial(n)) throw std::invalid_argument("unrank: rank out of range");
    std::vector<uint8_t> pool(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
    std::vector<uint8_t> im;
    im.reserve(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        const uint64_t f = factorial(i);
        const size_t idx = static_cast<size_t>(r / f);
        r %= f;
        im.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation(std::move(im));
}

std::string to_string(const Permutation& v) {
    std::string out;
    const int n = v.n();
    for (int i = 1; i <= n; ++i) {
        if (n >= 10 && i > 1) out += ',';
        out += std::to_string(static_cast<int>(v.at(i)));
    }
    return out;
}

Permutation parse_permutation(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty permutation string");
    std::vector<uint8_t> im;
    if (s.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos < s.size()) {
            size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            const std::string tok = s.substr(pos, next - pos);
            if (tok.empty()) throw std::invalid_argument("empty token in permutation string");
            int val = 0;
            for (char c : tok) {
                if (c < '0' || c > '9') throw std::invalid_argument("bad character in permutation string");
                val = val * 10 + (c - '0');
            }
            if (val < 1 || val > 255) throw std::invalid_argument("symbol out of range");
            im.push_back(static_cast<uint8_t>(val));
            pos = next + 1;
        }
    } else {
        for (char c : s) {
            if (c < '1' || c > '9') throw std::invalid_argument("bad character in permutation string");
            im.push_back(static_cast<uint8_t>(c - '0'));
        }
    }
    return Permutation(std::move(im));
}

}  // namespace godan
