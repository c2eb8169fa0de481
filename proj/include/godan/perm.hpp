#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace godan {

// A permutation of [n] = {1..n} in one-line notation p_1 p_2 ... p_n.
// image[i] is p_{i+1}; symbols are 1-based, storage is 0-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<uint8_t> image);

    static Permutation identity(int n);

    int n() const { return static_cast<int>(image_.size()); }
    // Symbol at 1-based position i.
    uint8_t at(int i) const { return image_[static_cast<size_t>(i - 1)]; }
    const std::vector<uint8_t>& image() const { return image_; }

    bool operator==(const Permutation& o) const = default;
    bool operator<(const Permutation& o) const { return image_ < o.image_; }

private:
    std::vector<uint8_t> image_;
};

// Generators of the connection sets. Omega = {Cycle123, Cycle132, DoubleSwap(4..n)},
// Omega* additionally contains Swap12.
enum class GenKind : uint8_t { Swap12, Cycle123, Cycle132, DoubleSwap };

struct GeneratorTag {
    GenKind kind = GenKind::Swap12;
    int i = 0;  // only meaningful for DoubleSwap: (12)(3i), 4 <= i <= n

    bool operator==(const GeneratorTag&) const = default;
};

std::string to_string(const GeneratorTag& g);

// The generator as an explicit permutation of [n].
Permutation generator_perm(int n, const GeneratorTag& g);

// Connection sets, in a fixed order: Swap12, Cycle123, Cycle132, DoubleSwap(4)..DoubleSwap(n).
std::vector<GeneratorTag> omega_star(int n);
// Same without Swap12.
std::vector<GeneratorTag> omega(int n);

// (sigma o tau)(i) = sigma(tau(i)). Throws std::invalid_argument on mismatched n.
Permutation compose(const Permutation& sigma, const Permutation& tau);

// v o s* for the generator's permutation s*.
Permutation apply_generator(const Permutation& v, const GeneratorTag& g);

enum class Parity : uint8_t { Even, Odd };
Parity parity(const Permutation& v);

Permutation inverse(const Permutation& v);

// Lexicographic rank over one-line notations (factorial number system).
uint64_t perm_rank(const Permutation& v);
Permutation perm_unrank(int n, uint64_t r);

uint64_t factorial(int n);

// Textual form: bare digits for n <= 9 ("2143"), comma-separated for n >= 10.
std::string to_string(const Permutation& v);
// Accepts both forms. Throws std::invalid_argument when not a permutation of [n]
// (n inferred from the string).
Permutation parse_permutation(const std::string& s);

}  // namespace godan
