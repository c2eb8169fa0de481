#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "godan/perm.hpp"
#include "godan/rng.hpp"

using namespace godan;

namespace {

Permutation p(const std::string& s) { return parse_permutation(s); }

// Independent composition oracle: evaluate sigma(tau(i)) index by index.
Permutation compose_by_rule(const Permutation& sigma, const Permutation& tau) {
    std::vector<uint8_t> im;
    for (int i = 1; i <= sigma.n(); ++i) im.push_back(sigma.at(tau.at(i)));
    return Permutation(im);
}

int inversions(const Permutation& v) {
    int count = 0;
    for (int i = 1; i <= v.n(); ++i)
        for (int j = i + 1; j <= v.n(); ++j)
            if (v.at(i) > v.at(j)) ++count;
    return count;
}

Permutation random_perm(Rng& rng, int n) {
    std::vector<uint8_t> im(static_cast<size_t>(n));
    std::iota(im.begin(), im.end(), uint8_t{1});
    for (int i = n - 1; i > 0; --i)
        std::swap(im[static_cast<size_t>(i)], im[rng.below(static_cast<uint64_t>(i + 1))]);
    return Permutation(im);
}

}  // namespace

TEST_CASE("composition follows sigma(tau(i))") {
    CHECK(compose(Permutation::identity(4), p("2143")) == p("2143"));
    CHECK(compose(p("2143"), Permutation::identity(4)) == p("2143"));
    CHECK(compose(p("213"), p("231")) == p("132"));

    Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(4));
        const auto a = random_perm(rng, n), b = random_perm(rng, n);
        CHECK(compose(a, b) == compose_by_rule(a, b));
    }
    CHECK_THROWS_AS(compose(p("213"), p("2143")), std::invalid_argument);
}

TEST_CASE("generator application is right multiplication") {
    CHECK(apply_generator(p("1234"), {GenKind::Swap12, 0}) == p("2134"));
    CHECK(apply_generator(p("123"), {GenKind::Cycle123, 0}) == p("231"));
    CHECK(apply_generator(p("1234"), {GenKind::DoubleSwap, 4}) == p("2143"));
    CHECK_THROWS_AS(apply_generator(p("123"), GeneratorTag{GenKind::DoubleSwap, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generator_perm(5, {GenKind::DoubleSwap, 6}), std::invalid_argument);

    // involutions and mutual inverses
    Rng rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(3));
        const auto v = random_perm(rng, n);
        for (const auto& g : omega_star(n)) CHECK(apply_generator(v, g) != v);
        CHECK(apply_generator(apply_generator(v, {GenKind::Swap12, 0}), {GenKind::Swap12, 0}) == v);
        CHECK(apply_generator(apply_generator(v, {GenKind::DoubleSwap, 4}),
                              {GenKind::DoubleSwap, 4}) == v);
        CHECK(apply_generator(apply_generator(v, {GenKind::Cycle123, 0}), {GenKind::Cycle132, 0}) ==
              v);
    }
}

TEST_CASE("parity matches the inversion count") {
    CHECK(parity(Permutation::identity(5)) == Parity::Even);
    CHECK(parity(p("213")) == Parity::Odd);
    CHECK(inversions(p("213")) == 1);
    CHECK(parity(p("231")) == Parity::Even);
    CHECK(inversions(p("231")) == 2);

    Rng rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(4));
        const auto v = random_perm(rng, n);
        CHECK((parity(v) == Parity::Even) == (inversions(v) % 2 == 0));
        // Swap12 flips parity, the even generators preserve it
        CHECK(parity(apply_generator(v, {GenKind::Swap12, 0})) != parity(v));
        CHECK(parity(apply_generator(v, {GenKind::Cycle123, 0})) == parity(v));
        if (n >= 4) CHECK(parity(apply_generator(v, {GenKind::DoubleSwap, 4})) == parity(v));
    }
}

TEST_CASE("inverse satisfies the group axioms") {
    CHECK(inverse(Permutation::identity(4)) == Permutation::identity(4));
    CHECK(inverse(p("231")) == p("312"));
    Rng rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const auto v = random_perm(rng, 5);
        CHECK(compose(v, inverse(v)) == Permutation::identity(5));
        CHECK(compose(inverse(v), v) == Permutation::identity(5));
    }
}

TEST_CASE("lexicographic rank and unrank") {
    CHECK(perm_rank(p("123")) == 0);
    CHECK(perm_rank(p("213")) == 2);  // 123, 132, 213 in lexicographic order
    CHECK(perm_unrank(3, 5) == p("321"));
    CHECK_THROWS_AS(perm_unrank(3, 6), std::invalid_argument);

    // exhaustive bijection against an std::next_permutation oracle
    for (int n = 3; n <= 6; ++n) {
        std::vector<uint8_t> im(static_cast<size_t>(n));
        std::iota(im.begin(), im.end(), uint8_t{1});
        uint64_t r = 0;
        do {
            const Permutation v(im);
            CHECK(perm_rank(v) == r);
            CHECK(perm_unrank(n, r) == v);
            ++r;
        } while (std::next_permutation(im.begin(), im.end()));
        CHECK(r == factorial(n));
    }
}

TEST_CASE("textual permutation forms") {
    CHECK(to_string(p("2143")) == "2143");
    CHECK(parse_permutation("2,1,4,3") == p("2143"));
    const auto big = perm_unrank(10, 1);
    CHECK(to_string(big) == "1,2,3,4,5,6,7,8,10,9");
    CHECK(parse_permutation(to_string(big)) == big);
    CHECK_THROWS_AS(parse_permutation("2153"), std::invalid_argument);
    CHECK_THROWS_AS(parse_permutation("22"), std::invalid_argument);
    CHECK_THROWS_AS(parse_permutation(""), std::invalid_argument);
}
