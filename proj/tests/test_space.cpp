#include <doctest.h>

#include <numbers>
#include <set>
#include <stdexcept>

#include "hybo/space.hpp"

using namespace hybo;

TEST_CASE("validate accepts a well-formed space") {
    SpaceSpec s{{{"a", 3}, {"b", 3}}, {{"c", 0.0, 1.0}}};
    CHECK(&validate(s) == &s);
}

TEST_CASE("validate reports the violated invariant") {
    CHECK_THROWS_WITH_AS(validate(SpaceSpec{{{"a", 1}}, {}}), doctest::Contains("arity must be >= 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate(SpaceSpec{{}, {{"c", 1.0, 0.0}}}), doctest::Contains("inverted bounds"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate(SpaceSpec{}), doctest::Contains("empty space"), std::invalid_argument);
}

TEST_CASE("normalize maps bounds affinely onto [-1, 1]") {
    SpaceSpec s{{}, {{"r", 10.0, 200.0}}};
    const double lo = 10.0, mid = 105.0;
    CHECK(normalize(s, std::span(&lo, 1))[0] == doctest::Approx(-1.0));
    CHECK(normalize(s, std::span(&mid, 1))[0] == doctest::Approx(0.0));

    SpaceSpec angle{{}, {{"t", 0.0, 2.0 * std::numbers::pi}}};
    const double quarter = std::numbers::pi / 2.0;
    CHECK(normalize(angle, std::span(&quarter, 1))[0] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("normalize and denormalize are inverse on random points") {
    SpaceSpec s{{}, {{"a", -3.0, 7.0}, {"b", 0.0625, 2.0}}};
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto x = sample_uniform(s, rng);
        const auto back = normalize(s, denormalize(s, x.x_c));
        for (std::size_t j = 0; j < 2; ++j) CHECK(back[j] == doctest::Approx(x.x_c[j]).epsilon(1e-12));
    }
}

TEST_CASE("normalize rejects out-of-bounds values") {
    SpaceSpec s{{}, {{"r", 10.0, 200.0}}};
    const double v = 9.0;
    CHECK_THROWS_AS(normalize(s, std::span(&v, 1)), std::invalid_argument);
}

TEST_CASE("sample_uniform with no discrete block") {
    SpaceSpec s{{}, {{"c", 0.0, 1.0}}};
    Rng rng(123);
    const auto x = sample_uniform(s, rng);
    CHECK(x.x_d.empty());
    REQUIRE(x.x_c.size() == 1);
    CHECK(x.x_c[0] >= -1.0);
    CHECK(x.x_c[0] <= 1.0);
}

TEST_CASE("sample_uniform category frequencies are uniform") {
    SpaceSpec s{{{"a", 4}}, {}};
    Rng rng(99);
    std::vector<int> count(4, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++count[static_cast<std::size_t>(sample_uniform(s, rng).x_d[0])];
    for (int c : count) CHECK(std::abs(static_cast<double>(c) / n - 0.25) < 0.02);
}

TEST_CASE("sample_uniform is deterministic per seed") {
    SpaceSpec s{{{"a", 5}, {"b", 2}}, {{"c", 0.0, 1.0}, {"d", -1.0, 1.0}}};
    Rng a(7), b(7);
    for (int i = 0; i < 20; ++i) CHECK(sample_uniform(s, a) == sample_uniform(s, b));
}

TEST_CASE("hamming neighbors") {
    SpaceSpec binary{{{"a", 2}, {"b", 2}}, {}};
    const std::vector<int> origin{0, 0};
    CHECK(hamming_neighbors(binary, origin) == std::vector<std::vector<int>>{{1, 0}, {0, 1}});

    SpaceSpec four{{{"a", 4}}, {}};
    const std::vector<int> two{2};
    CHECK(hamming_neighbors(four, two) == std::vector<std::vector<int>>{{0}, {1}, {3}});

    SpaceSpec mixed{{{"a", 2}, {"b", 3}, {"c", 5}}, {}};
    const std::vector<int> x{1, 2, 4};
    const auto nb = hamming_neighbors(mixed, x);
    CHECK(nb.size() == 7);
    CHECK(std::set<std::vector<int>>(nb.begin(), nb.end()).size() == 7);
}

TEST_CASE("discrete cardinality") {
    CHECK(discrete_cardinality(SpaceSpec{{{"a", 2}, {"b", 3}, {"c", 5}}, {}}) == 30);
    CHECK(discrete_cardinality(SpaceSpec{{}, {{"c", 0.0, 1.0}}}) == 1);
}
