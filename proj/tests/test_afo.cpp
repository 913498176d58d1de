#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hybo/afo.hpp"

using namespace hybo;

namespace {

// Best assignment by full enumeration; first maximizer in lexicographic order.
std::vector<int> exhaustive_argmax(const DiscreteObjective& f, const SpaceSpec& s) {
    std::vector<int> x(s.num_discrete(), 0), best = x;
    double best_v = f(x);
    while (true) {
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == s.discrete_vars[i].arity) x[i++] = 0;
        if (i == x.size()) break;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best = x;
        }
    }
    return best;
}

SpaceSpec binary_space(int m) {
    SpaceSpec s;
    for (int i = 0; i < m; ++i) s.discrete_vars.push_back({"b" + std::to_string(i), 2});
    return s;
}

}  // namespace

TEST_CASE("cma-es solves a shifted sphere") {
    Rng rng(1);
    const AfoConfig cfg;
    const ContinuousObjective f = [](std::span<const double> x) {
        return -((x[0] - 0.3) * (x[0] - 0.3) + (x[1] - 0.3) * (x[1] - 0.3));
    };
    const auto r = cmaes_maximize(f, 2, cfg, rng);
    CHECK(r.value > -1e-6);
    CHECK(r.evaluations <= 2000);
}

TEST_CASE("cma-es in one dimension") {
    Rng rng(2);
    const ContinuousObjective f = [](std::span<const double> x) { return -(x[0] - 0.5) * (x[0] - 0.5); };
    const auto r = cmaes_maximize(f, 1, AfoConfig{}, rng);
    CHECK(std::abs(r.x[0] - 0.5) < 1e-3);
}

TEST_CASE("cma-es with a single generation returns its best member") {
    AfoConfig cfg;
    cfg.cma_budget = cfg.cma_population;
    Rng rng(3);
    std::vector<std::vector<double>> seen;
    const ContinuousObjective f = [&](std::span<const double> x) {
        seen.emplace_back(x.begin(), x.end());
        return -std::abs(x[0] + 0.2) - std::abs(x[1]);
    };
    const std::vector<double> start{0.0, 0.0};
    const auto r = cmaes_maximize(f, start, cfg, rng);
    CHECK(r.evaluations == cfg.cma_population);
    double best = -1e300;
    for (const auto& x : seen) best = std::max(best, -std::abs(x[0] + 0.2) - std::abs(x[1]));
    CHECK(r.value == best);
}

TEST_CASE("cma-es candidates stay inside the box") {
    Rng rng(4);
    bool inside = true;
    const ContinuousObjective f = [&](std::span<const double> x) {
        for (double v : x) inside = inside && v >= -1.0 && v <= 1.0;
        return x[0] + x[1] + x[2];
    };
    AfoConfig cfg;
    cfg.cma_sigma0 = 0.8;
    const auto r = cmaes_maximize(f, 3, cfg, rng);
    CHECK(inside);
    CHECK(r.value > 2.9);
}

TEST_CASE("local search matches enumeration on linear pseudo-boolean functions") {
    Rng rng(5);
    std::normal_distribution<double> w;
    for (int m = 1; m <= 10; ++m) {
        const auto s = binary_space(m);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> coef(static_cast<std::size_t>(m));
            for (auto& c : coef) c = w(rng);
            const DiscreteObjective f = [&](std::span<const int> x) {
                double v = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) v += coef[i] * x[i];
                return v;
            };
            const std::vector<int> init(static_cast<std::size_t>(m), 0);
            CHECK(discrete_local_search(f, s, init, AfoConfig{}, rng).x == exhaustive_argmax(f, s));
        }
    }
}

TEST_CASE("local search on a plateau keeps the start") {
    Rng rng(6);
    const auto s = binary_space(4);
    const std::vector<int> init{1, 0, 1, 1};
    const DiscreteObjective flat = [](std::span<const int>) { return 2.0; };
    CHECK(discrete_local_search(flat, s, init, AfoConfig{}, rng).x == init);
}

TEST_CASE("local search on two binary variables") {
    Rng rng(7);
    const auto s = binary_space(2);
    const DiscreteObjective f = [](std::span<const int> x) { return x[0] == 1 && x[1] == 0 ? 3.0 : x[0] + x[1]; };
    const std::vector<int> init{0, 1};
    CHECK(discrete_local_search(f, s, init, AfoConfig{}, rng).x == exhaustive_argmax(f, s));
}

TEST_CASE("alternating optimization is exact on separable objectives") {
    SpaceSpec s = binary_space(3);
    s.continuous_vars.push_back({"c", -1.0, 1.0});
    Rng rng(8);
    std::normal_distribution<double> w;
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<double> g{w(rng), w(rng), w(rng), w(rng)};
        const double target = std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
        const HybridObjective af = [&](const HybridPoint& x) {
            const double dv = g[0] * x.x_d[0] + g[1] * x.x_d[1] * x.x_d[2] + g[2] * x.x_d[2] - g[3] * x.x_d[0] * x.x_d[1];
            return dv - (x.x_c[0] - target) * (x.x_c[0] - target);
        };
        const DiscreteObjective disc = [&](std::span<const int> d) { return af({{d.begin(), d.end()}, {target}}); };
        const auto best_d = exhaustive_argmax(disc, s);
        const auto r = optimize_acquisition(af, s, AfoConfig{}, rng, {{0, 0, 0}, {0.0}});
        CHECK(r.x_d == best_d);
        CHECK(std::abs(r.x_c[0] - target) < 1e-3);
    }
}

TEST_CASE("degenerate subspaces") {
    Rng rng(9);
    const auto disc = binary_space(3);
    const HybridObjective fd = [](const HybridPoint& x) { return x.x_d[0] - x.x_d[1] + x.x_d[2]; };
    CHECK(optimize_acquisition(fd, disc, AfoConfig{}, rng, {{0, 0, 0}, {}}).x_d == std::vector<int>{1, 0, 1});

    SpaceSpec cont{{}, {{"a", -1.0, 1.0}, {"b", -1.0, 1.0}}};
    const HybridObjective fc = [](const HybridPoint& x) {
        return -(x.x_c[0] + 0.4) * (x.x_c[0] + 0.4) - (x.x_c[1] - 0.1) * (x.x_c[1] - 0.1);
    };
    const auto r = optimize_acquisition(fc, cont, AfoConfig{}, rng, {{}, {0.0, 0.0}});
    CHECK(std::abs(r.x_c[0] + 0.4) < 1e-3);
    CHECK(std::abs(r.x_c[1] - 0.1) < 1e-3);
}

TEST_CASE("alternating optimization never loses the warm start") {
    SpaceSpec s = binary_space(4);
    s.continuous_vars.push_back({"c", -1.0, 1.0});
    Rng rng(10);
    const HybridPoint warm{{1, 1, 0, 1}, {0.77}};
    // Needle at the warm start, flat elsewhere.
    const HybridObjective af = [&](const HybridPoint& x) { return x == warm ? 1.0 : 0.0; };
    const auto r = optimize_acquisition(af, s, AfoConfig{}, rng, warm);
    CHECK(af(r) >= af(warm));
}

TEST_CASE("afo config validation") {
    AfoConfig cfg;
    cfg.alternations = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
