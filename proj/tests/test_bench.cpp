#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hybo/bench.hpp"

using namespace hybo;

TEST_CASE("pressure vessel") {
    CHECK(pressure_vessel(1, 1, 10.0, 10.0) == doctest::Approx(470.111).epsilon(1e-12));
    CHECK(pressure_vessel(1, 1, 10.0, 20.0) - pressure_vessel(1, 1, 10.0, 10.0) ==
          doctest::Approx(62.24 + 31.661).epsilon(1e-12));
    CHECK_THROWS_AS(pressure_vessel(1, 1, 9.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(pressure_vessel(0, 1, 10.0, 10.0), std::invalid_argument);
}

TEST_CASE("welded beam formula shape with unit constants") {
    const auto unit = unit_welded_beam_constants();
    CHECK(welded_beam(1, 2, 1.0, 1.0, 2.0, 1.0, unit) == doctest::Approx(8.0));
    // With x1 = 0 the x5 dependence comes only through the second term.
    const double a = welded_beam(0, 0, 1.0, 1.0, 2.0, 1.0, unit);
    const double b = welded_beam(0, 0, 1.0, 1.0, 3.0, 1.0, unit);
    CHECK(b - a == doctest::Approx(1.0 * 1.0 * (0.0 + 1.0)));
}

TEST_CASE("welded beam constants file") {
    const auto path = default_welded_beam_path();
    CHECK(file_checksum(path) == 3428233912904225964ULL);
    const auto table = load_welded_beam_constants(path);
    CHECK(table.size() == 4);
    const auto bench = lookup("welded_beam");
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double v = bench(sample_uniform(bench.spec, rng));
        CHECK_MESSAGE(std::isfinite(v), "non-finite cost");
        CHECK(v > 0.0);
    }
}

TEST_CASE("speed reducer") {
    CHECK(speed_reducer(17, 2.6, 0.7, 7.3, 0.7, 2.9, 5.0) == doctest::Approx(17726.6462546).epsilon(1e-12));
    CHECK_THROWS_AS(speed_reducer(16, 2.6, 0.7, 7.3, 0.7, 2.9, 5.0), std::invalid_argument);

    // d/dx6 = -3.02 x2 x6 + 22.44 x6^2 + 1.58 x4 x6
    const double x2 = 3.1, x4 = 7.9, x6 = 3.3, h = 1e-6;
    const double fd = (speed_reducer(20, x2, 0.75, x4, 0.75, x6 + h, 5.2) -
                       speed_reducer(20, x2, 0.75, x4, 0.75, x6 - h, 5.2)) /
                      (2.0 * h);
    const double exact = -3.02 * x2 * x6 + 22.44 * x6 * x6 + 1.58 * x4 * x6;
    CHECK(std::abs(fd - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
}

TEST_CASE("mixint sphere") {
    MixintSphere zero{2, 1, {0.0, 0.0, 0.0}};
    CHECK(zero({{0.0, 0.0}, {0.0}}) == 0.0);

    const auto s = make_mixint_sphere(8, 2, 1);
    RawPoint at{{s.shift.begin(), s.shift.begin() + 8}, {s.shift.begin() + 8, s.shift.end()}};
    CHECK(s(at) == 0.0);
    for (double v : at.discrete) CHECK(v == std::round(v));
    at.continuous[1] += 1.0;
    CHECK(s(at) == doctest::Approx(1.0));

    const auto bench = lookup("mixint_sphere");
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const auto raw = bench.to_raw(sample_uniform(bench.spec, rng));
        double expect = 0.0;
        for (int j = 0; j < 8; ++j) expect += std::pow(raw.discrete[j] - s.shift[j], 2);
        for (int j = 0; j < 2; ++j) expect += std::pow(raw.continuous[j] - s.shift[8 + j], 2);
        CHECK(bench.evaluate(raw) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("registry") {
    const auto pv = lookup("pressure_vessel");
    CHECK(pv.spec.num_discrete() == 2);
    CHECK(pv.spec.num_continuous() == 2);
    const auto sr = lookup("speed_reducer");
    CHECK(sr.spec.num_discrete() == 1);
    CHECK(sr.spec.num_continuous() == 6);
    CHECK(lookup("mixint_sphere").spec.num_dims() == 10);
    CHECK(lookup("mixint_sphere_20").spec.num_dims() == 20);
    CHECK_THROWS_WITH(lookup("no_such"), doctest::Contains("pressure_vessel"));
}

TEST_CASE("evaluation is deterministic and guards its domain") {
    for (const auto& name : benchmark_names()) {
        const auto b = lookup(name);
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            const auto x = sample_uniform(b.spec, rng);
            CHECK(b(x) == b(x));
        }
    }
    const auto pv = lookup("pressure_vessel");
    CHECK_THROWS(pv.evaluate({{1.0, 1.0}, {300.0, 10.0}}));
}
