#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hybo/config.hpp"
#include "hybo/runner.hpp"

using namespace hybo;
namespace fs = std::filesystem;

namespace {

RunConfig quick(Method m, int budget = 3) {
    RunConfig cfg;
    cfg.method = m;
    cfg.budget = budget;
    cfg.n_init = 3;
    cfg.afo.cma_budget = 200;
    cfg.afo.cma_population = 20;
    cfg.afo.ls_restarts = 3;
    cfg.hyper.n_samples = 3;
    cfg.hyper.burn_in = 5;
    return cfg;
}

fs::path temp_path(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "hybo_runner_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> data_rows(const fs::path& p) {
    std::vector<std::string> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    return rows;
}

}  // namespace

TEST_CASE("method names round trip") {
    for (Method m : {Method::hybo, Method::hybo_no_marg, Method::random, Method::cont_bo, Method::vanilla_bo}) {
        CHECK(parse_method(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_method("bogus"), std::invalid_argument);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.budget = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.n_init = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("config file parsing and overrides") {
    std::istringstream in("# comment\nbenchmark = pressure_vessel\nmethod=cont_bo  # trailing\n\nbudget = 7\n"
                          "max_order = full\nafo.cma_sigma0 = 0.25\ntiming = off\n");
    RunConfig cfg;
    for (const auto& [k, v] : parse_key_values(in, "inline")) apply_setting(cfg, k, v);
    CHECK(cfg.benchmark == "pressure_vessel");
    CHECK(cfg.method == Method::cont_bo);
    CHECK(cfg.budget == 7);
    CHECK(cfg.max_order == 0);
    CHECK(cfg.afo.cma_sigma0 == 0.25);
    CHECK_FALSE(cfg.record_timing);
    CHECK_THROWS_AS(apply_setting(cfg, "budget", "seven"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(cfg, "no_such_key", "1"), std::invalid_argument);
    std::istringstream bad("just words\n");
    CHECK_THROWS_AS(parse_key_values(bad, "bad"), std::invalid_argument);

    // describe() output is accepted back by apply_setting().
    RunConfig round;
    for (const auto& [k, v] : describe(cfg)) {
        if (k != "seed") apply_setting(round, k, v);
    }
    CHECK(describe(round) == describe(cfg));
}

TEST_CASE("evaluation accounting for every method") {
    for (Method m : {Method::hybo, Method::hybo_no_marg, Method::random, Method::cont_bo, Method::vanilla_bo}) {
        auto cfg = quick(m, 1);
        cfg.n_init = 1;
        const auto log = run_bo(cfg);
        CHECK(log.records.size() == 2);

        cfg = quick(m, 4);
        cfg.benchmark = "pressure_vessel";
        const auto longer = run_bo(cfg);
        REQUIRE(longer.records.size() == 7);
        const auto bench = lookup(cfg.benchmark);
        for (std::size_t i = 0; i < longer.records.size(); ++i) {
            const auto& r = longer.records[i];
            if (i > 0) CHECK(r.best <= longer.records[i - 1].best);
            // Points are recorded in raw units on the benchmark's level grid.
            for (std::size_t j = 0; j < r.point.discrete.size(); ++j) {
                const auto& lv = bench.levels[j];
                CHECK(std::find(lv.begin(), lv.end(), r.point.discrete[j]) != lv.end());
            }
            CHECK(r.y == bench.evaluate(r.point));
            CHECK(r.fit_s >= 0.0);
            CHECK(r.sample_s >= 0.0);
            CHECK(r.afo_s >= 0.0);
            CHECK(r.fit_s + r.sample_s + r.afo_s <= 1.1 * r.wall_s + 1e-6);
        }
    }
}

TEST_CASE("run_baseline rejects model-based hybo methods") {
    CHECK_THROWS_AS(run_baseline(quick(Method::hybo)), std::invalid_argument);
}

TEST_CASE("runs are reproducible per seed") {
    for (Method m : {Method::hybo, Method::cont_bo}) {
        auto cfg = quick(m);
        cfg.seed = 11;
        const auto a = run_bo(cfg);
        const auto b = run_bo(cfg);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].y == b.records[i].y);
            CHECK(a.records[i].point.continuous == b.records[i].point.continuous);
        }
    }
}

TEST_CASE("csv output") {
    const auto empty_path = temp_path("empty.csv");
    RunLog empty;
    empty.point_columns = {"a", "b"};
    emit(empty, empty_path.string());
    const auto rows = data_rows(empty_path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == "iter,y,best,fit_s,sample_s,afo_s,a,b");

    auto cfg = quick(Method::random, 3);
    cfg.n_init = 1;
    cfg.output_path = temp_path("three.csv").string();
    const auto log = run_bo(cfg);
    const auto body = data_rows(cfg.output_path);
    CHECK(body.size() == 1 + log.records.size());
    const auto curve = read_incumbent_curve(cfg.output_path);
    REQUIRE(curve.size() == log.records.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i] == log.records[i].best);
        if (i > 0) CHECK(curve[i] <= curve[i - 1]);
    }
    const auto text = slurp(cfg.output_path);
    CHECK(text.find("# method = random") != std::string::npos);
    CHECK(text.find("# code_version = ") != std::string::npos);
    CHECK(text.find("# summary: final_best=") != std::string::npos);
    CHECK(text.find("# argbest:") != std::string::npos);

    const auto copy = temp_path("copy.csv");
    emit(log, copy.string());
    CHECK(read_incumbent_curve(copy.string()) == curve);

    CHECK_THROWS_WITH(emit(log, "/nonexistent_dir/x.csv"), doctest::Contains("/nonexistent_dir/x.csv"));
}

TEST_CASE("sweep output does not depend on the thread count") {
    auto cfg = quick(Method::hybo_no_marg, 2);
    cfg.record_timing = false;
    cfg.output_path = temp_path("serial").string();
    run_sweep(cfg, {1, 2, 3}, 1);
    cfg.output_path = temp_path("parallel").string();
    run_sweep(cfg, {1, 2, 3}, 3);
    for (int s = 1; s <= 3; ++s) {
        const auto tag = ".seed" + std::to_string(s) + ".csv";
        CHECK(data_rows(temp_path("serial" + tag)) == data_rows(temp_path("parallel" + tag)));
    }
}

TEST_CASE("surrogate mae experiment") {
    const auto table = surrogate_mae_experiment("pressure_vessel", {5, 10}, 20, {1, 2, 3});
    CHECK(table.rows.size() == 6);
    CHECK(table.summary.size() == 2);
    for (const auto& r : table.rows) CHECK(r.mae >= 0.0);

    // Training on the test set itself with a noise-free prior interpolates.
    const auto bench = lookup("mixint_sphere");
    Rng rng(4);
    std::vector<HybridPoint> X;
    std::vector<double> y;
    for (int i = 0; i < 15; ++i) {
        X.push_back(sample_uniform(bench.spec, rng));
        y.push_back(bench(X.back()));
    }
    HyperPriorSpec noiseless;
    noiseless.noise_lower = 1e-12;
    noiseless.noise_upper = 1e-11;
    CHECK(surrogate_mae(bench.spec, X, y, X, y, 0, rng, noiseless) < 1e-6);
}

TEST_CASE("cli exit codes") {
    const std::string cli = HYBO_CLI_PATH;
    const auto out = temp_path("cli.csv").string();
    CHECK(std::system((cli + " list > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " run --seed 1 --method random --budget 2 --output " + out + " > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " run --method random --budget 2 > /dev/null 2>&1").c_str()) != 0);
    CHECK(std::system((cli + " run --seed 1 --benchmark nope > /dev/null 2>&1").c_str()) != 0);
    CHECK(std::system((cli + " bench eval pressure_vessel --discrete 1,1 --continuous 10,10 > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " bench eval pressure_vessel --discrete 1,1 --continuous 1,10 > /dev/null 2>&1").c_str()) !=
          0);
}
