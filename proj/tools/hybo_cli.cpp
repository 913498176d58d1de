// Command-line front end: run, sweep, mae, bench eval, list.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hybo/config.hpp"
#include "hybo/runner.hpp"

namespace {

// Flags mirror the config-file keys; values given on the command line are
// applied after the file so they always win.
struct Overrides {
    std::map<std::string, std::string> values;

    void add(CLI::App* app) {
        for (const char* key : {"benchmark", "method", "budget", "n_init", "max_order", "afo.cma_population",
                                "afo.cma_sigma0", "afo.cma_budget", "afo.ls_restarts", "afo.alternations",
                                "hyper.n_samples", "hyper.burn_in", "output", "timing"}) {
            app->add_option_function<std::string>(std::string("--") + key,
                                                  [this, key](const std::string& v) { values[key] = v; },
                                                  std::string("override config key ") + key);
        }
    }

    hybo::RunConfig build(const std::string& config_path) const {
        hybo::RunConfig cfg = config_path.empty() ? hybo::RunConfig{} : hybo::load_run_config(config_path);
        for (const auto& [k, v] : values) hybo::apply_setting(cfg, k, v);
        return cfg;
    }
};

void print_summary(const hybo::RunLog& log) {
    std::printf("%s %s seed=%llu final_best=%.17g evaluations=%zu wall_s=%.3f\n", log.config.benchmark.c_str(),
                hybo::to_string(log.config.method).c_str(), static_cast<unsigned long long>(log.config.seed),
                log.final_best(), log.records.size(), log.total_wall_s);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian optimization over hybrid search spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    Overrides run_over;
    auto* run = app.add_subcommand("run", "single optimization run");
    run->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "random seed")->required();
    run_over.add(run);

    std::string sweep_config;
    std::vector<std::uint64_t> seeds;
    unsigned threads = 0;
    Overrides sweep_over;
    auto* sweep = app.add_subcommand("sweep", "independent runs over a seed list");
    sweep->add_option("--config", sweep_config, "key = value config file")->check(CLI::ExistingFile);
    sweep->add_option("--seeds", seeds, "seed list")->required()->delimiter(',');
    sweep->add_option("--threads", threads, "concurrent runs (0 = hardware concurrency)");
    sweep_over.add(sweep);

    std::string mae_bench = "mixint_sphere";
    std::string train_sizes = "10,20,50,100";
    int test_size = 200;
    std::vector<std::uint64_t> mae_seeds;
    std::string mae_order = "full";
    auto* mae = app.add_subcommand("mae", "surrogate accuracy versus training size");
    mae->add_option("--benchmark", mae_bench, "benchmark name");
    mae->add_option("--train-sizes", train_sizes, "comma-separated training sizes");
    mae->add_option("--test-size", test_size, "held-out test set size");
    mae->add_option("--seeds", mae_seeds, "seed list")->required()->delimiter(',');
    mae->add_option("--max-order", mae_order, "interaction order or 'full'");

    auto* bench = app.add_subcommand("bench", "benchmark utilities");
    bench->require_subcommand(1);
    std::string eval_name;
    std::vector<double> eval_discrete;
    std::vector<double> eval_continuous;
    auto* eval = bench->add_subcommand("eval", "evaluate a benchmark at raw coordinates");
    eval->add_option("name", eval_name, "benchmark name")->required();
    eval->add_option("--discrete", eval_discrete, "discrete level values")->delimiter(',');
    eval->add_option("--continuous", eval_continuous, "continuous values")->delimiter(',');

    auto* list = app.add_subcommand("list", "list registered benchmarks and methods");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = run_over.build(config_path);
            cfg.seed = seed;
            try {
                const auto log = cfg.method == hybo::Method::hybo || cfg.method == hybo::Method::hybo_no_marg
                                     ? hybo::run_bo(cfg)
                                     : hybo::run_baseline(cfg);
                print_summary(log);
            } catch (const hybo::RunError& e) {
                std::cerr << "error: run aborted after " << e.log.records.size() << " evaluations: " << e.what()
                          << "\n";
                return 2;
            }
        } else if (sweep->parsed()) {
            const auto cfg = sweep_over.build(sweep_config);
            for (const auto& log : hybo::run_sweep(cfg, seeds, threads)) print_summary(log);
        } else if (mae->parsed()) {
            const int order = mae_order == "full" ? 0 : std::stoi(mae_order);
            const auto table =
                hybo::surrogate_mae_experiment(mae_bench, parse_int_list(train_sizes), test_size, mae_seeds, order);
            std::printf("train_size,mean_mae,two_se,median_mae\n");
            for (const auto& s : table.summary) {
                std::printf("%d,%.17g,%.17g,%.17g\n", s.train_size, s.mean, s.two_se, s.median);
            }
        } else if (eval->parsed()) {
            const auto b = hybo::lookup(eval_name);
            std::printf("%.17g\n", b.evaluate({eval_discrete, eval_continuous}));
        } else if (list->parsed()) {
            std::printf("benchmarks:");
            for (const auto& n : hybo::benchmark_names()) std::printf(" %s", n.c_str());
            std::printf("\nmethods: hybo hybo_no_marg random cont_bo vanilla_bo\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
