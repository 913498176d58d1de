#ifndef HYBO_RUNNER_HPP
#define HYBO_RUNNER_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybo/afo.hpp"
#include "hybo/bench.hpp"
#include "hybo/hyper.hpp"

namespace hybo {

inline constexpr const char* kCodeVersion = "hybo 0.1.0";

enum class Method { hybo, hybo_no_marg, random, cont_bo, vanilla_bo };

std::string to_string(Method m);
Method parse_method(const std::string& s);

struct SamplerConfig {
    int n_samples = 10;
    int burn_in = 50;
};

struct RunConfig {
    std::string benchmark = "mixint_sphere";
    Method method = Method::hybo;
    int budget = 50;
    int n_init = 5;
    std::uint64_t seed = 0;
    int max_order = 0;  // 0 selects all interaction orders
    AfoConfig afo;
    SamplerConfig hyper;
    HyperPriorSpec priors;
    std::string output_path;
    bool record_timing = true;
};

void validate(const RunConfig& cfg);

/// Key/value pairs describing the config, in a fixed order. Used for the
/// `#` echo atop the CSV and round-trips through apply_setting().
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

struct IterationRecord {
    int iter = 0;
    RawPoint point;
    double y = 0.0;     // objective value, minimization units
    double best = 0.0;  // incumbent after this evaluation
    double fit_s = 0.0;
    double sample_s = 0.0;
    double afo_s = 0.0;
    double wall_s = 0.0;  // whole iteration, including evaluation
    std::uint64_t kernel_evals = 0;
};

struct RunLog {
    RunConfig config;
    std::string code_version = kCodeVersion;
    std::vector<std::string> point_columns;
    std::vector<IterationRecord> records;
    double total_wall_s = 0.0;
    bool aborted = false;
    std::string abort_reason;

    [[nodiscard]] double final_best() const;
    /// Index of the best evaluation (first one on ties); records must be non-empty.
    [[nodiscard]] std::size_t argbest() const;
    [[nodiscard]] double total_sampling_s() const;
};

/// Raised when a run cannot continue; carries the partial log, which has
/// already been flushed to cfg.output_path when one was given.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, RunLog partial) : std::runtime_error(what), log(std::move(partial)) {}
    RunLog log;
};

/// Incremental CSV writer: config echo and header on open, one flushed row
/// per record, `#` summary line on finish.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const RunLog& header);
    void append(const IterationRecord& rec);
    void finish(const RunLog& log);

private:
    std::string path_;
    std::ofstream out_;
    bool timing_;
};

void emit(const RunLog& log, const std::string& path);

/// Incumbent column of an emitted CSV, parsed back exactly.
std::vector<double> read_incumbent_curve(const std::string& path);

/// BO loop for hybo / hybo_no_marg; dispatches to run_baseline for the others.
RunLog run_bo(const RunConfig& cfg);
RunLog run_baseline(const RunConfig& cfg);

/// Runs every seed as an independent pipeline (concurrently, up to
/// `threads`), writing `<output_path>.seed<k>.csv` when an output path is set.
std::vector<RunLog> run_sweep(const RunConfig& base, const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

struct MaeRow {
    std::uint64_t seed = 0;
    int train_size = 0;
    double mae = 0.0;
};

struct MaeSummary {
    int train_size = 0;
    double mean = 0.0;
    double two_se = 0.0;
    double median = 0.0;
};

struct MaeTable {
    std::vector<MaeRow> rows;
    std::vector<MaeSummary> summary;
};

/// Surrogate accuracy of the additive hybrid GP (MAP hypers) on a held-out
/// uniform test set, for each seed and training size.
MaeTable surrogate_mae_experiment(const std::string& benchmark, const std::vector<int>& train_sizes, int test_size,
                                  const std::vector<std::uint64_t>& seeds, int max_order = 0,
                                  const HyperPriorSpec& priors = {});

/// Mean absolute error of the MAP-fitted surrogate's posterior mean.
double surrogate_mae(const SpaceSpec& spec, const std::vector<HybridPoint>& train_x, const std::vector<double>& train_y,
                     const std::vector<HybridPoint>& test_x, const std::vector<double>& test_y, int max_order, Rng& rng,
                     const HyperPriorSpec& priors = {});

}  // namespace hybo

#endif  // HYBO_RUNNER_HPP
