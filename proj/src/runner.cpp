#include "hybo/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "hybo/acq.hpp"

namespace hybo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_seconds(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Discrete variables relaxed onto the continuous axis: category i of arity C
// sits at -1 + 2 i / (C - 1) in normalized coordinates.
class RelaxedSpace {
public:
    explicit RelaxedSpace(const SpaceSpec& hybrid) : hybrid_(hybrid) {
        for (const auto& v : hybrid.discrete_vars) {
            relaxed_.continuous_vars.push_back({v.name, 0.0, static_cast<double>(v.arity - 1)});
        }
        for (const auto& v : hybrid.continuous_vars) relaxed_.continuous_vars.push_back(v);
    }

    [[nodiscard]] const SpaceSpec& spec() const { return relaxed_; }

    [[nodiscard]] HybridPoint relax(const HybridPoint& x) const {
        HybridPoint r;
        r.x_c.reserve(relaxed_.num_continuous());
        for (std::size_t i = 0; i < x.x_d.size(); ++i) {
            const double c = hybrid_.discrete_vars[i].arity;
            r.x_c.push_back(-1.0 + 2.0 * x.x_d[i] / (c - 1.0));
        }
        r.x_c.insert(r.x_c.end(), x.x_c.begin(), x.x_c.end());
        return r;
    }

    [[nodiscard]] HybridPoint round(const HybridPoint& r) const {
        HybridPoint x;
        const std::size_t m = hybrid_.num_discrete();
        for (std::size_t i = 0; i < m; ++i) {
            const int c = hybrid_.discrete_vars[i].arity;
            const double idx = std::round((r.x_c[i] + 1.0) * 0.5 * (c - 1));
            x.x_d.push_back(std::clamp(static_cast<int>(idx), 0, c - 1));
        }
        x.x_c.assign(r.x_c.begin() + static_cast<std::ptrdiff_t>(m), r.x_c.end());
        return x;
    }

private:
    SpaceSpec hybrid_;
    SpaceSpec relaxed_;
};

std::vector<std::string> point_columns(const SpaceSpec& spec) {
    std::vector<std::string> cols;
    for (const auto& v : spec.discrete_vars) cols.push_back(v.name);
    for (const auto& v : spec.continuous_vars) cols.push_back(v.name);
    return cols;
}

bool is_model_based(Method m) { return m != Method::random; }

// Shared driver for every method. Model-based methods differ in the model
// space (hybrid vs relaxed), the hyper treatment and the AFO space.
RunLog run_loop(const RunConfig& cfg) {
    validate(cfg);
    const auto total_t0 = Clock::now();
    const BenchmarkFn bench = lookup(cfg.benchmark);
    const SpaceSpec& spec = bench.spec;
    const RelaxedSpace relaxed(spec);
    const bool use_relaxed = cfg.method == Method::cont_bo || cfg.method == Method::vanilla_bo;
    const SpaceSpec& model_spec = use_relaxed ? relaxed.spec() : spec;

    RunLog log;
    log.config = cfg;
    log.point_columns = point_columns(spec);
    std::optional<CsvWriter> writer;
    if (!cfg.output_path.empty()) writer.emplace(cfg.output_path, log);

    Rng rng(cfg.seed);
    std::vector<HybridPoint> X;
    std::vector<double> y_min;
    double best = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const HybridPoint& x, IterationRecord rec, Clock::time_point t0, std::uint64_t k0) {
        rec.iter = static_cast<int>(log.records.size());
        rec.point = bench.to_raw(x);
        rec.y = bench.evaluate(rec.point);
        best = std::min(best, rec.y);
        rec.best = best;
        rec.wall_s = seconds_since(t0);
        rec.kernel_evals = kernel_evaluations() - k0;
        X.push_back(x);
        y_min.push_back(rec.y);
        log.records.push_back(rec);
        if (writer) writer->append(rec);
    };

    auto fail = [&](const std::string& why) {
        log.aborted = true;
        log.abort_reason = why;
        log.total_wall_s = seconds_since(total_t0);
        if (writer) writer->finish(log);
        throw RunError(why, log);
    };

    for (int i = 0; i < cfg.n_init; ++i) {
        const auto t0 = Clock::now();
        const auto k0 = kernel_evaluations();
        evaluate(sample_uniform(spec, rng), {}, t0, k0);
    }

    const KernelHypers defaults = use_relaxed
                                      ? default_hypers(model_spec, static_cast<int>(model_spec.num_dims()),
                                                       static_cast<int>(model_spec.num_dims()))
                                      : default_hypers(model_spec, cfg.max_order);
    KernelHypers state = defaults;

    for (int t = 0; t < cfg.budget; ++t) {
        const auto t0 = Clock::now();
        const auto k0 = kernel_evaluations();
        IterationRecord rec;
        if (!is_model_based(cfg.method)) {
            evaluate(sample_uniform(spec, rng), rec, t0, k0);
            continue;
        }

        std::vector<HybridPoint> Xm;
        Xm.reserve(X.size());
        for (const auto& x : X) Xm.push_back(use_relaxed ? relaxed.relax(x) : x);
        std::vector<double> y_max(y_min.size());
        std::transform(y_min.begin(), y_min.end(), y_max.begin(), [](double v) { return -v; });
        const auto data = make_training_data(model_spec, std::move(Xm), y_max);

        if (!std::isfinite(log_posterior_logspace(*data, state, cfg.priors))) state = defaults;
        if (!std::isfinite(log_posterior_logspace(*data, state, cfg.priors))) {
            fail("GP fit failed: posterior not finite at default hyper-parameters");
        }

        std::vector<KernelHypers> hyper_set;
        const auto ts = Clock::now();
        if (cfg.method == Method::hybo) {
            const auto samples = posterior_samples(*data, cfg.priors, state, cfg.hyper.n_samples, cfg.hyper.burn_in, rng);
            for (const auto& s : samples) hyper_set.push_back(s.hypers);
            if (!hyper_set.empty()) state = hyper_set.back();
        } else {
            state = fit_map(*data, cfg.priors, state, rng);
            hyper_set.push_back(state);
        }
        if (hyper_set.empty()) hyper_set.push_back(state);
        rec.sample_s = seconds_since(ts);

        const auto tf = Clock::now();
        AcquisitionContext ctx;
        ctx.incumbent_best = *std::max_element(y_max.begin(), y_max.end());
        for (const auto& h : hyper_set) {
            try {
                ctx.models.push_back(fit(data, h));
            } catch (const GpFitError&) {
                // a single bad draw is dropped; the remaining models still average
            }
        }
        if (ctx.models.empty()) fail("GP fit failed for every hyper-parameter sample");
        rec.fit_s = seconds_since(tf);

        const auto ta = Clock::now();
        const std::size_t incumbent = static_cast<std::size_t>(
            std::min_element(y_min.begin(), y_min.end()) - y_min.begin());
        HybridPoint proposal;
        if (cfg.method == Method::cont_bo) {
            const HybridObjective af = [&](const HybridPoint& r) { return marginalized_af(ctx, r); };
            const auto r = optimize_acquisition(af, relaxed.spec(), cfg.afo, rng, relaxed.relax(X[incumbent]));
            proposal = relaxed.round(r);
        } else if (cfg.method == Method::vanilla_bo) {
            const HybridObjective af = [&](const HybridPoint& x) { return marginalized_af(ctx, relaxed.relax(x)); };
            proposal = optimize_acquisition(af, spec, cfg.afo, rng, X[incumbent]);
        } else {
            const HybridObjective af = [&](const HybridPoint& x) { return marginalized_af(ctx, x); };
            proposal = optimize_acquisition(af, spec, cfg.afo, rng, X[incumbent]);
        }
        rec.afo_s = seconds_since(ta);
        evaluate(proposal, rec, t0, k0);
    }

    log.total_wall_s = seconds_since(total_t0);
    if (writer) writer->finish(log);
    return log;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::hybo: return "hybo";
        case Method::hybo_no_marg: return "hybo_no_marg";
        case Method::random: return "random";
        case Method::cont_bo: return "cont_bo";
        case Method::vanilla_bo: return "vanilla_bo";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    for (Method m : {Method::hybo, Method::hybo_no_marg, Method::random, Method::cont_bo, Method::vanilla_bo}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument("unknown method '" + s +
                                "'; expected one of: hybo hybo_no_marg random cont_bo vanilla_bo");
}

void validate(const RunConfig& cfg) {
    if (cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (cfg.n_init < 1) throw std::invalid_argument("n_init must be >= 1");
    if (cfg.max_order < 0) throw std::invalid_argument("max_order must be >= 1 or 'full'");
    if (cfg.hyper.n_samples < 1 || cfg.hyper.burn_in < 0) throw std::invalid_argument("invalid sampler settings");
    validate(cfg.afo);
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
    return {
        {"benchmark", cfg.benchmark},
        {"method", to_string(cfg.method)},
        {"budget", std::to_string(cfg.budget)},
        {"n_init", std::to_string(cfg.n_init)},
        {"seed", std::to_string(cfg.seed)},
        {"max_order", cfg.max_order == 0 ? "full" : std::to_string(cfg.max_order)},
        {"afo.cma_population", std::to_string(cfg.afo.cma_population)},
        {"afo.cma_sigma0", fmt_exact(cfg.afo.cma_sigma0)},
        {"afo.cma_budget", std::to_string(cfg.afo.cma_budget)},
        {"afo.ls_restarts", std::to_string(cfg.afo.ls_restarts)},
        {"afo.alternations", std::to_string(cfg.afo.alternations)},
        {"hyper.n_samples", std::to_string(cfg.hyper.n_samples)},
        {"hyper.burn_in", std::to_string(cfg.hyper.burn_in)},
        {"timing", cfg.record_timing ? "on" : "off"},
    };
}

double RunLog::final_best() const {
    return records.empty() ? std::numeric_limits<double>::infinity() : records.back().best;
}

std::size_t RunLog::argbest() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].y < records[best].y) best = i;
    }
    return best;
}

double RunLog::total_sampling_s() const {
    double t = 0.0;
    for (const auto& r : records) t += r.sample_s;
    return t;
}

CsvWriter::CsvWriter(const std::string& path, const RunLog& header)
    : path_(path), out_(path, std::ios::trunc), timing_(header.config.record_timing) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    out_ << "# hybo run\n";
    for (const auto& [k, v] : describe(header.config)) out_ << "# " << k << " = " << v << "\n";
    out_ << "# code_version = " << header.code_version << "\n";
    out_ << "iter,y,best,fit_s,sample_s,afo_s";
    for (const auto& c : header.point_columns) out_ << "," << c;
    out_ << "\n";
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + path);
}

void CsvWriter::append(const IterationRecord& rec) {
    out_ << rec.iter << "," << fmt_exact(rec.y) << "," << fmt_exact(rec.best) << ","
         << fmt_seconds(timing_ ? rec.fit_s : 0.0) << "," << fmt_seconds(timing_ ? rec.sample_s : 0.0) << ","
         << fmt_seconds(timing_ ? rec.afo_s : 0.0);
    for (double v : rec.point.discrete) out_ << "," << fmt_exact(v);
    for (double v : rec.point.continuous) out_ << "," << fmt_exact(v);
    out_ << "\n";
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

void CsvWriter::finish(const RunLog& log) {
    if (log.records.empty()) {
        out_ << "# summary: evaluations=0";
    } else {
        const auto& b = log.records[log.argbest()];
        out_ << "# summary: final_best=" << fmt_exact(log.final_best()) << " argbest_iter=" << b.iter
             << " evaluations=" << log.records.size() << " total_wall_s=" << fmt_seconds(log.total_wall_s);
        out_ << "\n# argbest:";
        std::size_t col = 0;
        for (double v : b.point.discrete) out_ << " " << log.point_columns[col++] << "=" << fmt_exact(v);
        for (double v : b.point.continuous) out_ << " " << log.point_columns[col++] << "=" << fmt_exact(v);
    }
    if (log.aborted) out_ << "\n# aborted: " << log.abort_reason;
    out_ << "\n";
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

void emit(const RunLog& log, const std::string& path) {
    CsvWriter w(path, log);
    for (const auto& r : log.records) w.append(r);
    w.finish(log);
}

std::vector<double> read_incumbent_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    std::vector<double> curve;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string field;
        for (int col = 0; col < 3 && std::getline(is, field, ','); ++col) {
            if (col == 2) curve.push_back(std::strtod(field.c_str(), nullptr));
        }
    }
    return curve;
}

RunLog run_bo(const RunConfig& cfg) {
    if (cfg.method != Method::hybo && cfg.method != Method::hybo_no_marg) return run_baseline(cfg);
    return run_loop(cfg);
}

RunLog run_baseline(const RunConfig& cfg) {
    if (cfg.method == Method::hybo || cfg.method == Method::hybo_no_marg) {
        throw std::invalid_argument("run_baseline: method must be random, cont_bo or vanilla_bo");
    }
    return run_loop(cfg);
}

std::vector<RunLog> run_sweep(const RunConfig& base, const std::vector<std::uint64_t>& seeds, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<RunLog> logs(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            RunConfig cfg = base;
            cfg.seed = seeds[i];
            if (!base.output_path.empty()) cfg.output_path = base.output_path + ".seed" + std::to_string(seeds[i]) + ".csv";
            try {
                logs[i] = base.method == Method::hybo || base.method == Method::hybo_no_marg ? run_bo(cfg)
                                                                                            : run_baseline(cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(seeds.size()));
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return logs;
}

double surrogate_mae(const SpaceSpec& spec, const std::vector<HybridPoint>& train_x, const std::vector<double>& train_y,
                     const std::vector<HybridPoint>& test_x, const std::vector<double>& test_y, int max_order, Rng& rng,
                     const HyperPriorSpec& priors) {
    if (test_x.size() != test_y.size() || test_x.empty()) throw std::invalid_argument("surrogate_mae: bad test set");
    const auto data = make_training_data(spec, train_x, train_y);
    const auto h = fit_map(*data, priors, default_hypers(spec, max_order), rng);
    const auto model = fit(data, h);
    double total = 0.0;
    for (std::size_t i = 0; i < test_x.size(); ++i) total += std::abs(predict(model, test_x[i]).mean - test_y[i]);
    return total / static_cast<double>(test_x.size());
}

MaeTable surrogate_mae_experiment(const std::string& benchmark, const std::vector<int>& train_sizes, int test_size,
                                  const std::vector<std::uint64_t>& seeds, int max_order,
                                  const HyperPriorSpec& priors) {
    const BenchmarkFn bench = lookup(benchmark);
    MaeTable table;
    for (std::uint64_t seed : seeds) {
        Rng rng(seed);
        std::vector<HybridPoint> test_x;
        std::vector<double> test_y;
        for (int i = 0; i < test_size; ++i) {
            test_x.push_back(sample_uniform(bench.spec, rng));
            test_y.push_back(bench(test_x.back()));
        }
        for (int n : train_sizes) {
            std::vector<HybridPoint> train_x;
            std::vector<double> train_y;
            for (int i = 0; i < n; ++i) {
                train_x.push_back(sample_uniform(bench.spec, rng));
                train_y.push_back(bench(train_x.back()));
            }
            table.rows.push_back({seed, n, surrogate_mae(bench.spec, train_x, train_y, test_x, test_y, max_order, rng, priors)});
        }
    }
    for (int n : train_sizes) {
        std::vector<double> v;
        for (const auto& r : table.rows) {
            if (r.train_size == n) v.push_back(r.mae);
        }
        MaeSummary s;
        s.train_size = n;
        if (!v.empty()) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
            s.mean = mean;
            s.two_se = 2.0 * sd / std::sqrt(static_cast<double>(v.size()));
            std::sort(v.begin(), v.end());
            const std::size_t h = v.size() / 2;
            s.median = v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
        }
        table.summary.push_back(s);
    }
    return table;
}

}  // namespace hybo
