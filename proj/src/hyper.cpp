#include "hybo/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_uniform_log_density(double x, double lower, double upper) {
    if (!(x >= lower && x <= upper)) return kNegInf;
    // Uniform on log x  =>  p(x) = 1 / (x (log upper - log lower)).
    return -std::log(x) - std::log(std::log(upper) - std::log(lower));
}

}  // namespace

double horseshoe_log_density(double x, double tau) {
    if (!(x > 0.0) || !std::isfinite(x)) return kNegInf;
    const double r = tau / x;
    return std::log(std::log1p(2.0 * r * r));
}

double log_prior(const KernelHypers& h, const HyperPriorSpec& priors) {
    double lp = 0.0;
    for (double s : h.sigma) lp += log_uniform_log_density(s, priors.sigma_lower, priors.sigma_upper);
    for (double b : h.beta) lp += horseshoe_log_density(b, priors.beta_tau);
    for (int p = h.min_order; p <= h.max_order; ++p) lp += horseshoe_log_density(h.theta[p - 1], priors.theta_tau);
    lp += log_uniform_log_density(h.noise_var, priors.noise_lower, priors.noise_upper);
    return std::isnan(lp) ? kNegInf : lp;
}

std::size_t LogParameterization::size() const {
    return shape_.sigma.size() + shape_.beta.size() + static_cast<std::size_t>(shape_.max_order - shape_.min_order + 1) +
           1;
}

std::vector<double> LogParameterization::to_vector(const KernelHypers& h) const {
    std::vector<double> u;
    u.reserve(size());
    for (double s : h.sigma) u.push_back(std::log(s));
    for (double b : h.beta) u.push_back(std::log(b));
    for (int p = h.min_order; p <= h.max_order; ++p) u.push_back(std::log(h.theta[p - 1]));
    u.push_back(std::log(h.noise_var));
    return u;
}

KernelHypers LogParameterization::from_vector(std::span<const double> u) const {
    if (u.size() != size()) throw std::invalid_argument("log-parameter vector has wrong length");
    KernelHypers h = shape_;
    std::size_t i = 0;
    for (auto& s : h.sigma) s = std::exp(u[i++]);
    for (auto& b : h.beta) b = std::exp(u[i++]);
    for (int p = h.min_order; p <= h.max_order; ++p) h.theta[p - 1] = std::exp(u[i++]);
    h.noise_var = std::exp(u[i]);
    return h;
}

std::pair<double, double> LogParameterization::bounds(std::size_t i, const HyperPriorSpec& priors) const {
    const std::size_t n_sigma = shape_.sigma.size();
    if (i < n_sigma) return {std::log(priors.sigma_lower), std::log(priors.sigma_upper)};
    if (i + 1 == size()) return {std::log(priors.noise_lower), std::log(priors.noise_upper)};
    return {priors.log_scale_lower, priors.log_scale_upper};
}

double log_posterior_logspace(const TrainingData& data, const KernelHypers& h, const HyperPriorSpec& priors) {
    for (double b : h.beta) {
        const double lb = std::log(b);
        if (lb < priors.log_scale_lower || lb > priors.log_scale_upper) return kNegInf;
    }
    for (int p = h.min_order; p <= h.max_order; ++p) {
        const double lt = std::log(h.theta[p - 1]);
        if (lt < priors.log_scale_lower || lt > priors.log_scale_upper) return kNegInf;
    }
    const double lp = log_prior(h, priors);
    if (!std::isfinite(lp)) return kNegInf;
    double log_jacobian = 0.0;
    for (double s : h.sigma) log_jacobian += std::log(s);
    for (double b : h.beta) log_jacobian += std::log(b);
    for (int p = h.min_order; p <= h.max_order; ++p) log_jacobian += std::log(h.theta[p - 1]);
    log_jacobian += std::log(h.noise_var);
    const double ev = log_evidence(data, h);
    if (!std::isfinite(ev)) return kNegInf;
    return ev + lp + log_jacobian;
}

std::vector<SliceDraw> slice_sample(const LogDensity& log_target, std::vector<double> init, int n_samples,
                                    int burn_in, Rng& rng, const SliceOptions& options) {
    std::vector<SliceDraw> out;
    if (n_samples <= 0) return out;
    double current = log_target(init);
    if (!std::isfinite(current)) throw std::invalid_argument("slice_sample: log target not finite at init");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x = std::move(init);
    const double w = options.width;
    out.reserve(static_cast<std::size_t>(n_samples));

    auto eval_at = [&](std::size_t i, double v) {
        const double saved = x[i];
        x[i] = v;
        const double r = log_target(x);
        x[i] = saved;
        return r;
    };

    for (int sweep = 0; sweep < burn_in + n_samples; ++sweep) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double x0 = x[i];
            const double level = current - expo(rng);
            double left = x0 - w * unit(rng);
            double right = left + w;
            int j = static_cast<int>(std::floor(options.max_steps * unit(rng)));
            int k = options.max_steps - 1 - j;
            while (j > 0 && eval_at(i, left) > level) {
                left -= w;
                --j;
            }
            while (k > 0 && eval_at(i, right) > level) {
                right += w;
                --k;
            }
            while (true) {
                const double x1 = left + unit(rng) * (right - left);
                const double f1 = eval_at(i, x1);
                if (f1 > level) {
                    x[i] = x1;
                    current = f1;
                    break;
                }
                if (x1 < x0) {
                    left = x1;
                } else {
                    right = x1;
                }
                if (right - left < 1e-12) break;  // collapsed onto x0; keep it
            }
        }
        if (sweep >= burn_in) out.push_back({x, current});
    }
    return out;
}

std::vector<HyperSample> posterior_samples(const TrainingData& data, const HyperPriorSpec& priors,
                                           const KernelHypers& init, int n_samples, int burn_in, Rng& rng) {
    check_hypers(data.spec, init);
    const LogParameterization param(init);
    const LogDensity target = [&](std::span<const double> u) {
        return log_posterior_logspace(data, param.from_vector(u), priors);
    };
    const auto draws = slice_sample(target, param.to_vector(init), n_samples, burn_in, rng);
    std::vector<HyperSample> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back({param.from_vector(d.x), d.log_density});
    return out;
}

KernelHypers fit_map(const TrainingData& data, const HyperPriorSpec& priors, const KernelHypers& init, Rng& rng,
                     const MapOptions& options) {
    check_hypers(data.spec, init);
    const LogParameterization param(init);
    const std::size_t dim = param.size();
    auto score = [&](const std::vector<double>& u) {
        return log_posterior_logspace(data, param.from_vector(u), priors);
    };

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> best = param.to_vector(init);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto [lo, hi] = param.bounds(i, priors);
        best[i] = std::clamp(best[i], lo, hi);
    }
    double best_score = score(best);
    const std::vector<double> origin = best;
    for (int s = 1; s < options.starts; ++s) {
        std::vector<double> u = origin;
        for (std::size_t i = 0; i < dim; ++i) {
            const auto [lo, hi] = param.bounds(i, priors);
            u[i] = std::clamp(u[i] + gauss(rng), lo, hi);
        }
        const double v = score(u);
        if (v > best_score) {
            best_score = v;
            best = std::move(u);
        }
    }
    if (!std::isfinite(best_score)) throw GpFitError("fit_map: no starting point with finite posterior");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int round = 0; round < options.rounds; ++round) {
        const double round_start = best_score;
        for (std::size_t i = 0; i < dim; ++i) {
            const auto [lo, hi] = param.bounds(i, priors);
            double a = std::max(lo, best[i] - options.bracket_half_width);
            double b = std::min(hi, best[i] + options.bracket_half_width);
            std::vector<double> u = best;
            auto at = [&](double v) {
                u[i] = v;
                return score(u);
            };
            double c = b - inv_phi * (b - a);
            double d = a + inv_phi * (b - a);
            double fc = at(c);
            double fd = at(d);
            for (int it = 0; it < options.golden_iterations; ++it) {
                if (fc > fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = at(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = at(d);
                }
            }
            const double cand = fc > fd ? c : d;
            const double cand_score = std::max(fc, fd);
            if (cand_score > best_score) {
                best[i] = cand;
                best_score = cand_score;
            }
        }
        if (best_score - round_start < options.tolerance) break;
    }
    return param.from_vector(best);
}

}  // namespace hybo
