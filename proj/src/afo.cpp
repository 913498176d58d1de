#include "hybo/afo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hybo {

void validate(const AfoConfig& cfg) {
    if (cfg.cma_population < 2) throw std::invalid_argument("cma_population must be >= 2");
    if (!(cfg.cma_sigma0 > 0.0)) throw std::invalid_argument("cma_sigma0 must be positive");
    if (cfg.cma_budget < 1) throw std::invalid_argument("cma_budget must be positive");
    if (cfg.ls_restarts < 0) throw std::invalid_argument("ls_restarts must be non-negative");
    if (cfg.alternations < 1) throw std::invalid_argument("alternations must be >= 1");
}

ContinuousResult cmaes_maximize(const ContinuousObjective& f, std::span<const double> start, const AfoConfig& cfg,
                                Rng& rng) {
    validate(cfg);
    const auto n = static_cast<Eigen::Index>(start.size());
    if (n < 1) throw std::invalid_argument("cmaes_maximize: dimension must be >= 1");
    const double nd = static_cast<double>(n);
    const int lambda = cfg.cma_population;
    const int mu = lambda / 2;

    Eigen::VectorXd weights(mu);
    for (int i = 0; i < mu; ++i) weights(i) = std::log(mu + 0.5) - std::log(i + 1.0);
    weights /= weights.sum();
    const double mu_eff = 1.0 / weights.squaredNorm();

    const double c_sigma = (mu_eff + 2.0) / (nd + mu_eff + 5.0);
    const double d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (nd + 1.0)) - 1.0) + c_sigma;
    const double c_c = (4.0 + mu_eff / nd) / (nd + 4.0 + 2.0 * mu_eff / nd);
    const double c_1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mu_eff);
    const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nd + 2.0) * (nd + 2.0) + mu_eff));
    const double chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

    Eigen::VectorXd mean(n);
    for (Eigen::Index i = 0; i < n; ++i) mean(i) = std::clamp(start[i], -1.0, 1.0);
    double sigma = cfg.cma_sigma0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd scales = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd p_c = Eigen::VectorXd::Zero(n);

    std::normal_distribution<double> gauss(0.0, 1.0);
    ContinuousResult best;
    best.value = -std::numeric_limits<double>::infinity();
    best.x.assign(mean.data(), mean.data() + n);

    const int generations = std::max(1, cfg.cma_budget / lambda);
    Eigen::MatrixXd candidates(n, lambda);
    std::vector<double> values(static_cast<std::size_t>(lambda));
    std::vector<int> order(static_cast<std::size_t>(lambda));
    std::vector<double> buffer(static_cast<std::size_t>(n));

    for (int gen = 0; gen < generations; ++gen) {
        for (int k = 0; k < lambda; ++k) {
            Eigen::VectorXd z(n);
            for (Eigen::Index i = 0; i < n; ++i) z(i) = gauss(rng);
            Eigen::VectorXd x = mean + sigma * (basis * scales.cwiseProduct(z));
            x = x.cwiseMax(-1.0).cwiseMin(1.0);
            candidates.col(k) = x;
            std::copy(x.data(), x.data() + n, buffer.begin());
            values[k] = f(buffer);
            ++best.evaluations;
            if (values[k] > best.value) {
                best.value = values[k];
                best.x = buffer;
            }
        }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });

        const Eigen::VectorXd old_mean = mean;
        mean.setZero();
        for (int i = 0; i < mu; ++i) mean += weights(i) * candidates.col(order[i]);

        const Eigen::VectorXd step = (mean - old_mean) / sigma;
        // C^{-1/2} * step
        const Eigen::VectorXd whitened = basis * (basis.transpose() * step).cwiseQuotient(scales);
        p_sigma = (1.0 - c_sigma) * p_sigma + std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * whitened;
        const double ps_norm = p_sigma.norm();
        const double gen_factor = 1.0 - std::pow(1.0 - c_sigma, 2.0 * (gen + 1));
        const bool h_sigma = ps_norm / std::sqrt(gen_factor) < (1.4 + 2.0 / (nd + 1.0)) * chi_n;
        p_c = (1.0 - c_c) * p_c + (h_sigma ? std::sqrt(c_c * (2.0 - c_c) * mu_eff) : 0.0) * step;

        Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < mu; ++i) {
            const Eigen::VectorXd y = (candidates.col(order[i]) - old_mean) / sigma;
            rank_mu += weights(i) * y * y.transpose();
        }
        const double delta_h = h_sigma ? 0.0 : c_c * (2.0 - c_c);
        cov = (1.0 - c_1 - c_mu) * cov + c_1 * (p_c * p_c.transpose() + delta_h * cov) + c_mu * rank_mu;
        cov = 0.5 * (cov + cov.transpose());

        sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));
        sigma = std::min(sigma, 4.0);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        basis = eig.eigenvectors();
        scales = eig.eigenvalues().cwiseMax(1e-20).cwiseSqrt();
        if (sigma * scales.maxCoeff() < 1e-14) break;
    }
    return best;
}

ContinuousResult cmaes_maximize(const ContinuousObjective& f, std::size_t dim, const AfoConfig& cfg, Rng& rng) {
    const std::vector<double> origin(dim, 0.0);
    return cmaes_maximize(f, origin, cfg, rng);
}

namespace {

DiscreteResult hill_climb(const DiscreteObjective& f, const SpaceSpec& spec, std::vector<int> x) {
    double value = f(x);
    while (true) {
        double best_value = value;
        int best_var = -1;
        int best_cat = 0;
        for (std::size_t i = 0; i < spec.num_discrete(); ++i) {
            const int original = x[i];
            for (int c = 0; c < spec.discrete_vars[i].arity; ++c) {
                if (c == original) continue;
                x[i] = c;
                const double v = f(x);
                if (v > best_value) {
                    best_value = v;
                    best_var = static_cast<int>(i);
                    best_cat = c;
                }
            }
            x[i] = original;
        }
        if (best_var < 0) break;
        x[static_cast<std::size_t>(best_var)] = best_cat;
        value = best_value;
    }
    return {std::move(x), value};
}

}  // namespace

DiscreteResult discrete_local_search(const DiscreteObjective& f, const SpaceSpec& spec, std::span<const int> init,
                                     const AfoConfig& cfg, Rng& rng) {
    if (init.size() != spec.num_discrete()) throw std::invalid_argument("discrete_local_search: init size mismatch");
    DiscreteResult best = hill_climb(f, spec, std::vector<int>(init.begin(), init.end()));
    for (int r = 0; r < cfg.ls_restarts; ++r) {
        std::vector<int> start;
        start.reserve(spec.num_discrete());
        for (const auto& v : spec.discrete_vars) {
            std::uniform_int_distribution<int> cat(0, v.arity - 1);
            start.push_back(cat(rng));
        }
        auto res = hill_climb(f, spec, std::move(start));
        if (res.value > best.value) best = std::move(res);
    }
    return best;
}

HybridPoint optimize_acquisition(const HybridObjective& af, const SpaceSpec& spec, const AfoConfig& cfg, Rng& rng,
                                 const HybridPoint& warm_start) {
    validate(cfg);
    check_point(spec, warm_start);
    HybridPoint current = warm_start;
    double current_value = af(current);
    for (int round = 0; round < cfg.alternations; ++round) {
        if (spec.num_continuous() > 0) {
            HybridPoint probe = current;
            const ContinuousObjective fc = [&](std::span<const double> xc) {
                std::copy(xc.begin(), xc.end(), probe.x_c.begin());
                return af(probe);
            };
            auto res = cmaes_maximize(fc, current.x_c, cfg, rng);
            if (res.value > current_value) {
                current.x_c = std::move(res.x);
                current_value = res.value;
            }
        }
        if (spec.num_discrete() > 0) {
            HybridPoint probe = current;
            const DiscreteObjective fd = [&](std::span<const int> xd) {
                std::copy(xd.begin(), xd.end(), probe.x_d.begin());
                return af(probe);
            };
            auto res = discrete_local_search(fd, spec, current.x_d, cfg, rng);
            if (res.value > current_value) {
                current.x_d = std::move(res.x);
                current_value = res.value;
            }
        }
    }
    return current;
}

}  // namespace hybo
