#include "hybo/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hybo {

namespace {

Eigen::VectorXd standardize(std::span<const double> y_raw, double& mean, double& scale) {
    const auto n = static_cast<Eigen::Index>(y_raw.size());
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(y_raw[i])) throw GpFitError("non-finite target value");
        y(i) = y_raw[i];
    }
    mean = y.mean();
    const double var = (y.array() - mean).square().mean();
    scale = std::max(std::sqrt(var), kStdFloor);
    return (y.array() - mean) / scale;
}

struct Factorization {
    Eigen::MatrixXd lower;
    double jitter = kGramJitter;
    bool ok = false;
};

// Cholesky with the jitter escalated x10 on failure, up to kMaxJitter.
Factorization factorize(const Eigen::MatrixXd& k, double noise_var) {
    Factorization f;
    for (double jitter = kGramJitter; jitter <= kMaxJitter * (1.0 + 1e-9); jitter *= 10.0) {
        Eigen::MatrixXd a = k;
        a.diagonal().array() += noise_var + jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) {
            f.lower = llt.matrixL();
            f.jitter = jitter;
            f.ok = true;
            return f;
        }
    }
    return f;
}

double evidence_from(const Eigen::MatrixXd& lower, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
    const double n = static_cast<double>(y.size());
    return -0.5 * y.dot(alpha) - lower.diagonal().array().log().sum() - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

std::vector<HybridPoint> checked(const SpaceSpec& spec, std::vector<HybridPoint> points, std::size_t n_targets) {
    if (points.empty()) throw std::invalid_argument("training data needs at least one point");
    if (points.size() != n_targets) throw std::invalid_argument("training inputs and targets differ in length");
    for (const auto& p : points) check_point(spec, p);
    return points;
}

}  // namespace

TrainingData::TrainingData(SpaceSpec s, std::vector<HybridPoint> points, std::span<const double> y_raw)
    : spec(std::move(s)), X(checked(spec, std::move(points), y_raw.size())), cache(spec, X) {
    y = standardize(y_raw, y_mean, y_scale);
}

std::shared_ptr<const TrainingData> make_training_data(const SpaceSpec& spec, std::vector<HybridPoint> X,
                                                       std::span<const double> y_raw) {
    return std::make_shared<const TrainingData>(spec, std::move(X), y_raw);
}

GPModel fit(std::shared_ptr<const TrainingData> data, const KernelHypers& h) {
    AdditiveKernel kernel(data->spec, h);
    const Eigen::MatrixXd k = data->cache.kernel_matrix(kernel);
    auto f = factorize(k, h.noise_var);
    if (!f.ok) throw GpFitError("Gram matrix not positive definite after jitter escalation");
    Eigen::VectorXd alpha = f.lower.triangularView<Eigen::Lower>().solve(data->y);
    f.lower.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
    GPModel m{std::move(data), h, std::move(kernel), std::move(f.lower), std::move(alpha), f.jitter};
    return m;
}

GPModel fit(std::vector<HybridPoint> X, std::span<const double> y_raw, const KernelHypers& h,
            const SpaceSpec& spec) {
    return fit(make_training_data(spec, std::move(X), y_raw), h);
}

Prediction predict(const GPModel& model, const HybridPoint& x) {
    const auto& X = model.data->X;
    const auto n = static_cast<Eigen::Index>(X.size());
    Eigen::VectorXd ks(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ks(i) = model.kernel(X[i], x);
        if (X[i] == x) ks(i) += model.jitter;
    }
    const double mean_std = ks.dot(model.alpha);
    model.chol.triangularView<Eigen::Lower>().solveInPlace(ks);
    const double var_std = std::max(model.kernel.self_variance() + model.jitter - ks.squaredNorm(), 0.0);
    const double scale = model.data->y_scale;
    return {model.data->y_mean + scale * mean_std, scale * scale * var_std};
}

double log_marginal_likelihood(const GPModel& model) {
    return evidence_from(model.chol, model.data->y, model.alpha);
}

double log_evidence(const TrainingData& data, const KernelHypers& h) {
    const AdditiveKernel kernel(data.spec, h);
    const Eigen::MatrixXd k = data.cache.kernel_matrix(kernel);
    const auto f = factorize(k, h.noise_var);
    if (!f.ok) return -std::numeric_limits<double>::infinity();
    Eigen::VectorXd alpha = f.lower.triangularView<Eigen::Lower>().solve(data.y);
    f.lower.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
    const double v = evidence_from(f.lower, data.y, alpha);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

}  // namespace hybo
