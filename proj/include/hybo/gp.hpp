#ifndef HYBO_GP_HPP
#define HYBO_GP_HPP

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "hybo/kernel.hpp"
#include "hybo/space.hpp"

namespace hybo {

/// Raised when the Gram matrix stays non-positive-definite after jitter
/// escalation, or when targets are not finite.
class GpFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kStdFloor = 1e-8;
inline constexpr double kMaxJitter = 1e-2;

/// Training inputs with standardized targets and cached pairwise statistics.
/// Shared by every model fitted on the same data (one per hyper sample).
struct TrainingData {
    SpaceSpec spec;
    std::vector<HybridPoint> X;
    Eigen::VectorXd y;  // standardized
    double y_mean = 0.0;
    double y_scale = 1.0;
    PairwiseCache cache;

    TrainingData(SpaceSpec s, std::vector<HybridPoint> points, std::span<const double> y_raw);
};

std::shared_ptr<const TrainingData> make_training_data(const SpaceSpec& spec, std::vector<HybridPoint> X,
                                                       std::span<const double> y_raw);

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact GP posterior. The covariance is the additive hybrid kernel plus a
/// point-identity nugget of size `jitter`, so noiseless models interpolate
/// the data exactly. Immutable after fit.
struct GPModel {
    std::shared_ptr<const TrainingData> data;
    KernelHypers hypers;
    AdditiveKernel kernel;
    Eigen::MatrixXd chol;  // lower factor of K + (noise_var + jitter) I
    Eigen::VectorXd alpha;
    double jitter = kGramJitter;

    [[nodiscard]] std::size_t size() const { return data->X.size(); }
};

GPModel fit(std::shared_ptr<const TrainingData> data, const KernelHypers& h);
GPModel fit(std::vector<HybridPoint> X, std::span<const double> y_raw, const KernelHypers& h,
            const SpaceSpec& spec);

/// Mean and variance in original target units.
Prediction predict(const GPModel& model, const HybridPoint& x);

double log_marginal_likelihood(const GPModel& model);

/// Evidence for a hyper setting without keeping the factorization; -inf when
/// the Gram cannot be factorized.
double log_evidence(const TrainingData& data, const KernelHypers& h);

}  // namespace hybo

#endif  // HYBO_GP_HPP
