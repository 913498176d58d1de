#ifndef HYBO_HYPER_HPP
#define HYBO_HYPER_HPP

#include <functional>
#include <span>
#include <vector>

#include "hybo/gp.hpp"
#include "hybo/kernel.hpp"
#include "hybo/space.hpp"

namespace hybo {

/// Priors over kernel hyper-parameters. Length scales and noise are uniform in
/// log-space on the given ranges; beta and theta carry horseshoe priors with
/// global scales beta_tau and theta_tau.
struct HyperPriorSpec {
    double sigma_lower = 0.01;
    double sigma_upper = 10.0;
    double beta_tau = 1.0;
    double theta_tau = 1.0;
    double noise_lower = 1e-8;
    double noise_upper = 1e-1;
    // Box on log(beta) and log(theta) keeping the chain away from numerically
    // degenerate kernels; the horseshoe mass outside it is negligible.
    double log_scale_lower = -12.0;
    double log_scale_upper = 8.0;
};

/// Surrogate horseshoe log-density log(log(1 + 2 (tau / x)^2)), up to an
/// additive constant. -inf for x <= 0.
double horseshoe_log_density(double x, double tau);

/// Log prior density of the hypers with respect to Lebesgue measure on the
/// positive parameters. -inf outside the support.
double log_prior(const KernelHypers& h, const HyperPriorSpec& priors);

/// Maps hypers to and from the unconstrained log-parameter vector used by the
/// samplers: [log sigma..., log beta..., log theta_p for active p..., log noise].
class LogParameterization {
public:
    explicit LogParameterization(KernelHypers shape) : shape_(std::move(shape)) {}

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::vector<double> to_vector(const KernelHypers& h) const;
    [[nodiscard]] KernelHypers from_vector(std::span<const double> u) const;
    /// Support interval of coordinate i in log-space.
    [[nodiscard]] std::pair<double, double> bounds(std::size_t i, const HyperPriorSpec& priors) const;

private:
    KernelHypers shape_;
};

/// Unnormalized log posterior in log-parameter space: evidence + log prior +
/// log-Jacobian of the exp transform.
double log_posterior_logspace(const TrainingData& data, const KernelHypers& h, const HyperPriorSpec& priors);

struct SliceOptions {
    double width = 1.0;
    int max_steps = 100;
};

struct SliceDraw {
    std::vector<double> x;
    double log_density = 0.0;
};

using LogDensity = std::function<double(std::span<const double>)>;

/// Coordinate-wise univariate slice sampling with stepping out and
/// shrinkage. Each returned draw is the state after one full sweep over the
/// coordinates; the first `burn_in` sweeps are discarded.
std::vector<SliceDraw> slice_sample(const LogDensity& log_target, std::vector<double> init, int n_samples,
                                    int burn_in, Rng& rng, const SliceOptions& options = {});

struct HyperSample {
    KernelHypers hypers;
    double log_posterior = 0.0;
};

/// Posterior draws of the kernel hypers given the training data. `init`
/// fixes the interaction orders and serves as the chain's starting state.
std::vector<HyperSample> posterior_samples(const TrainingData& data, const HyperPriorSpec& priors,
                                           const KernelHypers& init, int n_samples, int burn_in, Rng& rng);

struct MapOptions {
    int starts = 8;
    int rounds = 50;
    int golden_iterations = 10;
    double bracket_half_width = 1.5;
    double tolerance = 1e-6;
};

/// Point estimate for the no-marginalization mode. Scores `starts` starting
/// points (init plus log-space perturbations of it) and refines the best with
/// coordinate-wise golden-section sweeps until a sweep gains less than
/// `tolerance` or `rounds` sweeps are spent.
KernelHypers fit_map(const TrainingData& data, const HyperPriorSpec& priors, const KernelHypers& init, Rng& rng,
                     const MapOptions& options = {});

}  // namespace hybo

#endif  // HYBO_HYPER_HPP
