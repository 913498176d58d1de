#ifndef HYBO_KERNEL_HPP
#define HYBO_KERNEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "hybo/space.hpp"

namespace hybo {

/// Diagonal jitter added to every Gram matrix on top of the noise variance.
inline constexpr double kGramJitter = 1e-6;

/// Hyper-parameters of the additive hybrid diffusion kernel.
///
/// Vectors follow the fixed dimension convention: `beta` covers the discrete
/// block, `sigma` the continuous block. `theta[p - 1]` is the (unsquared)
/// strength of interaction order p. Orders outside [min_order, max_order]
/// contribute nothing; min_order > 1 is how product-only kernels are expressed.
struct KernelHypers {
    std::vector<double> sigma;
    std::vector<double> beta;
    std::vector<double> theta;
    double noise_var = 1e-6;
    int max_order = 1;
    int min_order = 1;
};

/// Starting point used by the samplers: unit length scales, beta = 1 and
/// theta chosen so every active order contributes an equal share of a unit
/// prior variance. max_order <= 0 selects all interaction orders.
KernelHypers default_hypers(const SpaceSpec& spec, int max_order = 0, int min_order = 1);

/// Throws std::invalid_argument on shape or positivity violations.
void check_hypers(const SpaceSpec& spec, const KernelHypers& h);

double rbf_base(double a, double b, double sigma);

/// Off-diagonal value of the diagonal-normalized diffusion kernel on the
/// complete graph with `arity` nodes.
double discrete_diffusion_factor(double beta, int arity);

double discrete_diffusion_base(int a, int b, double beta, int arity);

/// One base-kernel value per dimension, discrete block first.
std::vector<double> base_values(const HybridPoint& x, const HybridPoint& y, const KernelHypers& h,
                                const SpaceSpec& spec);

/// S_j = sum_i k_i^j for j = 1..max_order.
std::vector<double> power_sums(std::span<const double> base, int max_order);

/// Elementary symmetric polynomials E_0..E_max_order from power sums S_1..
/// via the Newton-Girard identities.
std::vector<double> elementary_symmetric(std::span<const double> sums, int max_order);

double additive_kernel(const HybridPoint& x, const HybridPoint& y, const KernelHypers& h,
                       const SpaceSpec& spec);

/// Prior variance k(x, x) of the additive kernel (all base values equal one).
double additive_self_variance(const KernelHypers& h, std::size_t num_dims);

/// Evaluator with hyper-dependent constants precomputed. Reused across the
/// many kernel evaluations that share one set of hyper-parameters.
class AdditiveKernel {
public:
    AdditiveKernel(const SpaceSpec& spec, const KernelHypers& h);

    [[nodiscard]] double operator()(const HybridPoint& x, const HybridPoint& y) const;

    /// Kernel value from precomputed per-pair statistics: a mismatch flag per
    /// discrete dim and a squared distance per continuous dim.
    [[nodiscard]] double from_pair(const unsigned char* mismatch, const double* sqdist) const;

    /// Combines base values through power sums and Newton-Girard.
    [[nodiscard]] double combine(std::span<const double> base) const;

    [[nodiscard]] double self_variance() const { return self_variance_; }
    [[nodiscard]] std::size_t num_dims() const { return num_discrete_ + num_continuous_; }

private:
    std::size_t num_discrete_;
    std::size_t num_continuous_;
    int min_order_;
    int max_order_;
    std::vector<double> discrete_off_;  // base value for a category mismatch
    std::vector<double> neg_inv_two_sigma_sq_;
    std::vector<double> theta_sq_;
    double self_variance_;
};

/// Pairwise statistics of a fixed point set, independent of hyper-parameters.
/// Lets repeated Gram constructions (slice sampling, MAP search) skip the
/// per-pair coordinate comparisons.
class PairwiseCache {
public:
    PairwiseCache(const SpaceSpec& spec, std::span<const HybridPoint> points);

    [[nodiscard]] std::size_t size() const { return n_points_; }

    /// Kernel matrix without noise or jitter.
    [[nodiscard]] Eigen::MatrixXd kernel_matrix(const AdditiveKernel& k) const;

private:
    std::size_t n_points_;
    std::size_t num_discrete_;
    std::size_t num_continuous_;
    std::vector<unsigned char> mismatch_;  // packed upper triangle incl. diagonal
    std::vector<double> sqdist_;
};

/// Number of additive-kernel evaluations performed by the calling thread.
std::uint64_t kernel_evaluations();

/// Gram matrix with noise_var + kGramJitter on the diagonal. Each unordered
/// pair is evaluated once, so the result is exactly symmetric.
Eigen::MatrixXd gram(std::span<const HybridPoint> points, const KernelHypers& h, const SpaceSpec& spec);

}  // namespace hybo

#endif  // HYBO_KERNEL_HPP
