#ifndef HYBO_SPACE_HPP
#define HYBO_SPACE_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hybo {

using Rng = std::mt19937_64;

struct DiscreteVar {
    std::string name;
    int arity = 2;
};

struct ContinuousVar {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
};

/// Declaration of a hybrid search space: m categorical variables followed by
/// n continuous variables given in their original units.
struct SpaceSpec {
    std::vector<DiscreteVar> discrete_vars;
    std::vector<ContinuousVar> continuous_vars;

    [[nodiscard]] std::size_t num_discrete() const { return discrete_vars.size(); }
    [[nodiscard]] std::size_t num_continuous() const { return continuous_vars.size(); }
    [[nodiscard]] std::size_t num_dims() const { return discrete_vars.size() + continuous_vars.size(); }
};

/// One assignment of a hybrid space. Discrete values are category indices,
/// continuous values live in normalized [-1, 1] coordinates.
struct HybridPoint {
    std::vector<int> x_d;
    std::vector<double> x_c;

    friend bool operator==(const HybridPoint&, const HybridPoint&) = default;
};

/// Throws std::invalid_argument describing the first violated invariant.
const SpaceSpec& validate(const SpaceSpec& spec);

/// Throws std::invalid_argument if the point does not belong to the space.
void check_point(const SpaceSpec& spec, const HybridPoint& x);

std::vector<double> normalize(const SpaceSpec& spec, std::span<const double> raw_continuous);
std::vector<double> denormalize(const SpaceSpec& spec, std::span<const double> normalized);

HybridPoint sample_uniform(const SpaceSpec& spec, Rng& rng);

/// All assignments at Hamming distance exactly one from x_d, ordered by
/// variable and then by category.
std::vector<std::vector<int>> hamming_neighbors(const SpaceSpec& spec, std::span<const int> x_d);

/// Number of points in the discrete subspace; saturates at UINT64_MAX.
std::uint64_t discrete_cardinality(const SpaceSpec& spec);

}  // namespace hybo

#endif  // HYBO_SPACE_HPP
