#ifndef HYBO_AFO_HPP
#define HYBO_AFO_HPP

#include <functional>
#include <span>
#include <vector>

#include "hybo/space.hpp"

namespace hybo {

struct AfoConfig {
    int cma_population = 50;
    double cma_sigma0 = 0.1;
    int cma_budget = 2000;
    int ls_restarts = 20;
    int alternations = 1;
};

void validate(const AfoConfig& cfg);

using ContinuousObjective = std::function<double(std::span<const double>)>;
using DiscreteObjective = std::function<double(std::span<const int>)>;
using HybridObjective = std::function<double(const HybridPoint&)>;

struct ContinuousResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

struct DiscreteResult {
    std::vector<int> x;
    double value = 0.0;
};

/// (mu/mu_w, lambda)-CMA-ES maximizing f over [-1, 1]^dim, started at `start`.
/// Runs whole generations while they fit in cfg.cma_budget (at least one)
/// and returns the best evaluated candidate. Candidates are clipped to the box.
ContinuousResult cmaes_maximize(const ContinuousObjective& f, std::span<const double> start, const AfoConfig& cfg,
                                Rng& rng);
ContinuousResult cmaes_maximize(const ContinuousObjective& f, std::size_t dim, const AfoConfig& cfg, Rng& rng);

/// Steepest-ascent hill climbing over Hamming-1 neighborhoods, run from `init`
/// and from cfg.ls_restarts uniform random assignments. Ties keep the earlier
/// candidate, so a flat objective returns `init`.
DiscreteResult discrete_local_search(const DiscreteObjective& f, const SpaceSpec& spec, std::span<const int> init,
                                     const AfoConfig& cfg, Rng& rng);

/// Alternating acquisition optimization: CMA-ES over x_c with x_d fixed, then
/// local search over x_d with x_c fixed, repeated cfg.alternations times.
/// Never returns a point worse than `warm_start`.
HybridPoint optimize_acquisition(const HybridObjective& af, const SpaceSpec& spec, const AfoConfig& cfg, Rng& rng,
                                 const HybridPoint& warm_start);

}  // namespace hybo

#endif  // HYBO_AFO_HPP
