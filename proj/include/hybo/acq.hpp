#ifndef HYBO_ACQ_HPP
#define HYBO_ACQ_HPP

#include <vector>

#include "hybo/gp.hpp"

namespace hybo {

/// Expected improvement over `best` under a Gaussian predictive, in the
/// maximization convention. No exploration offset.
double expected_improvement(double mean, double variance, double best);

/// Models fitted on the same data under different hyper samples, plus the
/// best value observed so far (maximization convention).
struct AcquisitionContext {
    std::vector<GPModel> models;
    double incumbent_best = 0.0;
};

/// Monte-Carlo estimate of the hyper-marginalized EI: the arithmetic mean of
/// EI under each model's predictive at x.
double marginalized_af(const AcquisitionContext& ctx, const HybridPoint& x);

}  // namespace hybo

#endif  // HYBO_ACQ_HPP
