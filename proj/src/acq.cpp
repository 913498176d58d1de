#include "hybo/acq.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybo {

double expected_improvement(double mean, double variance, double best) {
    if (variance < 0.0 || std::isnan(variance)) {
        throw std::invalid_argument("expected_improvement: negative variance");
    }
    const double gap = mean - best;
    const double s = std::sqrt(variance);
    if (s == 0.0) return std::max(gap, 0.0);
    const double z = gap / s;
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return std::max(gap * cdf + s * pdf, 0.0);
}

double marginalized_af(const AcquisitionContext& ctx, const HybridPoint& x) {
    if (ctx.models.empty()) throw std::invalid_argument("marginalized_af: no models");
    double total = 0.0;
    for (const auto& m : ctx.models) {
        const auto p = predict(m, x);
        total += expected_improvement(p.mean, p.variance, ctx.incumbent_best);
    }
    return total / static_cast<double>(ctx.models.size());
}

}  // namespace hybo
