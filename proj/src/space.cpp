#include "hybo/space.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hybo {

const SpaceSpec& validate(const SpaceSpec& spec) {
    if (spec.num_dims() == 0) {
        throw std::invalid_argument("empty space: at least one variable is required");
    }
    for (const auto& v : spec.discrete_vars) {
        if (v.arity < 2) {
            throw std::invalid_argument("arity must be >= 2 (variable '" + v.name + "')");
        }
    }
    for (const auto& v : spec.continuous_vars) {
        if (!(v.lower < v.upper)) {
            throw std::invalid_argument("inverted bounds: lower must be < upper (variable '" + v.name + "')");
        }
    }
    return spec;
}

void check_point(const SpaceSpec& spec, const HybridPoint& x) {
    if (x.x_d.size() != spec.num_discrete() || x.x_c.size() != spec.num_continuous()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    for (std::size_t i = 0; i < x.x_d.size(); ++i) {
        if (x.x_d[i] < 0 || x.x_d[i] >= spec.discrete_vars[i].arity) {
            throw std::invalid_argument("category index out of range for '" + spec.discrete_vars[i].name + "'");
        }
    }
    for (double v : x.x_c) {
        if (!(v >= -1.0 && v <= 1.0)) {
            throw std::invalid_argument("normalized continuous coordinate outside [-1, 1]");
        }
    }
}

std::vector<double> normalize(const SpaceSpec& spec, std::span<const double> raw_continuous) {
    if (raw_continuous.size() != spec.num_continuous()) {
        throw std::invalid_argument("normalize: length mismatch");
    }
    std::vector<double> out(raw_continuous.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& v = spec.continuous_vars[i];
        const double r = raw_continuous[i];
        if (!(r >= v.lower && r <= v.upper)) {
            throw std::invalid_argument("normalize: value out of bounds for '" + v.name + "'");
        }
        out[i] = 2.0 * (r - v.lower) / (v.upper - v.lower) - 1.0;
    }
    return out;
}

std::vector<double> denormalize(const SpaceSpec& spec, std::span<const double> normalized) {
    if (normalized.size() != spec.num_continuous()) {
        throw std::invalid_argument("denormalize: length mismatch");
    }
    std::vector<double> out(normalized.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& v = spec.continuous_vars[i];
        const double u = std::clamp(normalized[i], -1.0, 1.0);
        out[i] = std::clamp(v.lower + 0.5 * (u + 1.0) * (v.upper - v.lower), v.lower, v.upper);
    }
    return out;
}

HybridPoint sample_uniform(const SpaceSpec& spec, Rng& rng) {
    HybridPoint p;
    p.x_d.reserve(spec.num_discrete());
    for (const auto& v : spec.discrete_vars) {
        std::uniform_int_distribution<int> cat(0, v.arity - 1);
        p.x_d.push_back(cat(rng));
    }
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    p.x_c.reserve(spec.num_continuous());
    for (std::size_t i = 0; i < spec.num_continuous(); ++i) {
        p.x_c.push_back(unit(rng));
    }
    return p;
}

std::vector<std::vector<int>> hamming_neighbors(const SpaceSpec& spec, std::span<const int> x_d) {
    std::vector<std::vector<int>> out;
    std::size_t total = 0;
    for (const auto& v : spec.discrete_vars) total += static_cast<std::size_t>(v.arity - 1);
    out.reserve(total);
    std::vector<int> base(x_d.begin(), x_d.end());
    for (std::size_t i = 0; i < spec.num_discrete(); ++i) {
        for (int c = 0; c < spec.discrete_vars[i].arity; ++c) {
            if (c == base[i]) continue;
            auto nb = base;
            nb[i] = c;
            out.push_back(std::move(nb));
        }
    }
    return out;
}

std::uint64_t discrete_cardinality(const SpaceSpec& spec) {
    std::uint64_t total = 1;
    for (const auto& v : spec.discrete_vars) {
        const auto a = static_cast<std::uint64_t>(v.arity);
        if (total > std::numeric_limits<std::uint64_t>::max() / a) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= a;
    }
    return total;
}

}  // namespace hybo
