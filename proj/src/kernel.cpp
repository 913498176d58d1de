#include "hybo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace hybo {

namespace {

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

// Scratch for the power-sum / elementary-symmetric recursion. Sized on demand
// so kernel evaluation stays allocation-free in hot loops.
struct RecursionScratch {
    std::vector<double> sums;
    std::vector<double> elem;
    std::vector<double> base;
};

thread_local std::uint64_t eval_counter = 0;

RecursionScratch& scratch(std::size_t dims) {
    thread_local RecursionScratch s;
    if (s.sums.size() < dims + 1) {
        s.sums.resize(dims + 1);
        s.elem.resize(dims + 1);
        s.base.resize(dims + 1);
    }
    return s;
}

}  // namespace

KernelHypers default_hypers(const SpaceSpec& spec, int max_order, int min_order) {
    const auto d = static_cast<int>(spec.num_dims());
    KernelHypers h;
    h.max_order = (max_order <= 0 || max_order > d) ? d : max_order;
    h.min_order = std::max(1, std::min(min_order, h.max_order));
    h.sigma.assign(spec.num_continuous(), 1.0);
    h.beta.assign(spec.num_discrete(), 1.0);
    h.theta.assign(static_cast<std::size_t>(h.max_order), 1.0);
    const int active = h.max_order - h.min_order + 1;
    for (int p = h.min_order; p <= h.max_order; ++p) {
        h.theta[p - 1] = 1.0 / std::sqrt(active * binomial(static_cast<std::size_t>(d), static_cast<std::size_t>(p)));
    }
    h.noise_var = 1e-4;
    return h;
}

void check_hypers(const SpaceSpec& spec, const KernelHypers& h) {
    const auto d = static_cast<int>(spec.num_dims());
    if (h.sigma.size() != spec.num_continuous() || h.beta.size() != spec.num_discrete()) {
        throw std::invalid_argument("hyper-parameter dimension mismatch");
    }
    if (h.max_order < 1 || h.max_order > d || h.min_order < 1 || h.min_order > h.max_order) {
        throw std::invalid_argument("interaction order out of range");
    }
    if (h.theta.size() != static_cast<std::size_t>(h.max_order)) {
        throw std::invalid_argument("theta must have max_order entries");
    }
    for (double s : h.sigma) {
        if (!(s > 0.0)) throw std::invalid_argument("sigma must be positive");
    }
    for (double b : h.beta) {
        if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
    }
    for (double t : h.theta) {
        if (!(t > 0.0)) throw std::invalid_argument("theta must be positive");
    }
    if (!(h.noise_var >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
}

double rbf_base(double a, double b, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("rbf_base: sigma must be positive");
    const double diff = a - b;
    return std::exp(-diff * diff / (2.0 * sigma * sigma));
}

double discrete_diffusion_factor(double beta, int arity) {
    if (!(beta > 0.0)) throw std::invalid_argument("discrete diffusion: beta must be positive");
    if (arity < 2) throw std::invalid_argument("discrete diffusion: arity must be >= 2");
    const double c = static_cast<double>(arity);
    const double e = std::exp(-c * beta);
    // -expm1 keeps precision for small beta.
    return -std::expm1(-c * beta) / (1.0 + (c - 1.0) * e);
}

double discrete_diffusion_base(int a, int b, double beta, int arity) {
    if (a < 0 || b < 0 || a >= arity || b >= arity) {
        throw std::invalid_argument("discrete diffusion: invalid category index");
    }
    const double off = discrete_diffusion_factor(beta, arity);
    return a == b ? 1.0 : off;
}

std::vector<double> base_values(const HybridPoint& x, const HybridPoint& y, const KernelHypers& h,
                                const SpaceSpec& spec) {
    const std::size_t m = spec.num_discrete();
    const std::size_t n = spec.num_continuous();
    if (x.x_d.size() != m || y.x_d.size() != m || x.x_c.size() != n || y.x_c.size() != n ||
        h.beta.size() != m || h.sigma.size() != n) {
        throw std::invalid_argument("base_values: dimension mismatch");
    }
    std::vector<double> k(m + n);
    for (std::size_t i = 0; i < m; ++i) {
        k[i] = discrete_diffusion_base(x.x_d[i], y.x_d[i], h.beta[i], spec.discrete_vars[i].arity);
    }
    for (std::size_t j = 0; j < n; ++j) {
        k[m + j] = rbf_base(x.x_c[j], y.x_c[j], h.sigma[j]);
    }
    return k;
}

std::vector<double> power_sums(std::span<const double> base, int max_order) {
    if (max_order < 1) throw std::invalid_argument("power_sums: max_order must be >= 1");
    std::vector<double> s(static_cast<std::size_t>(max_order), 0.0);
    for (double k : base) {
        double pw = k;
        for (int j = 0; j < max_order; ++j) {
            s[j] += pw;
            pw *= k;
        }
    }
    return s;
}

std::vector<double> elementary_symmetric(std::span<const double> sums, int max_order) {
    if (max_order < 0 || static_cast<std::size_t>(max_order) > sums.size()) {
        throw std::invalid_argument("elementary_symmetric: need max_order power sums");
    }
    std::vector<double> e(static_cast<std::size_t>(max_order) + 1, 0.0);
    e[0] = 1.0;
    for (int q = 1; q <= max_order; ++q) {
        double acc = 0.0;
        double sign = 1.0;
        for (int j = 1; j <= q; ++j) {
            acc += sign * e[q - j] * sums[j - 1];
            sign = -sign;
        }
        e[q] = acc / q;
    }
    return e;
}

double additive_self_variance(const KernelHypers& h, std::size_t num_dims) {
    double v = 0.0;
    for (int p = h.min_order; p <= h.max_order; ++p) {
        v += h.theta[p - 1] * h.theta[p - 1] * binomial(num_dims, static_cast<std::size_t>(p));
    }
    return v;
}

AdditiveKernel::AdditiveKernel(const SpaceSpec& spec, const KernelHypers& h)
    : num_discrete_(spec.num_discrete()),
      num_continuous_(spec.num_continuous()),
      min_order_(h.min_order),
      max_order_(h.max_order) {
    check_hypers(spec, h);
    discrete_off_.resize(num_discrete_);
    for (std::size_t i = 0; i < num_discrete_; ++i) {
        discrete_off_[i] = discrete_diffusion_factor(h.beta[i], spec.discrete_vars[i].arity);
    }
    neg_inv_two_sigma_sq_.resize(num_continuous_);
    for (std::size_t j = 0; j < num_continuous_; ++j) {
        neg_inv_two_sigma_sq_[j] = -1.0 / (2.0 * h.sigma[j] * h.sigma[j]);
    }
    theta_sq_.resize(h.theta.size());
    for (std::size_t p = 0; p < h.theta.size(); ++p) theta_sq_[p] = h.theta[p] * h.theta[p];
    self_variance_ = additive_self_variance(h, num_dims());
}

double AdditiveKernel::combine(std::span<const double> base) const {
    ++eval_counter;
    auto& s = scratch(base.size());
    const int top = max_order_;
    double* sums = s.sums.data();
    double* elem = s.elem.data();
    for (int j = 0; j < top; ++j) sums[j] = 0.0;
    for (double k : base) {
        double pw = k;
        for (int j = 0; j < top; ++j) {
            sums[j] += pw;
            pw *= k;
        }
    }
    elem[0] = 1.0;
    double total = 0.0;
    for (int q = 1; q <= top; ++q) {
        double acc = 0.0;
        double sign = 1.0;
        for (int j = 1; j <= q; ++j) {
            acc += sign * elem[q - j] * sums[j - 1];
            sign = -sign;
        }
        elem[q] = acc / q;
        if (q >= min_order_) total += theta_sq_[q - 1] * elem[q];
    }
    return total;
}

double AdditiveKernel::operator()(const HybridPoint& x, const HybridPoint& y) const {
    auto& s = scratch(num_dims());
    double* k = s.base.data();
    for (std::size_t i = 0; i < num_discrete_; ++i) {
        k[i] = x.x_d[i] == y.x_d[i] ? 1.0 : discrete_off_[i];
    }
    for (std::size_t j = 0; j < num_continuous_; ++j) {
        const double diff = x.x_c[j] - y.x_c[j];
        k[num_discrete_ + j] = std::exp(diff * diff * neg_inv_two_sigma_sq_[j]);
    }
    return combine(std::span<const double>(k, num_dims()));
}

double AdditiveKernel::from_pair(const unsigned char* mismatch, const double* sqdist) const {
    auto& s = scratch(num_dims());
    double* k = s.base.data();
    for (std::size_t i = 0; i < num_discrete_; ++i) {
        k[i] = mismatch[i] ? discrete_off_[i] : 1.0;
    }
    for (std::size_t j = 0; j < num_continuous_; ++j) {
        k[num_discrete_ + j] = std::exp(sqdist[j] * neg_inv_two_sigma_sq_[j]);
    }
    return combine(std::span<const double>(k, num_dims()));
}

double additive_kernel(const HybridPoint& x, const HybridPoint& y, const KernelHypers& h,
                       const SpaceSpec& spec) {
    const auto k = base_values(x, y, h, spec);
    return AdditiveKernel(spec, h).combine(k);
}

PairwiseCache::PairwiseCache(const SpaceSpec& spec, std::span<const HybridPoint> points)
    : n_points_(points.size()), num_discrete_(spec.num_discrete()), num_continuous_(spec.num_continuous()) {
    const std::size_t pairs = n_points_ * (n_points_ + 1) / 2;
    mismatch_.resize(pairs * num_discrete_);
    sqdist_.resize(pairs * num_continuous_);
    std::size_t idx = 0;
    for (std::size_t a = 0; a < n_points_; ++a) {
        for (std::size_t b = a; b < n_points_; ++b, ++idx) {
            for (std::size_t i = 0; i < num_discrete_; ++i) {
                mismatch_[idx * num_discrete_ + i] = points[a].x_d[i] != points[b].x_d[i] ? 1 : 0;
            }
            for (std::size_t j = 0; j < num_continuous_; ++j) {
                const double diff = points[a].x_c[j] - points[b].x_c[j];
                sqdist_[idx * num_continuous_ + j] = diff * diff;
            }
        }
    }
}

Eigen::MatrixXd PairwiseCache::kernel_matrix(const AdditiveKernel& k) const {
    const auto n = static_cast<Eigen::Index>(n_points_);
    Eigen::MatrixXd out(n, n);
    std::size_t idx = 0;
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b, ++idx) {
            const double v = k.from_pair(mismatch_.data() + idx * num_discrete_, sqdist_.data() + idx * num_continuous_);
            out(a, b) = v;
            out(b, a) = v;
        }
    }
    return out;
}

std::uint64_t kernel_evaluations() { return eval_counter; }

Eigen::MatrixXd gram(std::span<const HybridPoint> points, const KernelHypers& h, const SpaceSpec& spec) {
    if (points.empty()) throw std::invalid_argument("gram: empty point list");
    for (const auto& p : points) check_point(spec, p);
    const AdditiveKernel k(spec, h);
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) {
            const double v = k(points[a], points[b]);
            g(a, b) = v;
            g(b, a) = v;
        }
        g(a, a) += h.noise_var + kGramJitter;
    }
    return g;
}

}  // namespace hybo
