#include "upcap/martingale.hpp"

#include <cmath>
#include <stdexcept>

namespace upcap {

ReducedSample reduce(const PriorFamily& family, const PriorPoint& prior,
                     std::span<const Vec> samples) {
    if (family.kind() == PriorFamily::Kind::Discrete)
        throw std::invalid_argument("reduce: defined for shift families only");
    if (static_cast<int>(samples.size()) != family.n())
        throw std::invalid_argument("reduce: sample count does not match the family");
    if (!family.admissible(prior)) throw std::invalid_argument("reduce: inadmissible prior");

    ReducedSample reduced;
    reduced.bound = family.bound();
    reduced.variance_proxy = family.variance_proxy();
    reduced.x.assign(samples.begin(), samples.end());
    reduced.y.reserve(samples.size());
    reduced.conditional_means.reserve(samples.size());

    const double range = 2.0 * reduced.bound;
    for (int i = 0; i < family.n(); ++i) {
        if (samples[i].size() != family.dim())
            throw std::invalid_argument("reduce: sample dimension mismatch");
        Vec mean = prior.shifts.col(i);
        Vec residual = samples[i] - mean;
        if (residual.norm() > range + 1e-9)
            throw std::logic_error("reduce: residual exceeded the 2M range bound");
        reduced.conditional_means.push_back(std::move(mean));
        reduced.y.push_back(std::move(residual));
    }
    return reduced;
}

bool reduction_bound_holds(const ReducedSample& reduced, const ConvexBody& theta_average,
                           double tol) {
    if (reduced.x.empty()) throw std::invalid_argument("reduction_bound_holds: empty sample");
    const double inv_n = 1.0 / static_cast<double>(reduced.x.size());
    Vec x_mean = Vec::Zero(reduced.x.front().size());
    Vec y_mean = Vec::Zero(reduced.x.front().size());
    for (std::size_t i = 0; i < reduced.x.size(); ++i) {
        x_mean += reduced.x[i];
        y_mean += reduced.y[i];
    }
    x_mean *= inv_n;
    y_mean *= inv_n;
    return theta_average.distance(x_mean) <= y_mean.norm() + tol;
}

double freedman_tail(double s, std::int64_t n, double sigma_sq, double bound) {
    if (!(s > 0.0)) throw std::invalid_argument("freedman_tail: s must be positive");
    if (n < 1) throw std::invalid_argument("freedman_tail: n must be >= 1");
    if (!(sigma_sq >= 0.0)) throw std::invalid_argument("freedman_tail: sigma_sq must be >= 0");
    if (!(bound > 0.0)) throw std::invalid_argument("freedman_tail: bound must be positive");
    const double denominator = 2.0 * static_cast<double>(n) * sigma_sq + 4.0 * bound * s / 3.0;
    const double value = std::exp(-s * s / denominator);
    return std::min(value, 1.0);
}

}  // namespace upcap
