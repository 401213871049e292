#pragma once

#include "upcap/convex_body.hpp"
#include "upcap/priors.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace upcap {

// Result of centering a sampled batch at its conditional means. For product
// priors the conditional mean of each coordinate equals its shift, so the
// residuals y[i] = x[i] - mu_i form a martingale difference sequence under
// the sampling measure. Every residual is checked against the 2M range
// bound at construction.
struct ReducedSample {
    std::vector<Vec> x;
    std::vector<Vec> y;
    std::vector<Vec> conditional_means;
    double bound = 0.0;           // M
    double variance_proxy = 0.0;  // worst-coordinate best-center second moment
};

// Centers the batch at the prior's shifts. Only defined for the shift
// families, whose product structure makes the conditional means analytic.
ReducedSample reduce(const PriorFamily& family, const PriorPoint& prior,
                     std::span<const Vec> samples);

// Checks rho_Theta(mean of x) <= |mean of y| + tol, the inequality the
// reduction guarantees whenever theta_average is the Minkowski average of
// the expectation sets.
bool reduction_bound_holds(const ReducedSample& reduced, const ConvexBody& theta_average,
                           double tol = 1e-9);

// Freedman tail exp(-s^2 / (2 n sigma_sq + 4 M s / 3)), clamped to (0, 1].
double freedman_tail(double s, std::int64_t n, double sigma_sq, double bound);

}  // namespace upcap
