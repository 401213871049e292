#pragma once

#include "upcap/bounds.hpp"
#include "upcap/priors.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace upcap {

// Knobs shared by every estimator. Results are a pure function of
// (family, priors, n, t, replicates, seed); the worker count only affects
// scheduling because replicate chunks carry their own RNG streams.
struct McConfig {
    std::int64_t replicates = 100000;
    std::uint64_t seed = 0;
    int workers = 0;  // 0 = hardware concurrency
    double ci_level = 0.99;
};

// Estimated upper capacity of the event {rho_Theta(sample mean) > t}: the
// max over the searched priors of the empirical tail frequency, with the
// exact binomial interval at the argmax prior. A finite prior search
// approximates the capacity from below, which keeps upper-bound checks
// conservative.
struct CapacityEstimate {
    double t = 0.0;
    std::int64_t n = 0;
    double point = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::int64_t replicates = 0;
    int priors_searched = 0;
    std::uint64_t seed = 0;
    int argmax_prior = 0;
};

CapacityEstimate estimate_tail(const PriorFamily& family, std::span<const PriorPoint> priors,
                               std::int64_t n, double t, const McConfig& config);

// Shares one batch of draws per prior across the whole threshold grid.
std::vector<CapacityEstimate> estimate_tail_grid(const PriorFamily& family,
                                                 std::span<const PriorPoint> priors,
                                                 std::int64_t n, std::span<const double> t_grid,
                                                 const McConfig& config);

// One grid row: the Monte Carlo estimate next to the three closed-form upper
// bounds and the construction lower bound with its validity flag.
struct SandwichRow {
    double t = 0.0;
    CapacityEstimate mc;
    double lower = 0.0;
    bool lower_valid = false;
    BoundValue azuma;
    BoundValue bernstein;
    BoundValue dimfree;
};

struct SandwichOptions {
    int random_corner_priors = 0;
};

// Runs the corner-prior search across an ascending threshold grid and
// assembles the comparison rows. M and the variance proxy come from the
// family; the lower bound maps the family dispersion r to sigma = 2r/sqrt(3).
std::vector<SandwichRow> sandwich_sweep(const PriorFamily& family, std::int64_t n,
                                        std::span<const double> t_grid, const McConfig& config,
                                        const SandwichOptions& options = {});

// Max over corner priors of the empirical mean of rho_Theta^2(sample mean),
// with the standard error at the argmax prior.
struct MomentEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    int argmax_prior = 0;
    std::int64_t replicates = 0;
};

MomentEstimate moment_estimate(const PriorFamily& family, std::int64_t n,
                               const McConfig& config);

}  // namespace upcap
