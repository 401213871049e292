#include "upcap/monte_carlo.hpp"

#include "upcap/numeric.hpp"
#include "upcap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upcap {

namespace {

constexpr std::int64_t kChunk = 8192;

void validate_common(const PriorFamily& family, std::int64_t n, const McConfig& config) {
    if (n != family.n())
        throw std::invalid_argument("monte carlo: n does not match the family");
    if (config.replicates < 1000)
        throw std::invalid_argument("monte carlo: at least 1000 replicates required");
    if (!(config.ci_level > 0.0 && config.ci_level < 1.0))
        throw std::invalid_argument("monte carlo: ci_level must be in (0, 1)");
}

// Distance of the replicate's sample mean from the averaged expectation set,
// evaluated per prior and chunk with a dedicated RNG stream. Exceedance
// counts are integers, so aggregation across chunks is order-independent.
class TailCounter {
public:
    TailCounter(const PriorFamily& family, const ConvexBody& theta)
        : family_(family), theta_(theta), flat_(static_cast<std::size_t>(family.n()) * family.dim()) {}

    double rho(const PriorPoint& prior, RngStream& rng) {
        family_.sample_into(prior, rng, flat_.data());
        const int n = family_.n();
        const int d = family_.dim();
        Vec mean = Vec::Zero(d);
        const double* cursor = flat_.data();
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < d; ++k) mean[k] += cursor[k];
            cursor += d;
        }
        mean /= static_cast<double>(n);
        return theta_.distance(mean);
    }

private:
    const PriorFamily& family_;
    const ConvexBody& theta_;
    std::vector<double> flat_;
};

}  // namespace

std::vector<CapacityEstimate> estimate_tail_grid(const PriorFamily& family,
                                                 std::span<const PriorPoint> priors,
                                                 std::int64_t n, std::span<const double> t_grid,
                                                 const McConfig& config) {
    validate_common(family, n, config);
    if (priors.empty()) throw std::invalid_argument("estimate_tail: empty prior list");
    if (t_grid.empty()) throw std::invalid_argument("estimate_tail: empty threshold grid");
    for (const auto& prior : priors) {
        if (!family.admissible(prior))
            throw std::invalid_argument("estimate_tail: inadmissible prior");
    }

    const ConvexBody theta = family.mean_set_average();
    const std::int64_t chunks = (config.replicates + kChunk - 1) / kChunk;

    // counts[prior][t] across all replicates.
    std::vector<std::vector<std::int64_t>> counts(
        priors.size(), std::vector<std::int64_t>(t_grid.size(), 0));

    for (std::size_t p = 0; p < priors.size(); ++p) {
        std::vector<std::vector<std::int64_t>> chunk_counts(
            static_cast<std::size_t>(chunks), std::vector<std::int64_t>(t_grid.size(), 0));
        for_each_chunk(
            config.replicates, kChunk, config.workers,
            [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
                RngStream rng(config.seed, static_cast<std::uint32_t>(p),
                              static_cast<std::uint32_t>(chunk));
                TailCounter counter(family, theta);
                auto& local = chunk_counts[static_cast<std::size_t>(chunk)];
                for (std::int64_t rep = begin; rep < end; ++rep) {
                    const double rho = counter.rho(priors[p], rng);
                    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
                        if (rho > t_grid[ti]) ++local[ti];
                    }
                }
            });
        for (const auto& local : chunk_counts)
            for (std::size_t ti = 0; ti < t_grid.size(); ++ti) counts[p][ti] += local[ti];
    }

    std::vector<CapacityEstimate> estimates;
    estimates.reserve(t_grid.size());
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        std::size_t argmax = 0;
        for (std::size_t p = 1; p < priors.size(); ++p) {
            if (counts[p][ti] > counts[argmax][ti]) argmax = p;
        }
        const std::int64_t hits = counts[argmax][ti];
        const BinomialCi ci = clopper_pearson(hits, config.replicates, config.ci_level);
        CapacityEstimate estimate;
        estimate.t = t_grid[ti];
        estimate.n = n;
        estimate.point = static_cast<double>(hits) / static_cast<double>(config.replicates);
        estimate.ci_lo = ci.lo;
        estimate.ci_hi = ci.hi;
        estimate.replicates = config.replicates;
        estimate.priors_searched = static_cast<int>(priors.size());
        estimate.seed = config.seed;
        estimate.argmax_prior = static_cast<int>(argmax);
        estimates.push_back(estimate);
    }
    return estimates;
}

CapacityEstimate estimate_tail(const PriorFamily& family, std::span<const PriorPoint> priors,
                               std::int64_t n, double t, const McConfig& config) {
    const double grid[1] = {t};
    return estimate_tail_grid(family, priors, n, grid, config).front();
}

std::vector<SandwichRow> sandwich_sweep(const PriorFamily& family, std::int64_t n,
                                        std::span<const double> t_grid, const McConfig& config,
                                        const SandwichOptions& options) {
    if (t_grid.empty()) throw std::invalid_argument("sandwich_sweep: empty threshold grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0))
            throw std::invalid_argument("sandwich_sweep: thresholds must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("sandwich_sweep: thresholds must be ascending");
    }

    Vec direction = Vec::Zero(family.dim());
    direction[0] = 1.0;
    const std::vector<PriorPoint> priors =
        family.corner_priors(direction, options.random_corner_priors, config.seed);
    const std::vector<CapacityEstimate> estimates =
        estimate_tail_grid(family, priors, n, t_grid, config);

    const double sigma_sq = family.variance_proxy();
    const double bound_m = family.bound();
    // The construction behind the lower bound has sigma = 2 r / sqrt(3).
    const double sigma_construction = 2.0 * family.dispersion() / std::sqrt(3.0);

    std::vector<SandwichRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        SandwichRow row;
        row.t = t_grid[i];
        row.mc = estimates[i];
        BoundInput in{n, family.dim(), bound_m, sigma_sq, t_grid[i]};
        row.azuma = azuma_bound(in);
        row.bernstein = bernstein_bound(in);
        row.dimfree = dimfree_bound(in);
        if (family.kind() == PriorFamily::Kind::UniformShift && sigma_construction > 0.0) {
            const SharpnessBound sharp = sharpness_lower_bound(n, sigma_construction, t_grid[i]);
            row.lower = sharp.value;
            row.lower_valid = sharp.valid;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

MomentEstimate moment_estimate(const PriorFamily& family, std::int64_t n,
                               const McConfig& config) {
    validate_common(family, n, config);
    Vec direction = Vec::Zero(family.dim());
    direction[0] = 1.0;
    const std::vector<PriorPoint> priors = family.corner_priors(direction, 0, config.seed);
    const ConvexBody theta = family.mean_set_average();
    const std::int64_t chunks = (config.replicates + kChunk - 1) / kChunk;

    MomentEstimate best;
    best.value = -1.0;
    for (std::size_t p = 0; p < priors.size(); ++p) {
        std::vector<double> sum(static_cast<std::size_t>(chunks), 0.0);
        std::vector<double> sum_sq(static_cast<std::size_t>(chunks), 0.0);
        for_each_chunk(
            config.replicates, kChunk, config.workers,
            [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
                RngStream rng(config.seed, static_cast<std::uint32_t>(p),
                              static_cast<std::uint32_t>(chunk));
                TailCounter counter(family, theta);
                double local = 0.0, local_sq = 0.0;
                for (std::int64_t rep = begin; rep < end; ++rep) {
                    const double rho = counter.rho(priors[p], rng);
                    const double rho_sq = rho * rho;
                    local += rho_sq;
                    local_sq += rho_sq * rho_sq;
                }
                sum[static_cast<std::size_t>(chunk)] = local;
                sum_sq[static_cast<std::size_t>(chunk)] = local_sq;
            });
        double total = 0.0, total_sq = 0.0;
        for (std::size_t c = 0; c < sum.size(); ++c) {
            total += sum[c];
            total_sq += sum_sq[c];
        }
        const double reps = static_cast<double>(config.replicates);
        const double mean = total / reps;
        const double variance = std::max(0.0, total_sq / reps - mean * mean);
        const double se = std::sqrt(variance / reps);
        if (mean > best.value) {
            best.value = mean;
            best.standard_error = se;
            best.argmax_prior = static_cast<int>(p);
        }
    }
    best.replicates = config.replicates;
    return best;
}

}  // namespace upcap
