#pragma once

#include "upcap/convex_body.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace upcap {

// A finite set of unit vectors covering the sphere S^{d-1} to within the
// target chord radius (1/2 by default). `verified_radius` is the sampled
// covering radius measured at construction time; the build routine repairs
// the net until that check passes, so the stored value is always within the
// target.
struct SphereNet {
    int dim = 1;
    std::vector<Vec> points;
    double target_radius = 0.5;
    double verified_radius = 0.0;

    std::size_t size() const { return points.size(); }
    // Volumetric budget 5^d the construction is compared against.
    std::uint64_t budget() const;
};

// Builds a 1/2-net of S^{d-1} for 1 <= d <= 8. d = 1 returns exactly
// {-1, +1}; d >= 2 runs greedy farthest-point selection over a dense
// deterministic candidate set, then verifies the covering radius on 10^5
// sampled directions (fixed internal seed) and inserts any direction found
// outside the target until a clean verification pass. Deterministic in d.
SphereNet build_half_net(int dim);

// Max over `samples` random unit vectors of the distance to the nearest net
// point. Deterministic given the seed, independent of the worker count.
double covering_radius(const SphereNet& net, std::int64_t samples, std::uint64_t seed,
                       int workers = 0);

// Checks the covering-transfer implication for a sum vector S: either
// |S| <= n*t, or some net point p has <p, S> > n*t/2 or <-p, S> > n*t/2.
// Always true for a verified 1/2-net; exercised as a property test.
bool covering_transfer_holds(const SphereNet& net, const Vec& sum, std::int64_t n, double t);

// One unit vector per row, coordinates separated by single spaces.
void write_net_table(const SphereNet& net, std::ostream& out);

}  // namespace upcap
