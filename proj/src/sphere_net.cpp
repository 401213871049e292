#include "upcap/sphere_net.hpp"

#include "upcap/parallel.hpp"
#include "upcap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace upcap {

namespace {

constexpr std::uint64_t kCandidateSeed = 0x5EEDC0DE5EEDC0DEull;
constexpr std::uint64_t kVerifySeed = 0xBADC0FFEE0DDF00Dull;

Vec random_unit_vector(RngStream& rng, int dim) {
    Vec v(dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
        const double norm = v.norm();
        if (norm > 1e-12) return v / norm;
    }
}

std::vector<Vec> candidate_pool(int dim) {
    std::vector<Vec> pool;
    if (dim == 2) {
        // Equally spaced directions; mesh far below the selection threshold.
        const int count = 8192;
        pool.reserve(count);
        for (int i = 0; i < count; ++i) {
            const double angle = 2.0 * M_PI * i / count;
            Vec v(2);
            v << std::cos(angle), std::sin(angle);
            pool.push_back(std::move(v));
        }
        return pool;
    }
    const int count = dim <= 3 ? 32768 : (dim <= 5 ? 131072 : 262144);
    pool.reserve(count);
    RngStream rng(kCandidateSeed, static_cast<std::uint32_t>(dim), 0);
    for (int i = 0; i < count; ++i) pool.push_back(random_unit_vector(rng, dim));
    return pool;
}

double nearest_distance(const std::vector<Vec>& points, const Vec& u) {
    double best_sq = std::numeric_limits<double>::infinity();
    for (const auto& p : points) best_sq = std::min(best_sq, (u - p).squaredNorm());
    return std::sqrt(best_sq);
}

}  // namespace

std::uint64_t SphereNet::budget() const {
    std::uint64_t b = 1;
    for (int i = 0; i < dim; ++i) b *= 5;
    return b;
}

SphereNet build_half_net(int dim) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("build_half_net: dim must be in [1, 8]");

    SphereNet net;
    net.dim = dim;
    if (dim == 1) {
        Vec minus(1), plus(1);
        minus << -1.0;
        plus << 1.0;
        net.points = {minus, plus};
        net.verified_radius = 0.0;
        return net;
    }

    const std::vector<Vec> pool = candidate_pool(dim);
    // Selection threshold below the target leaves room for the candidate
    // mesh; the verification pass below repairs any residual hole.
    const double threshold = dim == 2 ? 0.48 : 0.45;

    std::vector<double> dist_sq(pool.size(), std::numeric_limits<double>::infinity());
    std::size_t pick = 0;  // start from the first candidate
    net.points.push_back(pool[pick]);
    for (;;) {
        double worst = -1.0;
        std::size_t worst_index = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const double sq = (pool[i] - net.points.back()).squaredNorm();
            if (sq < dist_sq[i]) dist_sq[i] = sq;
            if (dist_sq[i] > worst) {
                worst = dist_sq[i];
                worst_index = i;
            }
        }
        if (std::sqrt(worst) <= threshold) break;
        net.points.push_back(pool[worst_index]);
    }

    // Verification-and-repair: sample directions with a fixed stream; any
    // hole gets patched with the offending direction, then a fresh pass runs.
    constexpr std::int64_t kVerifySamples = 100000;
    for (int pass = 0; pass < 64; ++pass) {
        RngStream rng(kVerifySeed, static_cast<std::uint32_t>(dim),
                      static_cast<std::uint32_t>(pass));
        double worst = 0.0;
        bool repaired = false;
        for (std::int64_t s = 0; s < kVerifySamples; ++s) {
            const Vec u = random_unit_vector(rng, dim);
            const double dist = nearest_distance(net.points, u);
            if (dist > net.target_radius) {
                net.points.push_back(u);
                repaired = true;
            } else {
                worst = std::max(worst, dist);
            }
        }
        if (!repaired) {
            net.verified_radius = worst;
            return net;
        }
    }
    throw std::runtime_error("build_half_net: verification did not stabilize");
}

double covering_radius(const SphereNet& net, std::int64_t samples, std::uint64_t seed,
                       int workers) {
    if (samples < 1) throw std::invalid_argument("covering_radius: samples must be >= 1");
    constexpr std::int64_t kChunk = 4096;
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> chunk_max(static_cast<std::size_t>(chunks), 0.0);
    for_each_chunk(samples, kChunk, workers,
                   [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
                       RngStream rng(seed, 0, static_cast<std::uint32_t>(chunk));
                       double worst = 0.0;
                       for (std::int64_t s = begin; s < end; ++s) {
                           const Vec u = random_unit_vector(rng, net.dim);
                           worst = std::max(worst, nearest_distance(net.points, u));
                       }
                       chunk_max[static_cast<std::size_t>(chunk)] = worst;
                   });
    double result = 0.0;
    for (double w : chunk_max) result = std::max(result, w);
    return result;
}

bool covering_transfer_holds(const SphereNet& net, const Vec& sum, std::int64_t n, double t) {
    if (sum.size() != net.dim) throw std::invalid_argument("covering_transfer_holds: dim mismatch");
    const double level = static_cast<double>(n) * t;
    if (sum.norm() <= level) return true;
    const double half = 0.5 * level;
    for (const auto& p : net.points) {
        const double inner = p.dot(sum);
        if (inner > half || -inner > half) return true;
    }
    return false;
}

void write_net_table(const SphereNet& net, std::ostream& out) {
    char buffer[64];
    for (const auto& p : net.points) {
        for (int i = 0; i < p.size(); ++i) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", p[i]);
            if (i > 0) out << ' ';
            out << buffer;
        }
        out << '\n';
    }
}

}  // namespace upcap
