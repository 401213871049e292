#pragma once

#include "upcap/convex_body.hpp"
#include "upcap/rng.hpp"

#include <cstdlib>
#include <filesystem>
#include <vector>

namespace upcap_test {

inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("UPCAP_DATA")) return env;
    return std::filesystem::path(".") / "data";
}

inline upcap::Vec random_vec(upcap::RngStream& rng, int dim, double scale = 1.0) {
    upcap::Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = scale * (2.0 * rng.next_unit() - 1.0);
    return v;
}

inline upcap::Vec random_unit(upcap::RngStream& rng, int dim) {
    for (;;) {
        upcap::Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
        const double norm = v.norm();
        if (norm > 1e-9) return upcap::Vec(v / norm);
    }
}

inline upcap::ConvexBody random_body(upcap::RngStream& rng, int dim) {
    const double pick = rng.next_unit();
    if (pick < 1.0 / 3.0) {
        upcap::Vec lo = random_vec(rng, dim, 2.0);
        upcap::Vec hi = lo;
        for (int i = 0; i < dim; ++i) hi[i] += 2.0 * rng.next_unit();
        return upcap::ConvexBody::interval(lo, hi);
    }
    if (pick < 2.0 / 3.0) {
        return upcap::ConvexBody::ball(random_vec(rng, dim, 2.0), rng.next_unit() * 2.0);
    }
    const int count = 2 + static_cast<int>(rng.next_unit() * 5);
    std::vector<upcap::Vec> vertices;
    for (int i = 0; i < count; ++i) vertices.push_back(random_vec(rng, dim, 2.0));
    return upcap::ConvexBody::polytope(std::move(vertices));
}

}  // namespace upcap_test
