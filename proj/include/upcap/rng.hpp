#pragma once

#include <array>
#include <cstdint>

namespace upcap {

// Philox4x32-10 counter-based generator (constants from Salmon et al.,
// "Parallel Random Numbers: As Easy as 1, 2, 3").
//
// A stream is addressed by (seed, stream0, stream1); the two stream words
// typically hold a prior index and a replicate-chunk index. Within a stream
// the 64-bit block counter advances sequentially, so a draw depends only on
// its position in the stream, never on which thread consumed it.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        const std::array<std::uint32_t, 4>& counter);

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint32_t stream0 = 0, std::uint32_t stream1 = 0)
        : seed_(seed), stream0_(stream0), stream1_(stream1) {}

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53 random bits.
    double next_unit();
    // Uniform on (0, 1]; safe as a log() argument.
    double next_unit_open();
    // Uniform on [lo, hi).
    double next_uniform(double lo, double hi);
    // Standard normal via Box-Muller (fixed consumption: two uniforms per pair).
    double next_gaussian();

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint32_t stream0_, stream1_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int words_left_ = 0;
    bool have_spare_gaussian_ = false;
    double spare_gaussian_ = 0.0;

    void refill();
};

}  // namespace upcap
