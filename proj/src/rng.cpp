#include "upcap/rng.hpp"

#include <cmath>

namespace upcap {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        const std::array<std::uint32_t, 4>& counter) {
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    std::array<std::uint32_t, 4> c = counter;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

void RngStream::refill() {
    buf_ = philox4x32(seed_, {stream0_, stream1_,
                              static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32)});
    ++block_;
    words_left_ = 4;
}

std::uint64_t RngStream::next_u64() {
    if (words_left_ < 2) refill();
    const std::uint32_t hi = buf_[4 - words_left_];
    const std::uint32_t lo = buf_[5 - words_left_];
    words_left_ -= 2;
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_unit_open() {
    return 1.0 - next_unit();
}

double RngStream::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

double RngStream::next_gaussian() {
    if (have_spare_gaussian_) {
        have_spare_gaussian_ = false;
        return spare_gaussian_;
    }
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_gaussian_ = radius * std::sin(angle);
    have_spare_gaussian_ = true;
    return radius * std::cos(angle);
}

}  // namespace upcap
