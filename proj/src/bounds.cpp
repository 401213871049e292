#include "upcap/bounds.hpp"

#include "upcap/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace upcap {

namespace {

double pow5(int d) {
    double value = 1.0;
    for (int i = 0; i < d; ++i) value *= 5.0;
    return value;
}

BoundValue make_bound(double prefactor, double exponent) {
    BoundValue v;
    v.prefactor = prefactor;
    v.exponent = exponent;
    v.raw = std::exp(std::log(prefactor) - exponent);
    v.clamped = std::min(v.raw, 1.0);
    return v;
}

}  // namespace

void BoundInput::validate() const {
    if (n < 1) throw std::invalid_argument("BoundInput: n must be >= 1");
    if (d < 1) throw std::invalid_argument("BoundInput: d must be >= 1");
    if (!(M > 0.0)) throw std::invalid_argument("BoundInput: M must be positive");
    if (!(sigma_sq >= 0.0)) throw std::invalid_argument("BoundInput: sigma_sq must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("BoundInput: t must be positive");
}

double BoundValue::log_value() const {
    return std::log(prefactor) - exponent;
}

const char* regime_name(Regime regime) {
    return regime == Regime::SubGaussian ? "subgaussian" : "subexponential";
}

BoundValue azuma_bound(const BoundInput& in) {
    in.validate();
    const double exponent = static_cast<double>(in.n) * in.t * in.t / (32.0 * in.M * in.M);
    return make_bound(2.0 * pow5(in.d), exponent);
}

BoundValue azuma_bound_scalar(const BoundInput& in) {
    in.validate();
    if (in.d != 1) throw std::invalid_argument("azuma_bound_scalar: requires d = 1");
    const double exponent = static_cast<double>(in.n) * in.t * in.t / (8.0 * in.M * in.M);
    return make_bound(2.0, exponent);
}

BoundValue bernstein_bound(const BoundInput& in) {
    in.validate();
    const double denominator = 8.0 * in.sigma_sq + 8.0 * in.M * in.t / 3.0;
    const double exponent = static_cast<double>(in.n) * in.t * in.t / denominator;
    return make_bound(2.0 * pow5(in.d), exponent);
}

BoundValue dimfree_bound(const BoundInput& in) {
    in.validate();
    const double denominator = 2.0 * in.sigma_sq + 4.0 * in.M * in.t / 3.0;
    const double exponent = static_cast<double>(in.n) * in.t * in.t / denominator;
    return make_bound(static_cast<double>(in.d) + 1.0, exponent);
}

BoundValue general_bound(std::int64_t n, int d, double t,
                         const std::function<double(double)>& psi) {
    if (n < 1 || d < 1 || !(t > 0.0))
        throw std::invalid_argument("general_bound: invalid parameters");

    // Probe psi for range and monotonicity on a grid around the evaluation
    // point before trusting it.
    const double s_eval = static_cast<double>(n) * t / 2.0;
    double previous = 1.0 + 1e-12;
    for (int k = 0; k <= 64; ++k) {
        const double s = s_eval * std::pow(2.0, (k - 32) / 8.0);
        const double value = psi(s);
        if (!(value >= 0.0 && value <= 1.0))
            throw std::invalid_argument("general_bound: psi out of [0, 1]");
        if (value > previous + 1e-12)
            throw std::invalid_argument("general_bound: psi is not decreasing");
        previous = value;
    }

    const double tail = psi(s_eval);
    BoundValue v;
    v.prefactor = 2.0 * pow5(d);
    v.raw = v.prefactor * tail;
    v.clamped = std::min(v.raw, 1.0);
    v.exponent = tail > 0.0 ? -std::log(tail) : std::numeric_limits<double>::infinity();
    return v;
}

Regime classify_regime(const BoundInput& in) {
    // t = 0 is allowed here (trivially sub-Gaussian) even though the bound
    // evaluators require t > 0.
    if (in.n < 1 || in.d < 1 || !(in.M > 0.0) || !(in.sigma_sq >= 0.0) || !(in.t >= 0.0))
        throw std::invalid_argument("classify_regime: invalid parameters");
    return in.t <= 3.0 * in.sigma_sq / in.M ? Regime::SubGaussian : Regime::SubExponential;
}

double moment_bound(std::int64_t n, int d, double M, double sigma_sq) {
    if (n < 1 || d < 1 || !(M > 0.0) || !(sigma_sq >= 0.0))
        throw std::invalid_argument("moment_bound: invalid parameters");
    const double upper = 4.0 * M * M;  // rho <= 2M, so the integrand vanishes beyond (2M)^2
    const double prefactor = 2.0 * pow5(d);
    const double log_prefactor = std::log(prefactor);

    // Increasing exponent of the Bernstein bound at deviation sqrt(s).
    auto exponent_at = [&](double s) {
        return static_cast<double>(n) * s / (8.0 * sigma_sq + 8.0 * M * std::sqrt(s) / 3.0);
    };

    // The integrand min(1, prefactor * exp(-exponent)) is 1 up to the clamp
    // point s_star; locate it by bisection, then integrate the smooth tail.
    double s_star = 0.0;
    if (exponent_at(upper) > log_prefactor) {
        double lo = 0.0, hi = upper;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (exponent_at(mid) < log_prefactor) lo = mid;
            else hi = mid;
        }
        s_star = 0.5 * (lo + hi);
    } else {
        return upper;  // the clamped bound is 1 on the whole range
    }

    auto integrand = [&](double s) {
        return std::min(1.0, std::exp(log_prefactor - exponent_at(s)));
    };
    return s_star + adaptive_simpson(integrand, s_star, upper, 1e-10);
}

double rate_function_uniform(double u) {
    if (std::fabs(u) > 1.0)
        throw std::invalid_argument("rate_function_uniform: |u| must be <= 1");
    const double a = 1.0 + u;
    const double b = 1.0 - u;
    const double left = a > 0.0 ? a * std::log(a) : 0.0;   // x ln x -> 0 at 0
    const double right = b > 0.0 ? b * std::log(b) : 0.0;
    return 0.5 * (left + right);
}

double rate_function_uniform_series(double u) {
    if (std::fabs(u) > 1.0)
        throw std::invalid_argument("rate_function_uniform_series: |u| must be <= 1");
    const double u_sq = u * u;
    double term_power = u_sq;
    double total = 0.0;
    for (int k = 1; k <= 100000000; ++k) {
        const double term = term_power / (2.0 * k * (2.0 * k - 1.0));
        total += term;
        if (term < 1e-14) break;
        term_power *= u_sq;
    }
    return total;
}

QuadraticRateBound quadratic_rate_bound(double x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("quadratic_rate_bound: r must be positive");
    QuadraticRateBound b;
    b.value = 3.0 * x * x / (2.0 * r * r);
    b.within_validity = std::fabs(x) <= r / 2.0;
    return b;
}

SharpnessBound sharpness_lower_bound(std::int64_t n, double sigma, double t) {
    if (n < 1) throw std::invalid_argument("sharpness_lower_bound: n must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("sharpness_lower_bound: sigma must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("sharpness_lower_bound: t must be positive");
    SharpnessBound b;
    b.value = 0.25 * std::exp(-2.0 * static_cast<double>(n) * t * t / (sigma * sigma));
    b.valid = t <= sigma / (4.0 * std::sqrt(static_cast<double>(n)));
    b.construction_r = sigma * std::sqrt(3.0) / 2.0;
    return b;
}

}  // namespace upcap
