#pragma once

#include <cstdint>
#include <functional>

namespace upcap {

// Parameters every closed-form tail bound consumes. `t` beyond 2M makes the
// event impossible; the evaluators still return the formula value there and
// `vacuous()` flags the range.
struct BoundInput {
    std::int64_t n = 1;
    int d = 1;
    double M = 1.0;
    double sigma_sq = 0.0;  // worst-coordinate best-center second moment
    double t = 0.0;

    void validate() const;
    bool vacuous() const { return t > 2.0 * M; }
};

// prefactor * exp(-exponent), reported both raw and clamped to (0, 1].
// The exponent is kept separately so values that underflow a double (raw
// flushes to 0 past exponent ~745) stay reportable in log scale.
struct BoundValue {
    double raw = 1.0;
    double clamped = 1.0;
    double exponent = 0.0;
    double prefactor = 1.0;

    double log_value() const;  // ln(prefactor) - exponent
};

enum class Regime { SubGaussian, SubExponential };
const char* regime_name(Regime regime);

// Covering-route tail bound with range-only control:
// 2 * 5^d * exp(-n t^2 / (32 M^2)).
BoundValue azuma_bound(const BoundInput& in);

// Scalar specialization (d = 1): the two-point cover of S^0 is exact, so the
// prefactor drops to 2 and the exponent sharpens to n t^2 / (8 M^2).
BoundValue azuma_bound_scalar(const BoundInput& in);

// Covering-route bound with the variance proxy:
// 2 * 5^d * exp(-n t^2 / (8 sigma_sq + 8 M t / 3)).
BoundValue bernstein_bound(const BoundInput& in);

// Matrix-martingale route, polynomial prefactor:
// (d+1) * exp(-n t^2 / (2 sigma_sq + 4 M t / 3)).
BoundValue dimfree_bound(const BoundInput& in);

// Covering transfer applied to an arbitrary decreasing scalar tail psi:
// 2 * 5^d * psi(n t / 2). psi is probed for monotonicity and range; a
// violation throws std::invalid_argument.
BoundValue general_bound(std::int64_t n, int d, double t,
                         const std::function<double(double)>& psi);

// SubGaussian iff t <= 3 sigma_sq / M (variance term dominates the
// denominator of the Bernstein exponent); ties classify as SubGaussian.
Regime classify_regime(const BoundInput& in);

// Upper estimate of the expected squared distance of the sample mean,
// obtained by integrating the clamped Bernstein bound over the layer-cake
// representation on [0, (2M)^2]. Absolute quadrature tolerance 1e-10.
double moment_bound(std::int64_t n, int d, double M, double sigma_sq);

// Large-deviation rate function of Uniform[-1, 1] at u, closed form
// ((1+u)ln(1+u) + (1-u)ln(1-u)) / 2 with the boundary limit ln 2.
double rate_function_uniform(double u);
// Series route sum u^(2k) / (2k (2k-1)), truncated at term size 1e-14;
// kept independent of the closed form for cross-checking.
double rate_function_uniform_series(double u);

// Quadratic envelope 3 x^2 / (2 r^2), valid for |x| <= r/2.
struct QuadraticRateBound {
    double value = 0.0;
    bool within_validity = false;
};
QuadraticRateBound quadratic_rate_bound(double x, double r);

// Tail lower bound 0.25 * exp(-2 n t^2 / sigma^2) from the shifted-uniform
// construction, valid for t <= sigma / (4 sqrt(n)). `construction_r` is the
// half-width sigma * sqrt(3) / 2 of the uniform noise realizing it.
struct SharpnessBound {
    double value = 0.0;
    bool valid = false;
    double construction_r = 0.0;
};
SharpnessBound sharpness_lower_bound(std::int64_t n, double sigma, double t);

}  // namespace upcap
