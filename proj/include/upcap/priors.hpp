#pragma once

#include "upcap/convex_body.hpp"
#include "upcap/finite_space.hpp"
#include "upcap/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace upcap {

// One member of a prior family: the per-coordinate shift parameters for the
// shift families (column i is the shift of coordinate i), or an extreme
// index for discrete families backed by a FiniteSpace.
struct PriorPoint {
    Eigen::MatrixXd shifts;  // d x n
    int extreme = -1;        // discrete families only
};

// A parametric set of product priors. UniformShift draws each coordinate
// uniformly from [mu_i - r, mu_i + r] with |mu_i| <= a (d = 1). BallShift
// draws uniformly from the radius-r ball centered at mu_i, with mu_i ranging
// over a convex body (d >= 2). Discrete wraps a FiniteSpace and indexes its
// extreme measures. Only extreme product measures are ever sampled: suprema
// of linear functionals over a convex hull are attained at extreme points,
// so that suffices to realize the upper expectation.
//
// Immutable after construction; sampling is pure given (prior, stream).
class PriorFamily {
public:
    enum class Kind { UniformShift, BallShift, Discrete };

    static PriorFamily uniform_shift(double a, double r, int n);
    static PriorFamily ball_shift(double r, int n, ConvexBody shift_set);
    static PriorFamily discrete(std::shared_ptr<const FiniteSpace> space);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int dim() const { return dim_; }
    // Almost-sure bound M on |X_i| (a + r for the shift families).
    double bound() const { return bound_; }
    double shift_radius() const { return a_; }
    double dispersion() const { return r_; }
    const std::shared_ptr<const FiniteSpace>& space() const { return space_; }

    bool admissible(const PriorPoint& prior, double tol = 1e-9) const;

    // Expectation set of coordinate i (identical across i for the shift
    // families; exact hull for discrete ones).
    ConvexBody mean_set(int i) const;
    // Minkowski average of the n expectation sets.
    ConvexBody mean_set_average() const;

    // Worst-coordinate best-center second moment
    // sup_i inf_theta sup_P E_P|X_i - theta|^2. UniformShift uses the
    // analytic inner expectation with golden-section refinement over theta;
    // BallShift reduces to the circumradius of the shift set; Discrete
    // delegates to the exact finite-space computation.
    double variance_proxy() const;

    // Extreme shift assignments aligned and anti-aligned with `direction`,
    // plus `random_extras` random corner assignments (deterministic in seed).
    // Used to seed the adversarial search over priors.
    std::vector<PriorPoint> corner_priors(const Vec& direction, int random_extras = 0,
                                          std::uint64_t seed = 0) const;

    // One draw of (X_1..X_n); deterministic given the seed.
    std::vector<Vec> sample(const PriorPoint& prior, std::uint64_t seed) const;

    // Writes n*dim doubles (coordinate-major) into `out`. Every component is
    // checked against the almost-sure bound; a violation throws.
    void sample_into(const PriorPoint& prior, RngStream& rng, double* out) const;

private:
    PriorFamily() = default;

    Kind kind_ = Kind::UniformShift;
    int n_ = 0;
    int dim_ = 1;
    double a_ = 0.0;
    double r_ = 0.0;
    double bound_ = 0.0;
    std::optional<ConvexBody> shift_set_;
    std::shared_ptr<const FiniteSpace> space_;
};

}  // namespace upcap
