#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace upcap {

using Vec = Eigen::VectorXd;

// A convex compact subset of R^d given as an axis-aligned interval, a
// Euclidean ball, or the convex hull of a finite vertex list. Supplies the
// support function, Euclidean projection and the distance function used by
// every tail-probability experiment. Immutable after construction; all
// operations are const and safe to call concurrently.
class ConvexBody {
public:
    enum class Kind { Interval, Ball, Polytope };

    static ConvexBody interval(Vec lo, Vec hi);
    static ConvexBody ball(Vec center, double radius);
    static ConvexBody polytope(std::vector<Vec> vertices);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    // sup over the body of <point, direction>; exact closed form per shape.
    double support(const Vec& direction) const;

    // A maximizer of <point, direction> over the body (a boundary point with
    // outward normal `direction` when the direction is nonzero).
    Vec support_point(const Vec& direction) const;

    // Euclidean projection onto the body. Interval and ball are closed form;
    // polytopes run a Wolfe min-norm-point iteration over the hull and throw
    // std::runtime_error with the residual if the variational-inequality
    // stopping rule is not met within the iteration cap (10 * |V| * d).
    Vec project(const Vec& x, double tol = 1e-9) const;

    // rho(x) = |x - project(x)|.
    double distance(const Vec& x, double tol = 1e-9) const;

    bool contains(const Vec& x, double tol = 1e-9) const;

    // Radius of the smallest enclosing ball of the body; its center realizes
    // inf over theta of the farthest-point distance, which is what the
    // ball-shift variance proxy needs.
    double circumradius() const;

    // Largest Euclidean norm over the body (enclosing ball centered at 0).
    double norm_bound() const;

    // Shape accessors; throw std::logic_error when the kind does not match.
    const Vec& lower() const;
    const Vec& upper() const;
    const Vec& center() const;
    double radius() const;
    const std::vector<Vec>& vertices() const;

private:
    ConvexBody() = default;

    Kind kind_ = Kind::Interval;
    int dim_ = 0;
    Vec lo_, hi_;          // interval
    Vec center_;           // ball
    double radius_ = 0.0;  // ball
    std::vector<Vec> vertices_;  // polytope

    void check_dim(const Vec& v) const;
};

// Minkowski average (1/n) * (B_1 + ... + B_n). All bodies must share the
// same dimension and shape kind. For polytopes, the n-fold vertex sums are
// enumerated, deduplicated and pruned to extreme points; the enumeration is
// rejected when the combination count exceeds `vertex_combination_cap`.
ConvexBody minkowski_average(std::span<const ConvexBody> bodies,
                             std::uint64_t vertex_combination_cap = 1'000'000);

// Minimizes max_i(|x - points[i]|^2 + offsets[i]) over x, i.e. the smallest
// enclosing ball with additive weights. Solved by away-step Frank-Wolfe on
// the simplex dual; `gap` is the duality-gap certificate at termination.
struct MinMaxSqResult {
    Vec center;
    double value;
    double gap;
};
MinMaxSqResult min_max_squared_distance(std::span<const Vec> points,
                                        std::span<const double> offsets,
                                        double gap_tol = 1e-10,
                                        int max_iterations = 200000);

}  // namespace upcap
