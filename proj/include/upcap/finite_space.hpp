#pragma once

#include "upcap/convex_body.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace upcap {

class RngStream;

// A fully enumerable sublinear-expectation space: n coordinates, each with a
// finite support in R^d, and finitely many extreme product measures. The
// upper expectation is the max over extremes, which is exact because linear
// functionals attain their supremum over a convex hull at extreme points.
//
// Atom enumeration is capped at 10^6 product atoms; constructors and
// enumerating operations throw when the cap is exceeded.
class FiniteSpace {
public:
    // supports[i][j] is the j-th support point of coordinate i;
    // extremes[e][i][j] is the probability the e-th extreme measure puts on it.
    FiniteSpace(int dim,
                std::vector<std::vector<Vec>> supports,
                std::vector<std::vector<std::vector<double>>> extremes,
                std::string name = "");

    int n() const { return static_cast<int>(supports_.size()); }
    int dim() const { return dim_; }
    std::size_t extreme_count() const { return extremes_.size(); }
    const std::string& name() const { return name_; }
    const std::vector<std::vector<Vec>>& supports() const { return supports_; }
    const std::vector<std::vector<std::vector<double>>>& extremes() const { return extremes_; }

    // Almost-sure bound M = max |support point|.
    double bound() const { return bound_; }
    std::int64_t atom_count() const { return atom_count_; }

    // f receives the full atom (one point per coordinate).
    using AtomFn = std::function<double(std::span<const Vec>)>;

    double expectation_under(std::size_t extreme, const AtomFn& f) const;
    // sup over the prior set; exact max over extremes.
    double upper_expectation(const AtomFn& f) const;

    // --- independence (pairwise factorization identity) ------------------

    // A test function psi(x_1..x_i, x_{i+1}) receiving the flattened history
    // and the next coordinate.
    using PairTestFn = std::function<double(std::span<const Vec>, const Vec&)>;

    struct IndependenceReport {
        double max_discrepancy = 0.0;
        int worst_coordinate = -1;  // the i of the worst (i, i+1) split
        int worst_function = -1;
    };
    // Evaluates both sides of the factorization identity for every split i
    // and every test function by full enumeration.
    IndependenceReport check_independence(std::span<const PairTestFn> tests) const;

    // Battery of bounded test functions, including coupling-sensitive ones.
    static std::vector<PairTestFn> default_independence_tests();

    // --- expectation sets -------------------------------------------------

    // Hull of the extreme-point means of coordinate i.
    ConvexBody exact_mean_set(int i) const;
    // Max over probe directions of |support(exact_mean_set) - upper
    // expectation of the linear functional|; both routes are enumerated.
    double mean_set_support_consistency(int i, int probe_directions = 64) const;
    // Minkowski average of the n exact mean sets.
    ConvexBody exact_mean_set_average() const;

    // --- conditional domination -------------------------------------------

    struct DominationReport {
        double max_violation = 0.0;  // max over (extreme, i, history, test fn)
        std::int64_t checks = 0;
    };
    // For every extreme, coordinate, positive-probability history atom and a
    // family of test functions (including x -> |x - theta|^2 on a grid over
    // the mean set), compares the exact conditional expectation computed from
    // the joint against the upper expectation of the same function.
    DominationReport conditional_domination_report(int theta_grid_points = 9) const;

    // --- moment inequality --------------------------------------------------

    struct MomentReport {
        double lhs = 0.0;  // upper expectation of squared distance of the mean
        double rhs = 0.0;  // variance proxy / n
        double slack = 0.0;
        bool holds = false;
        double variance_proxy = 0.0;
    };
    MomentReport moment_inequality_report() const;

    // sup_i inf_theta max over extremes of E|X_i - theta|^2, computed exactly
    // for d = 1 by candidate enumeration (parabola vertices, pairwise
    // crossings, interval endpoints) and by the certified min-max solver for
    // d >= 2.
    double variance_proxy_exact() const;

    // One draw of coordinate i under the given extreme (inverse-CDF lookup).
    Vec sample_coordinate(std::size_t extreme, int i, RngStream& rng) const;

private:
    int dim_;
    std::vector<std::vector<Vec>> supports_;
    std::vector<std::vector<std::vector<double>>> extremes_;
    std::string name_;
    double bound_ = 0.0;
    std::int64_t atom_count_ = 0;

    void for_each_atom(int prefix_len,
                       const std::function<void(std::span<const std::size_t>)>& fn) const;
    double prefix_probability(std::size_t extreme, std::span<const std::size_t> atom,
                              int prefix_len) const;
};

}  // namespace upcap
