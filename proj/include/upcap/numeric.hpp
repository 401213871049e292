#pragma once

#include <cstdint>
#include <functional>

namespace upcap {

// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
// Continued-fraction evaluation (Lentz), accurate to ~1e-14.
double regularized_incomplete_beta(double a, double b, double x);

struct BinomialCi {
    double lo;
    double hi;
};

// Exact two-sided Clopper-Pearson interval for `successes` out of `trials`
// at the given confidence level (e.g. 0.99).
BinomialCi clopper_pearson(std::int64_t successes, std::int64_t trials, double level);

// Minimizes a unimodal function on [lo, hi]; returns the abscissa of the
// minimum located to within `tol`.
double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol);

// Adaptive Simpson quadrature with an absolute error target. Throws
// std::runtime_error if the recursion depth limit is reached before the
// target is met.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double abs_tol, int max_depth = 48);

}  // namespace upcap
