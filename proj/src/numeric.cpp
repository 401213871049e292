#include "upcap/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace upcap {

namespace {

// Continued fraction for the incomplete beta function (Numerical Recipes
// style modified Lentz iteration).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 400;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("betainc: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     beta_continued_fraction(b, a, 1.0 - x) / b;
}

BinomialCi clopper_pearson(std::int64_t successes, std::int64_t trials, double level) {
    if (trials <= 0) throw std::invalid_argument("clopper_pearson: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("clopper_pearson: successes out of range");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("clopper_pearson: level must be in (0,1)");

    const double alpha = 1.0 - level;
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);

    // Quantiles of Beta(k, n-k+1) and Beta(k+1, n-k) found by bisection on
    // the monotone regularized incomplete beta.
    auto beta_quantile = [](double a, double b, double q) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (regularized_incomplete_beta(a, b, mid) < q) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    BinomialCi ci;
    ci.lo = (successes == 0) ? 0.0 : beta_quantile(k, n - k + 1.0, alpha / 2.0);
    ci.hi = (successes == trials) ? 1.0 : beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0);
    return ci;
}

double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("golden_section_minimize: empty interval");
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f,
                            double a, double m, double b,
                            double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw std::runtime_error("adaptive_simpson: depth limit reached before tolerance");
    }
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace upcap
