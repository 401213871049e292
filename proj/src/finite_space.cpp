#include "upcap/finite_space.hpp"

#include "upcap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace upcap {

namespace {

constexpr std::int64_t kAtomCap = 1'000'000;

}  // namespace

FiniteSpace::FiniteSpace(int dim,
                         std::vector<std::vector<Vec>> supports,
                         std::vector<std::vector<std::vector<double>>> extremes,
                         std::string name)
    : dim_(dim), supports_(std::move(supports)), extremes_(std::move(extremes)),
      name_(std::move(name)) {
    if (dim_ < 1) throw std::invalid_argument("FiniteSpace: dim must be >= 1");
    if (supports_.empty()) throw std::invalid_argument("FiniteSpace: no coordinates");
    if (extremes_.empty()) throw std::invalid_argument("FiniteSpace: no extreme measures");

    atom_count_ = 1;
    for (const auto& support : supports_) {
        if (support.empty()) throw std::invalid_argument("FiniteSpace: empty support");
        for (const auto& point : support) {
            if (point.size() != dim_)
                throw std::invalid_argument("FiniteSpace: support point dimension mismatch");
            bound_ = std::max(bound_, point.norm());
        }
        if (atom_count_ > kAtomCap / static_cast<std::int64_t>(support.size()))
            throw std::invalid_argument("FiniteSpace: atom count exceeds cap");
        atom_count_ *= static_cast<std::int64_t>(support.size());
    }

    for (const auto& extreme : extremes_) {
        if (extreme.size() != supports_.size())
            throw std::invalid_argument("FiniteSpace: extreme measure coordinate count mismatch");
        for (std::size_t i = 0; i < extreme.size(); ++i) {
            if (extreme[i].size() != supports_[i].size())
                throw std::invalid_argument("FiniteSpace: probability vector length mismatch");
            double total = 0.0;
            for (double p : extreme[i]) {
                if (p < 0.0) throw std::invalid_argument("FiniteSpace: negative probability");
                total += p;
            }
            if (std::fabs(total - 1.0) > 1e-12)
                throw std::invalid_argument("FiniteSpace: probabilities do not sum to 1");
        }
    }
}

void FiniteSpace::for_each_atom(
    int prefix_len, const std::function<void(std::span<const std::size_t>)>& fn) const {
    std::vector<std::size_t> index(prefix_len, 0);
    if (prefix_len == 0) {
        fn(index);
        return;
    }
    for (;;) {
        fn(index);
        int level = prefix_len - 1;
        while (level >= 0) {
            if (++index[level] < supports_[level].size()) break;
            index[level] = 0;
            --level;
        }
        if (level < 0) break;
    }
}

double FiniteSpace::prefix_probability(std::size_t extreme, std::span<const std::size_t> atom,
                                       int prefix_len) const {
    double p = 1.0;
    for (int i = 0; i < prefix_len; ++i) p *= extremes_[extreme][i][atom[i]];
    return p;
}

double FiniteSpace::expectation_under(std::size_t extreme, const AtomFn& f) const {
    if (extreme >= extremes_.size())
        throw std::invalid_argument("expectation_under: extreme index out of range");
    double total = 0.0;
    std::vector<Vec> atom_points(supports_.size());
    for_each_atom(n(), [&](std::span<const std::size_t> atom) {
        const double p = prefix_probability(extreme, atom, n());
        if (p == 0.0) return;
        for (int i = 0; i < n(); ++i) atom_points[i] = supports_[i][atom[i]];
        total += p * f(atom_points);
    });
    return total;
}

double FiniteSpace::upper_expectation(const AtomFn& f) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < extremes_.size(); ++e)
        best = std::max(best, expectation_under(e, f));
    return best;
}

FiniteSpace::IndependenceReport
FiniteSpace::check_independence(std::span<const PairTestFn> tests) const {
    IndependenceReport report;
    std::vector<Vec> history;
    for (int split = 1; split <= n() - 1; ++split) {
        for (std::size_t fn = 0; fn < tests.size(); ++fn) {
            const auto& psi = tests[fn];

            // Inner upper expectation of psi(x, X_{split}) as a function of
            // the history atom x; the marginal set is the extremes' marginals.
            auto inner = [&](std::span<const Vec> x) {
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& extreme : extremes_) {
                    double value = 0.0;
                    for (std::size_t j = 0; j < supports_[split].size(); ++j)
                        value += extreme[split][j] * psi(x, supports_[split][j]);
                    best = std::max(best, value);
                }
                return best;
            };

            double lhs = -std::numeric_limits<double>::infinity();
            double rhs = -std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < extremes_.size(); ++e) {
                double lhs_e = 0.0;
                double rhs_e = 0.0;
                history.assign(split, Vec());
                for_each_atom(split, [&](std::span<const std::size_t> atom) {
                    const double p = prefix_probability(e, atom, split);
                    if (p == 0.0) return;
                    for (int i = 0; i < split; ++i) history[i] = supports_[i][atom[i]];
                    double joint = 0.0;
                    for (std::size_t j = 0; j < supports_[split].size(); ++j)
                        joint += extremes_[e][split][j] * psi(history, supports_[split][j]);
                    lhs_e += p * joint;
                    rhs_e += p * inner(history);
                });
                lhs = std::max(lhs, lhs_e);
                rhs = std::max(rhs, rhs_e);
            }
            const double discrepancy = std::fabs(lhs - rhs);
            if (discrepancy > report.max_discrepancy) {
                report.max_discrepancy = discrepancy;
                report.worst_coordinate = split;
                report.worst_function = static_cast<int>(fn);
            }
        }
    }
    return report;
}

std::vector<FiniteSpace::PairTestFn> FiniteSpace::default_independence_tests() {
    auto history_mean = [](std::span<const Vec> x) {
        Vec mean = Vec::Zero(x.front().size());
        for (const auto& v : x) mean += v;
        return Vec(mean / static_cast<double>(x.size()));
    };
    std::vector<PairTestFn> tests;
    tests.push_back([](std::span<const Vec>, const Vec& y) { return y.sum(); });
    tests.push_back([](std::span<const Vec>, const Vec& y) { return y.squaredNorm(); });
    tests.push_back([](std::span<const Vec>, const Vec& y) { return y.norm(); });
    tests.push_back([history_mean](std::span<const Vec> x, const Vec& y) {
        return history_mean(x).dot(y);
    });
    tests.push_back([history_mean](std::span<const Vec> x, const Vec& y) {
        return (history_mean(x) - y).sum();
    });
    tests.push_back([history_mean](std::span<const Vec> x, const Vec& y) {
        const double s = history_mean(x)[0] + y[0];
        return s * s;
    });
    return tests;
}

ConvexBody FiniteSpace::exact_mean_set(int i) const {
    if (i < 0 || i >= n()) throw std::invalid_argument("exact_mean_set: index out of range");
    std::vector<Vec> means;
    means.reserve(extremes_.size());
    for (const auto& extreme : extremes_) {
        Vec mean = Vec::Zero(dim_);
        for (std::size_t j = 0; j < supports_[i].size(); ++j)
            mean += extreme[i][j] * supports_[i][j];
        means.push_back(std::move(mean));
    }
    if (dim_ == 1) {
        double lo = means.front()[0], hi = lo;
        for (const auto& mean : means) {
            lo = std::min(lo, mean[0]);
            hi = std::max(hi, mean[0]);
        }
        Vec vlo(1), vhi(1);
        vlo << lo;
        vhi << hi;
        return ConvexBody::interval(vlo, vhi);
    }
    std::sort(means.begin(), means.end(), [](const Vec& a, const Vec& b) {
        for (int k = 0; k < a.size(); ++k) {
            if (a[k] < b[k]) return true;
            if (a[k] > b[k]) return false;
        }
        return false;
    });
    means.erase(std::unique(means.begin(), means.end(),
                            [](const Vec& a, const Vec& b) { return a == b; }),
                means.end());
    return ConvexBody::polytope(std::move(means));
}

double FiniteSpace::mean_set_support_consistency(int i, int probe_directions) const {
    const ConvexBody body = exact_mean_set(i);
    RngStream rng(0x9E37C0DEu, static_cast<std::uint32_t>(i), 7);
    double worst = 0.0;
    for (int probe = 0; probe < probe_directions; ++probe) {
        Vec direction(dim_);
        if (dim_ == 1) {
            direction[0] = (probe % 2 == 0) ? 1.0 : -1.0;
        } else {
            for (;;) {
                for (int k = 0; k < dim_; ++k) direction[k] = rng.next_gaussian();
                const double norm = direction.norm();
                if (norm > 1e-12) {
                    direction /= norm;
                    break;
                }
            }
        }
        // Route 1: the support function of the enumerated hull.
        const double hull_value = body.support(direction);
        // Route 2: the upper expectation of the linear functional.
        const double linear_value = [&] {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& extreme : extremes_) {
                double value = 0.0;
                for (std::size_t j = 0; j < supports_[i].size(); ++j)
                    value += extreme[i][j] * direction.dot(supports_[i][j]);
                best = std::max(best, value);
            }
            return best;
        }();
        worst = std::max(worst, std::fabs(hull_value - linear_value));
    }
    return worst;
}

ConvexBody FiniteSpace::exact_mean_set_average() const {
    std::vector<ConvexBody> sets;
    sets.reserve(n());
    for (int i = 0; i < n(); ++i) sets.push_back(exact_mean_set(i));
    return minkowski_average(sets);
}

FiniteSpace::DominationReport
FiniteSpace::conditional_domination_report(int theta_grid_points) const {
    DominationReport report;

    for (int i = 0; i < n(); ++i) {
        // Test functions: |x - theta|^2 over a grid on the mean set, plus a
        // small fixed battery.
        std::vector<std::function<double(const Vec&)>> tests;
        const ConvexBody mean_set = exact_mean_set(i);
        if (dim_ == 1) {
            const double lo = mean_set.lower()[0];
            const double hi = mean_set.upper()[0];
            for (int g = 0; g < theta_grid_points; ++g) {
                const double theta = theta_grid_points == 1
                                         ? lo
                                         : lo + (hi - lo) * g / (theta_grid_points - 1);
                tests.push_back([theta](const Vec& x) {
                    const double dx = x[0] - theta;
                    return dx * dx;
                });
            }
        } else {
            std::vector<Vec> thetas = mean_set.kind() == ConvexBody::Kind::Polytope
                                          ? mean_set.vertices()
                                          : std::vector<Vec>{mean_set.support_point(Vec::Zero(dim_))};
            for (const auto& theta : thetas)
                tests.push_back([theta](const Vec& x) { return (x - theta).squaredNorm(); });
        }
        tests.push_back([](const Vec& x) { return x.norm(); });
        tests.push_back([](const Vec& x) { return x.sum(); });
        tests.push_back([](const Vec& x) { return x.squaredNorm(); });

        for (const auto& phi : tests) {
            // Upper expectation of phi(X_i): marginal enumeration.
            double upper = -std::numeric_limits<double>::infinity();
            for (const auto& extreme : extremes_) {
                double value = 0.0;
                for (std::size_t j = 0; j < supports_[i].size(); ++j)
                    value += extreme[i][j] * phi(supports_[i][j]);
                upper = std::max(upper, value);
            }

            // Conditional expectations computed from the joint: accumulate
            // numerator and mass per history atom, then compare each bucket.
            for (std::size_t e = 0; e < extremes_.size(); ++e) {
                std::vector<double> numerator, mass;
                std::size_t history_count = 1;
                for (int k = 0; k < i; ++k) history_count *= supports_[k].size();
                numerator.assign(history_count, 0.0);
                mass.assign(history_count, 0.0);
                for_each_atom(i + 1, [&](std::span<const std::size_t> atom) {
                    const double p = prefix_probability(e, atom, i + 1);
                    if (p == 0.0) return;
                    std::size_t bucket = 0;
                    for (int k = 0; k < i; ++k)
                        bucket = bucket * supports_[k].size() + atom[k];
                    numerator[bucket] += p * phi(supports_[i][atom[i]]);
                    mass[bucket] += p;
                });
                for (std::size_t b = 0; b < history_count; ++b) {
                    if (mass[b] == 0.0) continue;
                    const double conditional = numerator[b] / mass[b];
                    report.max_violation = std::max(report.max_violation, conditional - upper);
                    ++report.checks;
                }
            }
        }
    }
    return report;
}

FiniteSpace::MomentReport FiniteSpace::moment_inequality_report() const {
    MomentReport report;
    const ConvexBody theta = exact_mean_set_average();
    const double inv_n = 1.0 / static_cast<double>(n());
    report.lhs = upper_expectation([&](std::span<const Vec> atom) {
        Vec mean = Vec::Zero(dim_);
        for (const auto& x : atom) mean += x;
        mean *= inv_n;
        const double rho = theta.distance(mean);
        return rho * rho;
    });
    report.variance_proxy = variance_proxy_exact();
    report.rhs = report.variance_proxy * inv_n;
    report.slack = report.rhs - report.lhs;
    report.holds = report.lhs <= report.rhs + 1e-12;
    return report;
}

double FiniteSpace::variance_proxy_exact() const {
    double worst = 0.0;
    for (int i = 0; i < n(); ++i) {
        // Per extreme: E|X_i - theta|^2 = |theta - mean_e|^2 + var_e.
        std::vector<Vec> means;
        std::vector<double> variances;
        for (const auto& extreme : extremes_) {
            Vec mean = Vec::Zero(dim_);
            double second = 0.0;
            for (std::size_t j = 0; j < supports_[i].size(); ++j) {
                mean += extreme[i][j] * supports_[i][j];
                second += extreme[i][j] * supports_[i][j].squaredNorm();
            }
            variances.push_back(second - mean.squaredNorm());
            means.push_back(std::move(mean));
        }

        double best;
        if (dim_ == 1) {
            // Exact 1-d minimization of F(theta) = max_e(var_e + (mean_e - theta)^2):
            // the minimizer is a parabola vertex, a pairwise crossing, or an
            // endpoint of the mean interval.
            std::vector<double> candidates;
            double lo = means.front()[0], hi = lo;
            for (const auto& mean : means) {
                lo = std::min(lo, mean[0]);
                hi = std::max(hi, mean[0]);
                candidates.push_back(mean[0]);
            }
            candidates.push_back(lo);
            candidates.push_back(hi);
            for (std::size_t a = 0; a < means.size(); ++a) {
                for (std::size_t b = a + 1; b < means.size(); ++b) {
                    const double ma = means[a][0], mb = means[b][0];
                    if (ma == mb) continue;
                    const double crossing =
                        (variances[a] - variances[b] + ma * ma - mb * mb) / (2.0 * (ma - mb));
                    candidates.push_back(std::clamp(crossing, lo, hi));
                }
            }
            best = std::numeric_limits<double>::infinity();
            for (double theta : candidates) {
                if (theta < lo || theta > hi) continue;
                double value = -std::numeric_limits<double>::infinity();
                for (std::size_t e = 0; e < means.size(); ++e) {
                    const double dx = means[e][0] - theta;
                    value = std::max(value, variances[e] + dx * dx);
                }
                best = std::min(best, value);
            }
        } else {
            const auto result = min_max_squared_distance(means, variances);
            best = result.value;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

Vec FiniteSpace::sample_coordinate(std::size_t extreme, int i, RngStream& rng) const {
    const double u = rng.next_unit();
    double cumulative = 0.0;
    const auto& pmf = extremes_[extreme][i];
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        cumulative += pmf[j];
        if (u < cumulative) return supports_[i][j];
    }
    return supports_[i].back();
}

}  // namespace upcap
