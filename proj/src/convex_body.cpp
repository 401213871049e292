#include "upcap/convex_body.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace upcap {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

ConvexBody ConvexBody::interval(Vec lo, Vec hi) {
    if (lo.size() == 0 || lo.size() != hi.size())
        throw std::invalid_argument("interval: lo/hi must be nonempty and equal-sized");
    for (int i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i]))
            throw std::invalid_argument("interval: lo must be <= hi componentwise");
    }
    ConvexBody b;
    b.kind_ = Kind::Interval;
    b.dim_ = static_cast<int>(lo.size());
    b.lo_ = std::move(lo);
    b.hi_ = std::move(hi);
    return b;
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
    if (center.size() == 0) throw std::invalid_argument("ball: center must be nonempty");
    if (!(radius >= 0.0)) throw std::invalid_argument("ball: radius must be >= 0");
    ConvexBody b;
    b.kind_ = Kind::Ball;
    b.dim_ = static_cast<int>(center.size());
    b.center_ = std::move(center);
    b.radius_ = radius;
    return b;
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("polytope: vertex list must be nonempty");
    const int d = static_cast<int>(vertices.front().size());
    if (d == 0) throw std::invalid_argument("polytope: vertices must be nonempty vectors");
    for (const auto& v : vertices) {
        if (v.size() != d) throw std::invalid_argument("polytope: inconsistent vertex dimensions");
    }
    ConvexBody b;
    b.kind_ = Kind::Polytope;
    b.dim_ = d;
    b.vertices_ = std::move(vertices);
    return b;
}

void ConvexBody::check_dim(const Vec& v) const {
    if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
}

double ConvexBody::support(const Vec& direction) const {
    check_dim(direction);
    switch (kind_) {
        case Kind::Interval: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i)
                s += std::max(lo_[i] * direction[i], hi_[i] * direction[i]);
            return s;
        }
        case Kind::Ball:
            return center_.dot(direction) + radius_ * direction.norm();
        case Kind::Polytope: {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& v : vertices_) best = std::max(best, v.dot(direction));
            return best;
        }
    }
    return 0.0;
}

Vec ConvexBody::support_point(const Vec& direction) const {
    check_dim(direction);
    switch (kind_) {
        case Kind::Interval: {
            Vec p(dim_);
            for (int i = 0; i < dim_; ++i) {
                if (direction[i] > 0.0) p[i] = hi_[i];
                else if (direction[i] < 0.0) p[i] = lo_[i];
                else p[i] = 0.5 * (lo_[i] + hi_[i]);
            }
            return p;
        }
        case Kind::Ball: {
            const double norm = direction.norm();
            if (norm == 0.0) return center_;
            return center_ + (radius_ / norm) * direction;
        }
        case Kind::Polytope: {
            std::size_t best = 0;
            double best_val = vertices_[0].dot(direction);
            for (std::size_t i = 1; i < vertices_.size(); ++i) {
                const double val = vertices_[i].dot(direction);
                if (val > best_val) {
                    best_val = val;
                    best = i;
                }
            }
            return vertices_[best];
        }
    }
    return Vec();
}

namespace {

// Wolfe's min-norm-point iteration over conv{w_1..w_m}. Returns the point of
// minimum Euclidean norm; stops when the variational inequality
// <z, w_j> >= |z|^2 - tol holds for every j.
Vec min_norm_point(const std::vector<Vec>& w, double tol, int iteration_cap) {
    const int d = static_cast<int>(w.front().size());
    const std::size_t m = w.size();

    // Start from the shortest input point.
    std::size_t start = 0;
    double best_sq = w[0].squaredNorm();
    for (std::size_t i = 1; i < m; ++i) {
        const double sq = w[i].squaredNorm();
        if (sq < best_sq) {
            best_sq = sq;
            start = i;
        }
    }

    std::vector<std::size_t> corral{start};
    std::vector<double> weights{1.0};
    Vec z = w[start];

    auto solve_affine = [&](const std::vector<std::size_t>& s) {
        // Minimize |W a|^2 subject to sum(a) = 1 via the bordered KKT system.
        const int k = static_cast<int>(s.size());
        Eigen::MatrixXd gram(k + 1, k + 1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) gram(i, j) = 2.0 * w[s[i]].dot(w[s[j]]);
        for (int i = 0; i < k; ++i) {
            gram(i, k) = 1.0;
            gram(k, i) = 1.0;
        }
        gram(k, k) = 0.0;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        rhs[k] = 1.0;
        Eigen::VectorXd sol = gram.completeOrthogonalDecomposition().solve(rhs);
        return std::vector<double>(sol.data(), sol.data() + k);
    };

    double residual = 0.0;
    for (int iter = 0; iter < iteration_cap; ++iter) {
        // Optimality check over all points.
        const double z_sq = z.squaredNorm();
        double min_inner = std::numeric_limits<double>::infinity();
        std::size_t entering = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const double inner = z.dot(w[j]);
            if (inner < min_inner) {
                min_inner = inner;
                entering = j;
            }
        }
        residual = z_sq - min_inner;
        if (residual <= tol || z_sq <= tol * tol) return z;

        if (std::find(corral.begin(), corral.end(), entering) == corral.end()) {
            corral.push_back(entering);
            weights.push_back(0.0);
        }

        // Minor cycle: move to the affine minimizer, dropping vertices whose
        // weight would cross zero.
        for (int minor = 0; minor <= static_cast<int>(m) + 1; ++minor) {
            std::vector<double> affine = solve_affine(corral);
            bool feasible = true;
            for (double a : affine)
                if (a < -1e-12) feasible = false;
            if (feasible) {
                weights = std::move(affine);
                break;
            }
            double step = 1.0;
            for (std::size_t i = 0; i < corral.size(); ++i) {
                if (affine[i] < weights[i]) {
                    step = std::min(step, weights[i] / (weights[i] - affine[i]));
                }
            }
            for (std::size_t i = 0; i < corral.size(); ++i)
                weights[i] += step * (affine[i] - weights[i]);
            std::vector<std::size_t> next_corral;
            std::vector<double> next_weights;
            for (std::size_t i = 0; i < corral.size(); ++i) {
                if (weights[i] > 1e-12) {
                    next_corral.push_back(corral[i]);
                    next_weights.push_back(weights[i]);
                }
            }
            corral = std::move(next_corral);
            weights = std::move(next_weights);
        }
        z = Vec::Zero(d);
        for (std::size_t i = 0; i < corral.size(); ++i) z += weights[i] * w[corral[i]];
    }

    std::ostringstream msg;
    msg << "polytope projection did not converge within " << iteration_cap
        << " iterations (variational residual " << residual << ")";
    throw std::runtime_error(msg.str());
}

}  // namespace

Vec ConvexBody::project(const Vec& x, double tol) const {
    check_dim(x);
    switch (kind_) {
        case Kind::Interval: {
            Vec p(dim_);
            for (int i = 0; i < dim_; ++i) p[i] = std::clamp(x[i], lo_[i], hi_[i]);
            return p;
        }
        case Kind::Ball: {
            const Vec delta = x - center_;
            const double norm = delta.norm();
            if (norm <= radius_) return x;
            return center_ + (radius_ / norm) * delta;
        }
        case Kind::Polytope: {
            std::vector<Vec> shifted;
            shifted.reserve(vertices_.size());
            for (const auto& v : vertices_) shifted.push_back(v - x);
            const int cap = 10 * static_cast<int>(vertices_.size()) * dim_ + 10;
            return x + min_norm_point(shifted, tol, cap);
        }
    }
    return Vec();
}

double ConvexBody::distance(const Vec& x, double tol) const {
    check_dim(x);
    switch (kind_) {
        case Kind::Interval: {
            double sq = 0.0;
            for (int i = 0; i < dim_; ++i) {
                const double gap = std::max({lo_[i] - x[i], x[i] - hi_[i], 0.0});
                sq += gap * gap;
            }
            return std::sqrt(sq);
        }
        case Kind::Ball:
            return std::max((x - center_).norm() - radius_, 0.0);
        case Kind::Polytope:
            return (x - project(x, tol)).norm();
    }
    return 0.0;
}

bool ConvexBody::contains(const Vec& x, double tol) const {
    return distance(x) <= tol;
}

double ConvexBody::circumradius() const {
    switch (kind_) {
        case Kind::Interval:
            return 0.5 * (hi_ - lo_).norm();
        case Kind::Ball:
            return radius_;
        case Kind::Polytope: {
            const std::vector<double> zeros(vertices_.size(), 0.0);
            const auto meb = min_max_squared_distance(vertices_, zeros);
            return std::sqrt(std::max(meb.value, 0.0));
        }
    }
    return 0.0;
}

double ConvexBody::norm_bound() const {
    switch (kind_) {
        case Kind::Interval: {
            double sq = 0.0;
            for (int i = 0; i < dim_; ++i) sq += std::max(lo_[i] * lo_[i], hi_[i] * hi_[i]);
            return std::sqrt(sq);
        }
        case Kind::Ball:
            return center_.norm() + radius_;
        case Kind::Polytope: {
            double best = 0.0;
            for (const auto& v : vertices_) best = std::max(best, v.norm());
            return best;
        }
    }
    return 0.0;
}

const Vec& ConvexBody::lower() const {
    if (kind_ != Kind::Interval) throw std::logic_error("lower(): not an interval");
    return lo_;
}
const Vec& ConvexBody::upper() const {
    if (kind_ != Kind::Interval) throw std::logic_error("upper(): not an interval");
    return hi_;
}
const Vec& ConvexBody::center() const {
    if (kind_ != Kind::Ball) throw std::logic_error("center(): not a ball");
    return center_;
}
double ConvexBody::radius() const {
    if (kind_ != Kind::Ball) throw std::logic_error("radius(): not a ball");
    return radius_;
}
const std::vector<Vec>& ConvexBody::vertices() const {
    if (kind_ != Kind::Polytope) throw std::logic_error("vertices(): not a polytope");
    return vertices_;
}

namespace {

// Drops points that lie in the convex hull of the remaining ones. Quadratic
// in the point count, so only applied to small sets; interior points are
// harmless for support/distance either way.
std::vector<Vec> prune_to_extreme_points(std::vector<Vec> points) {
    if (points.size() <= 2 || points.size() > 256) return points;
    std::vector<Vec> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> others;
        others.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        const ConvexBody hull = ConvexBody::polytope(std::move(others));
        if (hull.distance(points[i]) > 1e-10) kept.push_back(points[i]);
    }
    return kept.empty() ? points : kept;
}

}  // namespace

ConvexBody minkowski_average(std::span<const ConvexBody> bodies,
                             std::uint64_t vertex_combination_cap) {
    if (bodies.empty()) throw std::invalid_argument("minkowski_average: empty body list");
    const int d = bodies.front().dim();
    const ConvexBody::Kind kind = bodies.front().kind();
    for (const auto& b : bodies) {
        if (b.dim() != d) throw std::invalid_argument("minkowski_average: dimension mismatch");
        if (b.kind() != kind)
            throw std::invalid_argument("minkowski_average: mixed shape kinds are not supported");
    }
    const double n = static_cast<double>(bodies.size());

    switch (kind) {
        case ConvexBody::Kind::Interval: {
            Vec lo = Vec::Zero(d), hi = Vec::Zero(d);
            for (const auto& b : bodies) {
                lo += b.lower();
                hi += b.upper();
            }
            return ConvexBody::interval(lo / n, hi / n);
        }
        case ConvexBody::Kind::Ball: {
            Vec center = Vec::Zero(d);
            double radius = 0.0;
            for (const auto& b : bodies) {
                center += b.center();
                radius += b.radius();
            }
            return ConvexBody::ball(center / n, radius / n);
        }
        case ConvexBody::Kind::Polytope: {
            std::uint64_t combos = 1;
            for (const auto& b : bodies) {
                const std::uint64_t count = b.vertices().size();
                if (combos > vertex_combination_cap / count) {
                    throw std::invalid_argument(
                        "minkowski_average: vertex combination count exceeds cap");
                }
                combos *= count;
            }
            std::vector<Vec> sums;
            sums.reserve(combos);
            std::vector<std::size_t> pick(bodies.size(), 0);
            for (;;) {
                Vec s = Vec::Zero(d);
                for (std::size_t i = 0; i < bodies.size(); ++i)
                    s += bodies[i].vertices()[pick[i]];
                sums.push_back(s / n);
                std::size_t level = 0;
                while (level < bodies.size()) {
                    if (++pick[level] < bodies[level].vertices().size()) break;
                    pick[level] = 0;
                    ++level;
                }
                if (level == bodies.size()) break;
            }
            std::sort(sums.begin(), sums.end(), lex_less);
            sums.erase(std::unique(sums.begin(), sums.end(),
                                   [](const Vec& a, const Vec& b) { return a == b; }),
                       sums.end());
            return ConvexBody::polytope(prune_to_extreme_points(std::move(sums)));
        }
    }
    throw std::logic_error("minkowski_average: unreachable");
}

MinMaxSqResult min_max_squared_distance(std::span<const Vec> points,
                                        std::span<const double> offsets,
                                        double gap_tol, int max_iterations) {
    if (points.empty()) throw std::invalid_argument("min_max_squared_distance: no points");
    if (offsets.size() != points.size())
        throw std::invalid_argument("min_max_squared_distance: offsets size mismatch");
    const std::size_t m = points.size();
    const int d = static_cast<int>(points.front().size());

    std::vector<double> norm_sq(m);
    for (std::size_t i = 0; i < m; ++i) norm_sq[i] = points[i].squaredNorm();

    // Dual objective over the simplex: g(w) = sum w_i (|p_i|^2 + off_i) - |c|^2
    // with c = sum w_i p_i; away-step Frank-Wolfe with exact line search.
    std::vector<double> weight(m, 0.0);
    weight[0] = 1.0;
    Vec c = points[0];
    double lin = norm_sq[0] + offsets[0];  // sum w_i (|p_i|^2 + off_i)

    auto grad = [&](std::size_t i) { return norm_sq[i] + offsets[i] - 2.0 * c.dot(points[i]); };

    double gap = 0.0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::size_t fw = 0, away = 0;
        double fw_val = -std::numeric_limits<double>::infinity();
        double away_val = std::numeric_limits<double>::infinity();
        double avg = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double gi = grad(i);
            if (gi > fw_val) {
                fw_val = gi;
                fw = i;
            }
            if (weight[i] > 0.0) {
                avg += weight[i] * gi;
                if (gi < away_val) {
                    away_val = gi;
                    away = i;
                }
            }
        }
        gap = fw_val - avg;
        const double scale = std::max(1.0, std::fabs(lin - c.squaredNorm()));
        if (gap <= gap_tol * scale) break;

        // Step along e_fw - w (toward) or w - e_away (away); both keep the
        // weights on the simplex for gamma in [0, gamma_max].
        const bool use_fw = (fw_val - avg) >= (avg - away_val);
        Vec u;
        double a_lin, gamma_max, dir_grad;
        if (use_fw) {
            u = points[fw] - c;
            a_lin = norm_sq[fw] + offsets[fw] - lin;
            gamma_max = 1.0;
            dir_grad = fw_val - avg;
        } else {
            u = c - points[away];
            a_lin = lin - (norm_sq[away] + offsets[away]);
            if (weight[away] >= 1.0) break;
            gamma_max = weight[away] / (1.0 - weight[away]);
            dir_grad = avg - away_val;
        }
        const double curvature = u.squaredNorm();
        double gamma = gamma_max;
        if (curvature > 0.0) gamma = std::min(gamma_max, dir_grad / (2.0 * curvature));
        if (gamma <= 0.0) break;

        if (use_fw) {
            for (auto& wgt : weight) wgt *= (1.0 - gamma);
            weight[fw] += gamma;
        } else {
            for (auto& wgt : weight) wgt *= (1.0 + gamma);
            weight[away] -= gamma;
            if (weight[away] < 1e-15) weight[away] = 0.0;
        }
        c += gamma * u;
        lin += gamma * a_lin;

        // Periodically rebuild the running sums from the weights to keep
        // floating-point drift out of the gap certificate.
        if ((iter & 0xFFF) == 0xFFF) {
            double total = 0.0;
            for (double wgt : weight) total += wgt;
            c = Vec::Zero(d);
            lin = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (weight[i] > 0.0) {
                    weight[i] /= total;
                    c += weight[i] * points[i];
                    lin += weight[i] * (norm_sq[i] + offsets[i]);
                }
            }
        }
    }

    MinMaxSqResult result;
    result.center = c;
    double value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
        value = std::max(value, (c - points[i]).squaredNorm() + offsets[i]);
    result.value = value;
    result.gap = gap;
    return result;
}

}  // namespace upcap
