#include "upcap/priors.hpp"

#include "upcap/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace upcap {

PriorFamily PriorFamily::uniform_shift(double a, double r, int n) {
    if (!(a >= 0.0)) throw std::invalid_argument("uniform_shift: a must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("uniform_shift: r must be > 0");
    if (n < 1) throw std::invalid_argument("uniform_shift: n must be >= 1");
    PriorFamily f;
    f.kind_ = Kind::UniformShift;
    f.n_ = n;
    f.dim_ = 1;
    f.a_ = a;
    f.r_ = r;
    f.bound_ = a + r;
    return f;
}

PriorFamily PriorFamily::ball_shift(double r, int n, ConvexBody shift_set) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_shift: r must be > 0");
    if (n < 1) throw std::invalid_argument("ball_shift: n must be >= 1");
    if (shift_set.dim() < 2) throw std::invalid_argument("ball_shift: requires dim >= 2");
    PriorFamily f;
    f.kind_ = Kind::BallShift;
    f.n_ = n;
    f.dim_ = shift_set.dim();
    f.a_ = shift_set.norm_bound();
    f.r_ = r;
    f.bound_ = f.a_ + r;
    f.shift_set_ = std::move(shift_set);
    return f;
}

PriorFamily PriorFamily::discrete(std::shared_ptr<const FiniteSpace> space) {
    if (!space) throw std::invalid_argument("discrete: null space");
    PriorFamily f;
    f.kind_ = Kind::Discrete;
    f.n_ = space->n();
    f.dim_ = space->dim();
    f.bound_ = space->bound();
    f.space_ = std::move(space);
    return f;
}

bool PriorFamily::admissible(const PriorPoint& prior, double tol) const {
    switch (kind_) {
        case Kind::UniformShift: {
            if (prior.shifts.rows() != 1 || prior.shifts.cols() != n_) return false;
            for (int i = 0; i < n_; ++i)
                if (std::fabs(prior.shifts(0, i)) > a_ + tol) return false;
            return true;
        }
        case Kind::BallShift: {
            if (prior.shifts.rows() != dim_ || prior.shifts.cols() != n_) return false;
            for (int i = 0; i < n_; ++i)
                if (!shift_set_->contains(prior.shifts.col(i), tol)) return false;
            return true;
        }
        case Kind::Discrete:
            return prior.extreme >= 0 &&
                   static_cast<std::size_t>(prior.extreme) < space_->extreme_count();
    }
    return false;
}

ConvexBody PriorFamily::mean_set(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("mean_set: index out of range");
    switch (kind_) {
        case Kind::UniformShift: {
            Vec lo(1), hi(1);
            lo << -a_;
            hi << a_;
            return ConvexBody::interval(lo, hi);
        }
        case Kind::BallShift:
            return *shift_set_;
        case Kind::Discrete:
            return space_->exact_mean_set(i);
    }
    throw std::logic_error("mean_set: unreachable");
}

ConvexBody PriorFamily::mean_set_average() const {
    switch (kind_) {
        case Kind::UniformShift:
        case Kind::BallShift:
            // All coordinates share one convex mean set, and the Minkowski
            // average of n copies of a convex set is the set itself.
            return mean_set(0);
        case Kind::Discrete:
            return space_->exact_mean_set_average();
    }
    throw std::logic_error("mean_set_average: unreachable");
}

double PriorFamily::variance_proxy() const {
    switch (kind_) {
        case Kind::UniformShift: {
            // E|X - theta|^2 under Uniform[mu - r, mu + r] is
            // (mu - theta)^2 + r^2/3; the inner sup over mu in [-a, a] sits
            // at an endpoint. Golden-section refinement over theta.
            const double base = r_ * r_ / 3.0;
            auto objective = [&](double theta) {
                const double left = (-a_ - theta) * (-a_ - theta);
                const double right = (a_ - theta) * (a_ - theta);
                return std::max(left, right) + base;
            };
            if (a_ == 0.0) return base;
            const double theta = golden_section_minimize(objective, -a_, a_, 1e-8 * a_);
            return objective(theta);
        }
        case Kind::BallShift: {
            // E|X - theta|^2 under uniform on the radius-r ball at mu is
            // |mu - theta|^2 + d r^2 / (d + 2); the min-max over the shift
            // set is its squared circumradius.
            const double chebyshev = shift_set_->circumradius();
            return chebyshev * chebyshev + dim_ * r_ * r_ / (dim_ + 2.0);
        }
        case Kind::Discrete:
            return space_->variance_proxy_exact();
    }
    throw std::logic_error("variance_proxy: unreachable");
}

std::vector<PriorPoint> PriorFamily::corner_priors(const Vec& direction, int random_extras,
                                                   std::uint64_t seed) const {
    std::vector<PriorPoint> priors;
    switch (kind_) {
        case Kind::UniformShift: {
            if (a_ == 0.0) {
                PriorPoint origin;
                origin.shifts = Eigen::MatrixXd::Zero(1, n_);
                priors.push_back(std::move(origin));
                return priors;
            }
            const double sign = direction.size() > 0 && direction[0] < 0.0 ? -1.0 : 1.0;
            PriorPoint aligned, anti;
            aligned.shifts = Eigen::MatrixXd::Constant(1, n_, sign * a_);
            anti.shifts = Eigen::MatrixXd::Constant(1, n_, -sign * a_);
            priors.push_back(std::move(aligned));
            priors.push_back(std::move(anti));
            RngStream rng(seed, 0xC08EE5u, 0);
            for (int extra = 0; extra < random_extras; ++extra) {
                PriorPoint corner;
                corner.shifts.resize(1, n_);
                for (int i = 0; i < n_; ++i)
                    corner.shifts(0, i) = rng.next_unit() < 0.5 ? -a_ : a_;
                priors.push_back(std::move(corner));
            }
            return priors;
        }
        case Kind::BallShift: {
            Vec dir = direction;
            if (dir.size() != dim_) throw std::invalid_argument("corner_priors: dim mismatch");
            const Vec aligned_point = shift_set_->support_point(dir);
            const Vec anti_point = shift_set_->support_point(Vec(-dir));
            PriorPoint aligned, anti;
            aligned.shifts = aligned_point.replicate(1, n_);
            anti.shifts = anti_point.replicate(1, n_);
            priors.push_back(std::move(aligned));
            priors.push_back(std::move(anti));
            RngStream rng(seed, 0xC08EE5u, 1);
            for (int extra = 0; extra < random_extras; ++extra) {
                Vec random_dir(dim_);
                for (;;) {
                    for (int k = 0; k < dim_; ++k) random_dir[k] = rng.next_gaussian();
                    if (random_dir.norm() > 1e-12) break;
                }
                PriorPoint corner;
                corner.shifts = shift_set_->support_point(random_dir).replicate(1, n_);
                priors.push_back(std::move(corner));
            }
            return priors;
        }
        case Kind::Discrete: {
            priors.reserve(space_->extreme_count());
            for (std::size_t e = 0; e < space_->extreme_count(); ++e) {
                PriorPoint p;
                p.extreme = static_cast<int>(e);
                priors.push_back(std::move(p));
            }
            return priors;
        }
    }
    throw std::logic_error("corner_priors: unreachable");
}

void PriorFamily::sample_into(const PriorPoint& prior, RngStream& rng, double* out) const {
    switch (kind_) {
        case Kind::UniformShift: {
            for (int i = 0; i < n_; ++i) {
                const double mu = prior.shifts(0, i);
                const double x = mu + r_ * (2.0 * rng.next_unit() - 1.0);
                if (std::fabs(x) > bound_ + 1e-12)
                    throw std::logic_error("sample_into: draw exceeded the almost-sure bound");
                out[i] = x;
            }
            return;
        }
        case Kind::BallShift: {
            for (int i = 0; i < n_; ++i) {
                // Uniform on the ball: gaussian direction, radius r * U^(1/d).
                double norm_sq = 0.0;
                double* x = out + static_cast<std::ptrdiff_t>(i) * dim_;
                do {
                    norm_sq = 0.0;
                    for (int k = 0; k < dim_; ++k) {
                        x[k] = rng.next_gaussian();
                        norm_sq += x[k] * x[k];
                    }
                } while (norm_sq <= 1e-300);
                const double radius = r_ * std::pow(rng.next_unit(), 1.0 / dim_);
                const double scale = radius / std::sqrt(norm_sq);
                double total_sq = 0.0;
                for (int k = 0; k < dim_; ++k) {
                    x[k] = prior.shifts(k, i) + scale * x[k];
                    total_sq += x[k] * x[k];
                }
                if (total_sq > (bound_ + 1e-12) * (bound_ + 1e-12))
                    throw std::logic_error("sample_into: draw exceeded the almost-sure bound");
            }
            return;
        }
        case Kind::Discrete: {
            if (prior.extreme < 0) throw std::invalid_argument("sample_into: missing extreme index");
            for (int i = 0; i < n_; ++i) {
                const Vec x = space_->sample_coordinate(prior.extreme, i, rng);
                for (int k = 0; k < dim_; ++k) out[i * dim_ + k] = x[k];
            }
            return;
        }
    }
}

std::vector<Vec> PriorFamily::sample(const PriorPoint& prior, std::uint64_t seed) const {
    if (!admissible(prior)) throw std::invalid_argument("sample: inadmissible prior");
    std::vector<double> flat(static_cast<std::size_t>(n_) * dim_);
    RngStream rng(seed, 0, 0);
    sample_into(prior, rng, flat.data());
    std::vector<Vec> result(n_);
    for (int i = 0; i < n_; ++i) {
        result[i] = Eigen::Map<const Vec>(flat.data() + static_cast<std::ptrdiff_t>(i) * dim_, dim_);
    }
    return result;
}

}  // namespace upcap
