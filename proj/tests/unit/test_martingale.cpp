#include "upcap/martingale.hpp"

#include <doctest.h>

#include <cmath>

using namespace upcap;

namespace {

PriorPoint constant_prior(int n, double mu) {
    PriorPoint p;
    p.shifts = Eigen::MatrixXd::Constant(1, n, mu);
    return p;
}

Vec scalar(double x) {
    Vec v(1);
    v << x;
    return v;
}

}  // namespace

TEST_CASE("centering removes the shift") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 3);
    const PriorPoint prior = constant_prior(3, 1.0);

    const std::vector<Vec> exact{scalar(1.0), scalar(1.0), scalar(1.0)};
    const ReducedSample at_mean = reduce(family, prior, exact);
    for (const auto& y : at_mean.y) CHECK(y.norm() == doctest::Approx(0.0));
    for (const auto& theta : at_mean.conditional_means) CHECK(theta[0] == doctest::Approx(1.0));

    const std::vector<Vec> shifted{scalar(1.3), scalar(0.9), scalar(1.1)};
    const ReducedSample reduced = reduce(family, prior, shifted);
    CHECK(reduced.y[0][0] == doctest::Approx(0.3));
    CHECK(reduced.y[1][0] == doctest::Approx(-0.1));
    CHECK(reduced.bound == doctest::Approx(1.5));
}

TEST_CASE("residuals are mean zero and within the variance proxy") {
    const int n = 8;
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, n);
    PriorPoint prior;
    prior.shifts.resize(1, n);
    for (int i = 0; i < n; ++i) prior.shifts(0, i) = (i % 2 == 0) ? 1.0 : -1.0;

    const std::int64_t reps = 125000;  // one million residuals
    RngStream rng(31337, 0, 0);
    std::vector<double> flat(n);
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        family.sample_into(prior, rng, flat.data());
        for (int i = 0; i < n; ++i) {
            const double y = flat[i] - prior.shifts(0, i);
            CHECK(std::fabs(y) <= 2.0 * family.bound());
            sum[i] += y;
            sum_sq[i] += y * y;
        }
    }
    const double sd = 0.5 / std::sqrt(3.0);
    const double se_mean = sd / std::sqrt(static_cast<double>(reps));
    const double second_moment = sd * sd;
    const double se_second = second_moment * std::sqrt(9.0 / 5.0 - 1.0) /
                             std::sqrt(static_cast<double>(reps));
    for (int i = 0; i < n; ++i) {
        CHECK(std::fabs(sum[i] / reps) <= 4.0 * se_mean);
        CHECK(sum_sq[i] / reps <= family.variance_proxy() + 4.0 * se_second);
    }
}

TEST_CASE("range violations are rejected") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 2);
    const PriorPoint prior = constant_prior(2, 1.0);
    const std::vector<Vec> tampered{scalar(9.0), scalar(1.0)};
    CHECK_THROWS_AS(reduce(family, prior, tampered), std::logic_error);

    const std::vector<Vec> short_batch{scalar(1.0)};
    CHECK_THROWS_AS(reduce(family, prior, short_batch), std::invalid_argument);

    const auto discrete_like = PriorFamily::uniform_shift(1.0, 0.5, 2);
    CHECK_THROWS_AS(reduce(discrete_like, constant_prior(2, 2.0), tampered),
                    std::invalid_argument);
}

TEST_CASE("reduction bound holds on sampled batches") {
    const int n = 4;
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, n);
    const ConvexBody theta = family.mean_set_average();
    const PriorPoint prior = constant_prior(n, 1.0);

    RngStream rng(777, 0, 0);
    std::vector<double> flat(n);
    for (int trial = 0; trial < 100000; ++trial) {
        family.sample_into(prior, rng, flat.data());
        std::vector<Vec> batch;
        batch.reserve(n);
        for (int i = 0; i < n; ++i) batch.push_back(scalar(flat[i]));
        CHECK(reduction_bound_holds(reduce(family, prior, batch), theta));
    }
}

TEST_CASE("reduction bound is tight at the boundary prior") {
    const int n = 3;
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, n);
    const ConvexBody theta = family.mean_set_average();
    const PriorPoint prior = constant_prior(n, 1.0);

    const double delta = 0.25;
    const std::vector<Vec> batch{scalar(1.0 + delta), scalar(1.0 + delta), scalar(1.0 + delta)};
    const ReducedSample reduced = reduce(family, prior, batch);

    Vec x_mean = scalar(1.0 + delta);
    Vec y_mean = scalar(delta);
    CHECK(theta.distance(x_mean) == doctest::Approx(y_mean.norm()).epsilon(1e-12));
    CHECK(reduction_bound_holds(reduced, theta));
}

TEST_CASE("freedman tail closed form") {
    CHECK(freedman_tail(1e-9, 1000, 0.25, 1.0) == doctest::Approx(1.0));
    CHECK(freedman_tail(250.0, 1000, 0.25, 1.0) ==
          doctest::Approx(2.678636961808078e-33).epsilon(1e-12));

    // Strictly decreasing in s, increasing in sigma^2 and M.
    double previous = 2.0;
    for (double s : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double value = freedman_tail(s, 100, 0.5, 1.0);
        CHECK(value < previous);
        previous = value;
    }
    CHECK(freedman_tail(5.0, 100, 0.5, 1.0) < freedman_tail(5.0, 100, 0.9, 1.0));
    CHECK(freedman_tail(5.0, 100, 0.5, 1.0) < freedman_tail(5.0, 100, 0.5, 2.0));

    CHECK_THROWS_AS(freedman_tail(0.0, 10, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(freedman_tail(-1.0, 10, 0.1, 1.0), std::invalid_argument);
}
