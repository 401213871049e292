#include "upcap/priors.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace upcap;

namespace {

Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

PriorPoint constant_prior(int n, double mu) {
    PriorPoint p;
    p.shifts = Eigen::MatrixXd::Constant(1, n, mu);
    return p;
}

// Two product measures on {0, 1} with means 0.2 and 0.6.
std::shared_ptr<FiniteSpace> two_point_space() {
    std::vector<std::vector<Vec>> supports{{make_vec({0}), make_vec({1})}};
    std::vector<std::vector<std::vector<double>>> extremes{{{0.8, 0.2}}, {{0.4, 0.6}}};
    return std::make_shared<FiniteSpace>(1, supports, extremes, "two-point");
}

}  // namespace

TEST_CASE("samples stay inside the almost-sure bound and the stated support") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 4);
    const PriorPoint prior = constant_prior(4, 1.0);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (const Vec& x : family.sample(prior, seed)) {
            CHECK(x[0] >= 0.5);
            CHECK(x[0] <= 1.5);
        }
    }

    const auto centered = PriorFamily::uniform_shift(0.0, 1.0, 3);
    for (const Vec& x : centered.sample(constant_prior(3, 0.0), 7)) {
        CHECK(std::fabs(x[0]) <= 1.0);
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 6);
    const PriorPoint prior = constant_prior(6, -1.0);
    const auto first = family.sample(prior, 99);
    const auto second = family.sample(prior, 99);
    const auto different = family.sample(prior, 100);
    for (int i = 0; i < 6; ++i) CHECK(first[i][0] == second[i][0]);
    bool any_change = false;
    for (int i = 0; i < 6; ++i) any_change = any_change || first[i][0] != different[i][0];
    CHECK(any_change);
}

TEST_CASE("law of large numbers for the shifted uniform") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 2);
    const PriorPoint prior = constant_prior(2, 1.0);
    const std::int64_t draws = 500000;  // one million coordinate samples
    RngStream rng(2024, 0, 0);
    std::vector<double> flat(2);
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t rep = 0; rep < draws; ++rep) {
        family.sample_into(prior, rng, flat.data());
        for (double x : flat) {
            sum += x;
            sum_sq += x * x;
        }
    }
    const double count = static_cast<double>(2 * draws);
    const double mean = sum / count;
    const double variance = sum_sq / count - mean * mean;

    const double sd_mean = (0.5 / std::sqrt(3.0)) / std::sqrt(count);
    CHECK(std::fabs(mean - 1.0) <= 3.0 * sd_mean);

    // Var = r^2/3; se of the sample variance uses the uniform fourth moment
    // (kurtosis 9/5).
    const double var_true = 0.25 / 3.0;
    const double se_var = var_true * std::sqrt(9.0 / 5.0 - 1.0) / std::sqrt(count);
    CHECK(std::fabs(variance - var_true) <= 4.0 * se_var);
}

TEST_CASE("mean sets") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 3);
    const ConvexBody set = family.mean_set(0);
    CHECK(set.lower()[0] == doctest::Approx(-1.0));
    CHECK(set.upper()[0] == doctest::Approx(1.0));

    const auto centered = PriorFamily::uniform_shift(0.0, 1.0, 3);
    CHECK(centered.mean_set(1).lower()[0] == doctest::Approx(0.0));
    CHECK(centered.mean_set(1).upper()[0] == doctest::Approx(0.0));

    const auto discrete = PriorFamily::discrete(two_point_space());
    const ConvexBody hull = discrete.mean_set(0);
    CHECK(hull.lower()[0] == doctest::Approx(0.2));
    CHECK(hull.upper()[0] == doctest::Approx(0.6));

    CHECK_THROWS_AS(family.mean_set(3), std::invalid_argument);
}

TEST_CASE("variance proxy for the uniform shift family") {
    const auto centered = PriorFamily::uniform_shift(0.0, 0.7, 2);
    CHECK(centered.variance_proxy() == doctest::Approx(0.49 / 3.0).epsilon(1e-12));

    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 2);
    CHECK(family.variance_proxy() == doctest::Approx(1.0 + 0.25 / 3.0).epsilon(1e-6));
}

TEST_CASE("variance proxy for the ball shift family") {
    const auto disk_family =
        PriorFamily::ball_shift(0.3, 4, ConvexBody::ball(make_vec({0, 0}), 0.7));
    CHECK(disk_family.variance_proxy() ==
          doctest::Approx(0.49 + 2.0 * 0.09 / 4.0).epsilon(1e-9));

    const auto square = ConvexBody::polytope(
        {make_vec({1, 1}), make_vec({-1, 1}), make_vec({1, -1}), make_vec({-1, -1})});
    const auto square_family = PriorFamily::ball_shift(0.5, 4, square);
    CHECK(square_family.variance_proxy() ==
          doctest::Approx(2.0 + 2.0 * 0.25 / 4.0).epsilon(1e-7));
}

TEST_CASE("discrete variance proxy agrees with a brute-force grid") {
    const auto space = two_point_space();
    const auto family = PriorFamily::discrete(space);

    // Independent oracle: scan theta over the mean interval and refine.
    auto objective = [&](double theta) {
        double worst = 0.0;
        for (const auto& extreme : space->extremes()) {
            const double p1 = extreme[0][1];
            const double mean = p1;
            const double second = p1;  // support {0,1}: E X^2 = P(X=1)
            const double value = second - 2.0 * theta * mean + theta * theta;
            worst = std::max(worst, value);
        }
        return worst;
    };
    double best = 1e300;
    for (int step = 0; step <= 40000; ++step) {
        const double theta = 0.2 + 0.4 * step / 40000.0;
        best = std::min(best, objective(theta));
    }
    CHECK(family.variance_proxy() == doctest::Approx(best).epsilon(1e-6));
    CHECK(family.variance_proxy() == space->variance_proxy_exact());
}

TEST_CASE("corner priors") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 5);
    const auto corners = family.corner_priors(make_vec({1}), 3, 77);
    REQUIRE(corners.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(corners[0].shifts(0, i) == doctest::Approx(1.0));
        CHECK(corners[1].shifts(0, i) == doctest::Approx(-1.0));
        CHECK(std::fabs(corners[3].shifts(0, i)) == doctest::Approx(1.0));
    }

    const auto centered = PriorFamily::uniform_shift(0.0, 1.0, 5);
    CHECK(centered.corner_priors(make_vec({1})).size() == 1);

    const auto disk_family =
        PriorFamily::ball_shift(0.3, 2, ConvexBody::ball(make_vec({0, 0}), 1.0));
    const auto ball_corners = disk_family.corner_priors(make_vec({0, 1}));
    REQUIRE(ball_corners.size() == 2);
    CHECK(ball_corners[0].shifts(0, 0) == doctest::Approx(0.0));
    CHECK(ball_corners[0].shifts(1, 0) == doctest::Approx(1.0));
    CHECK(ball_corners[1].shifts(1, 0) == doctest::Approx(-1.0));
}

TEST_CASE("ball shift samples respect the bound and center on the shift") {
    const auto body = ConvexBody::ball(make_vec({0, 0}), 0.6);
    const auto family = PriorFamily::ball_shift(0.4, 3, body);
    CHECK(family.bound() == doctest::Approx(1.0));

    PriorPoint prior;
    prior.shifts = Eigen::MatrixXd::Zero(2, 3);
    prior.shifts(1, 0) = 0.6;  // boundary shift for the first coordinate
    REQUIRE(family.admissible(prior));

    RngStream rng(5150, 0, 0);
    std::vector<double> flat(6);
    double sum_y = 0.0;
    const int reps = 200000;
    for (int rep = 0; rep < reps; ++rep) {
        family.sample_into(prior, rng, flat.data());
        for (int i = 0; i < 3; ++i) {
            const double norm = std::hypot(flat[2 * i], flat[2 * i + 1]);
            CHECK(norm <= 1.0 + 1e-12);
        }
        sum_y += flat[1];
    }
    const double se = (0.4 / 2.0) / std::sqrt(static_cast<double>(reps));
    CHECK(std::fabs(sum_y / reps - 0.6) <= 4.0 * se);
}

TEST_CASE("inadmissible priors are rejected") {
    const auto family = PriorFamily::uniform_shift(1.0, 0.5, 3);
    CHECK_THROWS_AS(family.sample(constant_prior(3, 1.5), 1), std::invalid_argument);
    CHECK_THROWS_AS(family.sample(constant_prior(2, 0.5), 1), std::invalid_argument);
}

TEST_CASE("family constructor validation") {
    CHECK_THROWS_AS(PriorFamily::uniform_shift(-0.5, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(PriorFamily::uniform_shift(1.0, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(PriorFamily::uniform_shift(1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(PriorFamily::ball_shift(0.5, 3, ConvexBody::interval(make_vec({0}), make_vec({1}))),
                    std::invalid_argument);
}
