#include "upcap/convex_body.hpp"
#include "upcap/serialize.hpp"

#include "test_helpers.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace upcap;
using upcap_test::random_body;
using upcap_test::random_vec;

namespace {

Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

ConvexBody unit_simplex() {
    return ConvexBody::polytope({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
}

// Brute-force projection oracle: scan barycentric combinations of the
// triangle on a fine grid and keep the closest point.
Vec simplex_projection_oracle(const std::vector<Vec>& v, const Vec& x, int steps) {
    Vec best;
    double best_sq = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps - i; ++j) {
            const double l0 = static_cast<double>(i) / steps;
            const double l1 = static_cast<double>(j) / steps;
            const double l2 = 1.0 - l0 - l1;
            const Vec p = l0 * v[0] + l1 * v[1] + l2 * v[2];
            const double sq = (p - x).squaredNorm();
            if (sq < best_sq) {
                best_sq = sq;
                best = p;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("support function closed forms") {
    const auto segment = ConvexBody::interval(make_vec({-1}), make_vec({1}));
    CHECK(segment.support(make_vec({1})) == doctest::Approx(1.0));
    CHECK(segment.support(make_vec({-2})) == doctest::Approx(2.0));

    const auto disk = ConvexBody::ball(make_vec({0, 0}), 2.0);
    CHECK(disk.support(make_vec({0, 1})) == doctest::Approx(2.0));

    const auto simplex = unit_simplex();
    CHECK(simplex.support(make_vec({1, 1})) == doctest::Approx(1.0));

    CHECK_THROWS_AS(segment.support(make_vec({1, 0})), std::invalid_argument);
}

TEST_CASE("projection closed forms and fixed points") {
    const auto segment = ConvexBody::interval(make_vec({-1}), make_vec({1}));
    CHECK(segment.project(make_vec({1.5}))[0] == doctest::Approx(1.0));
    CHECK(segment.project(make_vec({0.25}))[0] == doctest::Approx(0.25));

    const auto disk = ConvexBody::ball(make_vec({1, 1}), 0.5);
    const Vec inside = make_vec({1.1, 0.9});
    CHECK((disk.project(inside) - inside).norm() == doctest::Approx(0.0));
}

TEST_CASE("polytope projection matches the brute-force oracle") {
    const auto simplex = unit_simplex();
    const Vec x = make_vec({1, 1});
    const Vec projected = simplex.project(x);
    CHECK(projected[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(projected[1] == doctest::Approx(0.5).epsilon(1e-9));

    const Vec oracle = simplex_projection_oracle(simplex.vertices(), x, 2000);
    CHECK(std::fabs((x - projected).norm() - (x - oracle).norm()) < 2e-6);

    // Distance examples.
    CHECK(simplex.distance(make_vec({0.2, 0.2})) == doctest::Approx(0.0));
    CHECK(simplex.distance(x) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
    const auto segment = ConvexBody::interval(make_vec({-1}), make_vec({1}));
    CHECK(segment.distance(make_vec({1.5})) == doctest::Approx(0.5));
}

TEST_CASE("projection satisfies the variational inequality on random polytopes") {
    RngStream rng(11, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next_unit() * 3);
        std::vector<Vec> vertices;
        const int count = 3 + static_cast<int>(rng.next_unit() * 5);
        for (int i = 0; i < count; ++i) vertices.push_back(random_vec(rng, dim, 1.5));
        const ConvexBody body = ConvexBody::polytope(vertices);
        const Vec x = random_vec(rng, dim, 3.0);
        const Vec projected = body.project(x);
        for (const auto& v : vertices) {
            CHECK((x - projected).dot(v - projected) <= 1e-7);
        }
    }
}

TEST_CASE("minkowski average closed forms") {
    const auto segment = ConvexBody::interval(make_vec({-0.75}), make_vec({0.75}));
    std::vector<ConvexBody> copies(5, segment);
    const auto average = minkowski_average(copies);
    CHECK(average.lower()[0] == doctest::Approx(-0.75));
    CHECK(average.upper()[0] == doctest::Approx(0.75));

    // Degenerate one-vertex polytopes average to the mean point.
    std::vector<ConvexBody> singletons;
    singletons.push_back(ConvexBody::polytope({make_vec({0, 0})}));
    singletons.push_back(ConvexBody::polytope({make_vec({3, 0})}));
    singletons.push_back(ConvexBody::polytope({make_vec({0, 3})}));
    const auto mean_point = minkowski_average(singletons);
    REQUIRE(mean_point.vertices().size() == 1);
    CHECK(mean_point.vertices()[0][0] == doctest::Approx(1.0));
    CHECK(mean_point.vertices()[0][1] == doctest::Approx(1.0));

    // Two orthogonal segments average to the half-unit square.
    std::vector<ConvexBody> segments;
    segments.push_back(ConvexBody::polytope({make_vec({0, 0}), make_vec({2, 0})}));
    segments.push_back(ConvexBody::polytope({make_vec({0, 0}), make_vec({0, 2})}));
    const auto square = minkowski_average(segments);
    REQUIRE(square.vertices().size() == 4);
    for (const Vec& corner :
         {make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})}) {
        bool found = false;
        for (const auto& v : square.vertices())
            if ((v - corner).norm() < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("minkowski average rejects bad inputs") {
    CHECK_THROWS_AS(minkowski_average({}), std::invalid_argument);

    std::vector<ConvexBody> mixed;
    mixed.push_back(ConvexBody::interval(make_vec({0, 0}), make_vec({1, 1})));
    mixed.push_back(ConvexBody::ball(make_vec({0, 0}), 1.0));
    CHECK_THROWS_AS(minkowski_average(mixed), std::invalid_argument);

    // 11 polytopes with 4 vertices each exceed a cap of 10^6 combinations.
    std::vector<ConvexBody> many(
        11, ConvexBody::polytope({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}),
                                  make_vec({1, 1})}));
    CHECK_THROWS_AS(minkowski_average(many, 1000000), std::invalid_argument);
}

TEST_CASE("support function is positively homogeneous and subadditive") {
    RngStream rng(12, 0, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next_unit() * 4);
        const ConvexBody body = random_body(rng, dim);
        const Vec p = random_vec(rng, dim, 3.0);
        const Vec q = random_vec(rng, dim, 3.0);
        const double lambda = rng.next_unit() * 4.0;

        const double scaled = body.support(Vec(lambda * p));
        const double reference = lambda * body.support(p);
        CHECK(std::fabs(scaled - reference) <= 1e-12 * std::max(1.0, std::fabs(reference)));

        CHECK(body.support(Vec(p + q)) <= body.support(p) + body.support(q) + 1e-12);
    }
}

TEST_CASE("distance is 1-Lipschitz") {
    RngStream rng(13, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next_unit() * 3);
        const ConvexBody body = random_body(rng, dim);
        const Vec x = random_vec(rng, dim, 4.0);
        const Vec y = random_vec(rng, dim, 4.0);
        CHECK(std::fabs(body.distance(x) - body.distance(y)) <= (x - y).norm() + 1e-10);
    }
}

TEST_CASE("support of the average equals the average of supports") {
    RngStream rng(14, 0, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next_unit() * 2);
        const int count = 2 + static_cast<int>(rng.next_unit() * 3);
        const double pick = rng.next_unit();
        std::vector<ConvexBody> bodies;
        for (int i = 0; i < count; ++i) {
            if (pick < 1.0 / 3.0) {
                Vec lo = random_vec(rng, dim, 2.0);
                Vec hi = lo;
                for (int k = 0; k < dim; ++k) hi[k] += rng.next_unit();
                bodies.push_back(ConvexBody::interval(lo, hi));
            } else if (pick < 2.0 / 3.0) {
                bodies.push_back(ConvexBody::ball(random_vec(rng, dim, 2.0), rng.next_unit()));
            } else {
                std::vector<Vec> vertices;
                for (int v = 0; v < 3; ++v) vertices.push_back(random_vec(rng, dim, 2.0));
                bodies.push_back(ConvexBody::polytope(std::move(vertices)));
            }
        }
        const ConvexBody average = minkowski_average(bodies);
        for (int probe = 0; probe < 8; ++probe) {
            const Vec p = random_vec(rng, dim, 2.0);
            double mean_support = 0.0;
            for (const auto& b : bodies) mean_support += b.support(p);
            mean_support /= count;
            CHECK(std::fabs(average.support(p) - mean_support) <=
                  1e-10 * std::max(1.0, std::fabs(mean_support)));
        }
    }
}

TEST_CASE("bodies round-trip through json") {
    RngStream rng(15, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next_unit() * 3);
        const ConvexBody body = random_body(rng, dim);
        const ConvexBody restored = body_from_json(body_to_json(body));
        REQUIRE(restored.kind() == body.kind());
        for (int probe = 0; probe < 8; ++probe) {
            const Vec p = random_vec(rng, dim, 2.0);
            CHECK(restored.support(p) == doctest::Approx(body.support(p)).epsilon(1e-14));
        }
    }
    CHECK_THROWS(body_from_json(nlohmann::json{{"kind", "wedge"}}));
}

TEST_CASE("constructor invariants") {
    CHECK_THROWS_AS(ConvexBody::interval(make_vec({1}), make_vec({0})), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::ball(make_vec({0}), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::polytope({}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::polytope({make_vec({0, 0}), make_vec({0})}),
                    std::invalid_argument);
}

TEST_CASE("circumradius") {
    CHECK(ConvexBody::ball(make_vec({3, 4}), 0.25).circumradius() == doctest::Approx(0.25));
    CHECK(ConvexBody::interval(make_vec({0, 0}), make_vec({2, 2})).circumradius() ==
          doctest::Approx(std::sqrt(2.0)));
    const auto square = ConvexBody::polytope(
        {make_vec({1, 1}), make_vec({-1, 1}), make_vec({1, -1}), make_vec({-1, -1})});
    CHECK(square.circumradius() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}
