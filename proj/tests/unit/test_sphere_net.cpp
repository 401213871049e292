#include "upcap/sphere_net.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace upcap;
using upcap_test::random_unit;

TEST_CASE("d=1 net is the exact two-point cover") {
    const SphereNet net = build_half_net(1);
    REQUIRE(net.size() == 2);
    CHECK(net.points[0][0] == doctest::Approx(-1.0));
    CHECK(net.points[1][0] == doctest::Approx(1.0));
    CHECK(covering_radius(net, 1000, 99) == doctest::Approx(0.0));
    CHECK(net.budget() == 5);
}

TEST_CASE("low-dimensional nets meet the volumetric budget") {
    for (int dim : {2, 3}) {
        const SphereNet net = build_half_net(dim);
        CHECK(net.size() <= net.budget());
        CHECK(net.verified_radius <= 0.5);
        CHECK(covering_radius(net, 100000, 4242) <= 0.5);
        for (const auto& p : net.points) CHECK(std::fabs(p.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("a single-point net leaves the antipode uncovered") {
    SphereNet net;
    net.dim = 2;
    Vec p(2);
    p << 1.0, 0.0;
    net.points = {p};
    CHECK(covering_radius(net, 100000, 7) > 1.99);
}

TEST_CASE("covering radius is deterministic and worker-independent") {
    const SphereNet net = build_half_net(2);
    const double reference = covering_radius(net, 20000, 555, 1);
    CHECK(covering_radius(net, 20000, 555, 4) == reference);
    CHECK(covering_radius(net, 20000, 555, 16) == reference);
    CHECK(covering_radius(net, 20000, 556, 1) != reference);
}

TEST_CASE("covering transfer examples") {
    const SphereNet line = build_half_net(1);
    Vec zero(1);
    zero << 0.0;
    CHECK(covering_transfer_holds(line, zero, 5, 0.1));

    Vec s(1);
    s << 3.0;
    CHECK(covering_transfer_holds(line, s, 2, 1.0));
}

TEST_CASE("covering transfer holds on randomized sums") {
    const SphereNet net = build_half_net(2);
    RngStream rng(321, 0, 0);
    int checked = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        const Vec direction = random_unit(rng, 2);
        const double magnitude = rng.next_unit() * 10.0;
        const Vec sum = magnitude * direction;
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_unit() * 20);
        const double t = 0.01 + rng.next_unit();
        CHECK(covering_transfer_holds(net, sum, n, t));
        if (sum.norm() > static_cast<double>(n) * t) ++checked;
    }
    CHECK(checked > 1000);  // the interesting branch was actually exercised
}

TEST_CASE("net table has one unit vector per row") {
    const SphereNet net = build_half_net(2);
    std::ostringstream out;
    write_net_table(net, out);
    std::istringstream in(out.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double x = 0.0, y = 0.0;
        std::istringstream fields(line);
        fields >> x >> y;
        CHECK(std::fabs(std::hypot(x, y) - 1.0) <= 1e-12);
        ++rows;
    }
    CHECK(rows == net.size());
}

TEST_CASE("dimension range is enforced") {
    CHECK_THROWS_AS(build_half_net(0), std::invalid_argument);
    CHECK_THROWS_AS(build_half_net(9), std::invalid_argument);
    const SphereNet net = build_half_net(2);
    CHECK_THROWS_AS(covering_radius(net, 0, 1), std::invalid_argument);
}
