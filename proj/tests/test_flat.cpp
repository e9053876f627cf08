#include <doctest.h>

#include "frobkit/flat.hpp"

using namespace frobkit;

TEST_CASE("A2 flat coordinates")
{
    FlatChart fc = flat_coords_a(2);
    const CoordinateMap& mp = fc.step("t").map;
    CHECK(mp.forward[1] == parse_poly("y2 - 1/6*y1^2", fc.base));
    CHECK(fc.eta_flat == QMatrix{{0, 3}, {3, 0}});
    CHECK(fc.gauge.empty());
}

TEST_CASE("C3 m=0 chain")
{
    FlatChart fc = flat_coords_c(3, 0);
    const CoordinateMap& tau = fc.step("tau").map;
    CHECK(tau.forward[1] == parse_poly("4*z1 + z2", tau.source));
    const CoordinateMap& v = fc.step("v").map;
    CHECK(v.inverse[1] == parse_poly("v2*v3^4", v.target));
    const CoordinateMap& t = fc.step("t").map;
    CHECK(t.forward[0] == parse_poly("v1 - 1/12*v2^2*v3", t.source));
    CHECK(fc.eta_flat == expected_flat_eta(Kind::C, 3, 0));
}

TEST_CASE("flat metric normal forms")
{
    CHECK(expected_flat_eta(Kind::C, 3, 1) == QMatrix{{0, 2, 0}, {2, 0, 0}, {0, 0, 1}});
    CHECK(expected_flat_eta(Kind::A, 3, -1) == QMatrix{{0, 0, 4}, {0, 4, 0}, {4, 0, 0}});
}

TEST_CASE("chart validation")
{
    CHECK_THROWS_AS(flat_coords_c(1, 0), UsageError);
    CHECK_THROWS_AS(flat_coords_c(2, 3), UsageError);
    CHECK_THROWS_AS(flat_coords(Kind::B, 3, std::nullopt), UsageError);
}
