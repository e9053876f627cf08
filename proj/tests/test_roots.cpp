#include <doctest.h>

#include "frobkit/roots.hpp"

using namespace frobkit;

TEST_CASE("A2 data")
{
    auto rs = build_root_system(Kind::A, 2);
    CHECK(rs.coroot_gram == QMatrix{{2, -1}, {-1, 2}});
    CHECK(rs.dual_metric == QMatrix{{frac(2, 3), frac(1, 3)}, {frac(1, 3), frac(2, 3)}});
    CHECK(rs.omega_index == 2);
    auto d = degree_vector(rs);
    CHECK(d == std::vector<Rational>{frac(1, 3), frac(2, 3)});
}

TEST_CASE("C3 data and degrees")
{
    auto rs = build_root_system(Kind::C, 3);
    CHECK(rs.dual_metric == QMatrix{{1, 1, 1}, {1, 2, 2}, {1, 2, 3}});
    CHECK(degree_vector(rs, 0) == std::vector<Rational>{frac(5, 6), frac(1, 2), frac(1, 6)});
    CHECK(degree_vector(rs, 1) == std::vector<Rational>{frac(3, 4), frac(1, 4), frac(1, 2)});
}

TEST_CASE("D weights give the last two theta equal to 1/2")
{
    auto rs = build_root_system(Kind::D, 5);
    CHECK(rs.theta[3] == frac(1, 2));
    CHECK(rs.theta[4] == frac(1, 2));
}

TEST_CASE("rank validation")
{
    CHECK_THROWS_AS(build_root_system(Kind::A, 0), UsageError);
    CHECK_THROWS_AS(build_root_system(Kind::D, 2), UsageError);
    CHECK_THROWS_AS(parse_kind("e"), UsageError);
}
