#include <doctest.h>

#include "frobkit/checks.hpp"
#include "frobkit/pencil.hpp"

using namespace frobkit;

TEST_CASE("printed pencil shifts")
{
    CHECK(pencil_spec(2, 0).c == QVector{4, -4});
    CHECK(pencil_spec(2, 1).c == QVector{0, 4});
    CHECK(pencil_spec(3, 0).c == QVector{6, -12, 8});
    CHECK(pencil_spec(3, 1).c == QVector{2, 4, -8});
    CHECK_THROWS_AS(pencil_spec(2, 3), UsageError);
}

TEST_CASE("shifted pencil is linear in lambda and eta(z) is as printed")
{
    auto sp = shift_to_pencil_c(2, 1);
    CHECK(sp.eta(0, 0) == parse_poly("2*z2", sp.z));
    CHECK(sp.eta(0, 1) == parse_poly("8*z1", sp.z));
    CHECK(sp.eta(1, 1) == parse_poly("8*z2", sp.z));
    for (int l = 2; l <= 4; ++l)
        for (int m = 0; m <= l; ++m)
            CHECK(all_pass(c_pencil_checks(l, m)));
}

TEST_CASE("tau determinant")
{
    auto tc = tau_change_c(shift_to_pencil_c(3, 1));
    CHECK(tc.det_abs_ok);
    CHECK(tc.det == parse_poly("-256*tau2^2*tau3", tc.map.target));
}

TEST_CASE("A metric pencil")
{
    auto p = metric_pencil_a(2);
    CHECK(p.g_lambda(0, 1) == parse_poly("3*lambda - 1/3*y1*y2", p.table));
    for (int l = 1; l <= 4; ++l)
        CHECK(all_pass(a_closed_form_checks(l)));
}

TEST_CASE("B/D reduction onto the C pencil")
{
    CHECK(bd_reduction_check(Kind::B, 3, 5, 1).pass);
    CHECK(bd_reduction_check(Kind::D, 3, 5, 1).pass);
    CHECK_THROWS_AS(bd_reduction_check(Kind::A, 3, 5, 1), UsageError);
}
