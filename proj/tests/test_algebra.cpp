#include <doctest.h>

#include "frobkit/algebra.hpp"
#include "frobkit/matrix.hpp"

using namespace frobkit;

TEST_CASE("power sum reduces to elementary symmetric polynomials")
{
    TablePtr u = make_table(numbered("u", 3, 1));
    TablePtr e = make_table({{"e1", 1}, {"e2", 2}, {"e3", 3}});
    Poly p = Poly::var(u, 0, 2) + Poly::var(u, 1, 2) + Poly::var(u, 2, 2);
    Poly r = reduce_symmetric(p, {Poly::var(e, 0), Poly::var(e, 1), Poly::var(e, 2)}, e);
    CHECK(r == parse_poly("e1^2 - 2*e2", e));
    CHECK_THROWS_AS(reduce_symmetric(Poly::var(u, 0), {Poly::var(e, 0), Poly::var(e, 1), Poly::var(e, 2)}, e),
                    AlgebraError);
}

TEST_CASE("elementary polynomials")
{
    TablePtr u = make_table(numbered("u", 3, 1));
    CHECK(elementary(u, {0, 1, 2}, 2) == parse_poly("u1*u2 + u1*u3 + u2*u3", u));
    CHECK(elementary(u, {0, 1, 2}, 0) == Poly(u, 1));
}

TEST_CASE("triangular maps invert exactly")
{
    TablePtr y = make_table({{"y1", frac(1, 3)}, {"y2", frac(2, 3)}});
    TablePtr t = make_table({{"t1", frac(1, 3)}, {"t2", frac(2, 3)}});
    std::vector<Poly> fwd = {parse_poly("y1", y), parse_poly("y2 - 1/6*y1^2", y)};
    CoordinateMap m = invert_triangular_map(fwd, t);
    CHECK(m.inverse[1] == parse_poly("t2 + 1/6*t1^2", t));
    CHECK(m.check_round_trip());
}

TEST_CASE("determinant and adjugate")
{
    TablePtr x = make_table(numbered("x", 2, 1));
    PolyMatrix m(x, 2, 2);
    m(0, 0) = parse_poly("x1", x);
    m(0, 1) = parse_poly("2", x);
    m(1, 0) = parse_poly("3", x);
    m(1, 1) = parse_poly("x2", x);
    CHECK(determinant(m) == parse_poly("x1*x2 - 6", x));
    PolyMatrix adj = adjugate(m);
    CHECK(adj(0, 0) == parse_poly("x2", x));
    CHECK(adj(0, 1) == parse_poly("-2", x));
    CHECK(adj(1, 0) == parse_poly("-3", x));
    CHECK(adj(1, 1) == parse_poly("x1", x));
    PolyMatrix prod = m * adj;
    CHECK(prod(0, 1).is_zero());
    CHECK(prod(0, 0) == determinant(m));
}

TEST_CASE("rational linear solve")
{
    QMatrix a = {{1, 2}, {3, 4}};
    auto s = solve_linear(a, {5, 6});
    REQUIRE(s.consistent);
    CHECK(s.x[0] == -4);
    CHECK(s.x[1] == frac(9, 2));
    auto bad = solve_linear({{1, 1}, {1, 1}}, {1, 2});
    CHECK_FALSE(bad.consistent);
}
