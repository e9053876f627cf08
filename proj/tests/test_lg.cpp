#include <doctest.h>

#include "frobkit/lg.hpp"
#include "helpers.hpp"

using namespace frobkit;

TEST_CASE("A1 flat metric is 1/2")
{
    LGModel m = lg_model(Kind::A, 1, 0, {cplx(0.7, 0.4)});
    CMat eta = lg_flat_eta(m);
    CHECK(std::abs(eta(0, 0) - 0.5) < 1e-12);
    auto t = lg_flat_coords(Kind::A, 1, 0, {cplx(0.7, 0.4)});
    CHECK(std::abs(t[0] - cplx(0.7, 0.4)) < 1e-15);
}

TEST_CASE("A2 flat coordinate t2 = a2 - a1^2/6")
{
    std::vector<cplx> a = {cplx(0.8, -0.3), cplx(-0.5, 1.1)};
    auto t = lg_flat_coords(Kind::A, 2, 0, a);
    CHECK(std::abs(t[0] - a[0]) < 1e-14);
    CHECK(std::abs(t[1] - (a[1] - a[0] * a[0] / 6.0)) < 1e-14);
    CHECK(std::abs(t[1] - (a[1] - a[0] * a[0] / 3.0)) > 1e-3);
}

TEST_CASE("roots of a polynomial")
{
    auto r = polynomial_roots({cplx(-6), cplx(11), cplx(-6), cplx(1)});
    std::sort(r.begin(), r.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
    CHECK(std::abs(r[0] - 1.0) < 1e-12);
    CHECK(std::abs(r[1] - 2.0) < 1e-12);
    CHECK(std::abs(r[2] - 3.0) < 1e-12);
}

TEST_CASE("closed residue formulas agree with contour quadrature, A2 seed 7")
{
    std::mt19937_64 rng(7);
    LGModel m = lg_sample(Kind::A, 2, 0, rng);
    LGTensors T = lg_metrics(m);
    LGQuadrature Q = lg_quadrature(m);
    CMat eta_low = T.eta_a.inverse();
    CHECK((Q.eta - eta_low).norm() / eta_low.norm() < 1e-10);
    for (std::size_t i = 0; i < m.q.size(); ++i)
        CHECK(std::abs(T.f(i) - 1.0 / (m.q[i] * m.q[i] * m.lam2[i])) < 1e-10 * std::abs(T.f(i)));
}

TEST_CASE("C flat metric block shape")
{
    std::mt19937_64 rng(11);
    LGModel m = lg_sample(Kind::C, 2, 1, rng);
    CMat eta = lg_flat_eta(m);
    QMatrix want = lg_expected_flat_eta(Kind::C, 2, 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(eta(i, j) - want[i][j].get_d()) < 1e-9);
}

TEST_CASE("A isomorphism: odd rank holds, even rank carries a sign")
{
    auto r1 = lg_isomorphism_check(Kind::A, 1, std::nullopt, 5, 1);
    CHECK(r1.pass);
    auto r3 = lg_isomorphism_check(Kind::A, 3, std::nullopt, 5, 1);
    CHECK(r3.pass);
    auto r2 = lg_isomorphism_check(Kind::A, 2, std::nullopt, 5, 1);
    CHECK_FALSE(r2.pass);
    CHECK(std::abs(extra(r2, "measured_eta_factor") + 1.0) < 1e-10);
    CHECK(std::abs(extra(r2, "measured_g_factor") - 1.0) < 1e-10);
    CHECK(extra(r2, "max_err_up_to_constant") < 1e-8);
}

TEST_CASE("C isomorphism constants")
{
    auto r = lg_isomorphism_check(Kind::C, 2, 0, 5, 1);
    CHECK(std::abs(extra(r, "measured_eta_factor") + 0.5) < 1e-10);
    CHECK(std::abs(extra(r, "measured_g_factor") - 2.0) < 1e-10);
    CHECK(std::abs(extra(r, "measured_unit_factor") + 0.25) < 1e-10);
    CHECK(extra(r, "max_err_up_to_constant") < 1e-8);
    CHECK(extra(r, "eta_normalized") < 1e-8);
}

TEST_CASE("symmetry of the 4-tensor and the sqrt2 rescaling")
{
    CHECK(lg_symmetry_check(Kind::A, 2, std::nullopt, 5, 2).pass);
    CHECK(lg_symmetry_check(Kind::A, 1, std::nullopt, 2, 2).pass);
    auto c = lg_symmetry_check(Kind::C, 2, 1, 5, 2);
    CHECK(c.pass);
    CHECK(extra(c, "rescaled_eta_vs_sqrt2_eta") < 1e-8);
}

TEST_CASE("m = l goes through p -> 1/p")
{
    std::mt19937_64 rng(5);
    LGModel m = lg_sample(Kind::C, 2, 2, rng);
    CHECK(m.flipped);
    CHECK(m.m_eff == 0);
    CHECK(lg_isomorphism_check(Kind::C, 2, 2, 3, 4).extra.size() > 0);
}

TEST_CASE("validation")
{
    CHECK_THROWS_AS(lg_model(Kind::B, 2, 0, {1, 1}), UsageError);
    CHECK_THROWS_AS(lg_model(Kind::C, 2, 5, {1, 1}), UsageError);
    CHECK_THROWS_AS(lg_isomorphism_check(Kind::C, 2, std::nullopt, 3, 1), UsageError);
}
