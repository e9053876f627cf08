#include <doctest.h>

#include "frobkit/frobenius.hpp"

using namespace frobkit;

static bool passed(const AxiomReport& r, const std::string& name)
{
    for (auto& c : r.checks)
        if (c.name == name)
            return c.pass;
    throw std::runtime_error("no check " + name);
}

TEST_CASE("A2 passes every axiom")
{
    FrobeniusData fd = build_frobenius(Kind::A, 2, std::nullopt);
    CHECK(fd.F == parse_poly("1/18*t2^3 - 1/36*t1^2*t2^2 + 1/648*t1^4*t2 - 1/19440*t1^6", fd.t()));
    CHECK(verify_axioms(fd).pass());
}

TEST_CASE("A1 is trivially associative")
{
    FrobeniusData fd = build_frobenius(Kind::A, 1, std::nullopt);
    CHECK(fd.F == parse_poly("-1/96*t1^4", fd.t()));
    CHECK(passed(verify_axioms(fd), "wdvv"));
}

TEST_CASE("a perturbed potential fails the Euler check")
{
    FrobeniusData fd = build_frobenius(Kind::A, 2, std::nullopt);
    fd.F += parse_poly("t1^3", fd.t());
    fd.c = structure_constants(fd.F, fd.eta);
    auto r = verify_axioms(fd);
    CHECK_FALSE(passed(r, "euler"));
    CHECK_FALSE(r.pass());
}

TEST_CASE("unit field of A2")
{
    FrobeniusData fd = build_frobenius(Kind::A, 2, std::nullopt);
    // printed: -18/(t1^2 + 6 t2), -6 t1/(t1^2 + 6 t2)
    Poly den = parse_poly("t1^2 + 6*t2", fd.t());
    CHECK(fd.e_num[0] * den == parse_poly("-18", fd.t()) * fd.e_den);
    CHECK(fd.e_num[1] * den == parse_poly("-6*t1", fd.t()) * fd.e_den);
}

TEST_CASE("C manifolds pass every axiom")
{
    for (int l = 2; l <= 3; ++l)
        for (int m = 0; m <= l; ++m)
            CHECK(verify_axioms(build_frobenius(Kind::C, l, m)).pass());
}

TEST_CASE("connection cross-check")
{
    auto r = connection_cross_check(build_frobenius(Kind::C, 2, 0), 5, 3, 1e-9);
    CHECK(r.pass);
}

TEST_CASE("m and l-m: relabelling alone versus the eta-preserving rescaling")
{
    auto self = equivalence_check(2, 1);
    CHECK(self.relabel_equal);
    auto r = equivalence_check(3, 1);
    CHECK_FALSE(r.relabel_equal);
    CHECK(r.rescaled_equal);
    auto r0 = equivalence_check(3, 0);
    CHECK(r0.rescaled_equal);
    CHECK_THROWS_AS(equivalence_check(3, 4), UsageError);
}
