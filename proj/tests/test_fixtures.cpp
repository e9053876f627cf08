#include <doctest.h>

#include <fstream>

#include "frobkit/fixtures.hpp"

using namespace frobkit;

static nlohmann::json load(const std::string& name)
{
    std::ifstream in(fixture_root() / "paper" / name);
    return nlohmann::json::parse(in);
}

TEST_CASE("every printed example matches")
{
    auto files = fixture_files("paper");
    CHECK(files.size() == 7);
    for (auto& f : files) {
        auto r = check_fixture_file(f);
        INFO(r.to_json().dump());
        CHECK(r.pass());
        CHECK(r.seconds < 10);
    }
}

TEST_CASE("a wrong coefficient is caught")
{
    auto fx = load("A2.json");
    fx["potential"] = "1/18*t2^3 - 1/36*t1^2*t2^2 + 1/648*t1^4*t2 - 1/19441*t1^6";
    auto r = compare_fixture(fx, build_frobenius(Kind::A, 2, std::nullopt));
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.potential_pass());
}

TEST_CASE("a wrong unit field is caught")
{
    auto fx = load("C2_m1.json");
    fx["unit"]["numerators"][1] = "-2*t2";
    CHECK_FALSE(compare_fixture(fx, build_frobenius(Kind::C, 2, 1)).pass());
}

TEST_CASE("printed typos are only accepted through a matching erratum")
{
    auto fx = load("C3_m0.json");
    auto fd = build_frobenius(Kind::C, 3, 0);
    auto r = compare_fixture(fx, fd);
    int errata = 0;
    for (auto& c : r.checks)
        errata += c.erratum;
    CHECK(errata == 2);
    fx.erase("errata");
    CHECK_FALSE(compare_fixture(fx, fd).pass());
}

TEST_CASE("a wrong chain map is caught")
{
    auto fx = load("C3_m0.json");
    fx["chain"]["w"]["w1"] = "tau1 - 1/6*tau2 + 1/20*tau3";
    CHECK_FALSE(compare_fixture(fx, build_frobenius(Kind::C, 3, 0)).pass());
}
