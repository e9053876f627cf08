#include "frobkit/fixtures.hpp"

#include <chrono>
#include <fstream>

#include "frobkit/pencil.hpp"

#ifndef FROBKIT_FIXTURE_DIR
#define FROBKIT_FIXTURE_DIR "fixtures"
#endif

namespace frobkit {

namespace {

using Json = nlohmann::json;

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome mismatch(const std::string& where, const Poly& want, const Poly& got)
{
    return {false, where + ": printed " + want.str() + ", derived " + got.str()};
}

Outcome compare_matrix(const Json& printed, const PolyMatrix& derived, const TablePtr& table, const std::string& label)
{
    if (printed.size() != derived.rows())
        return {false, label + ": wrong size"};
    for (std::size_t i = 0; i < derived.rows(); ++i)
        for (std::size_t j = 0; j < derived.cols(); ++j) {
            Poly want = parse_poly(printed[i][j].get<std::string>(), table);
            if (want != derived(i, j).rebase(table))
                return mismatch(label + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", want,
                                derived(i, j));
        }
    return {};
}

// maps named by their target chart, as target variables in source variables
Outcome compare_map(const Json& printed, const TablePtr& in, const std::vector<Poly>& derived, const TablePtr& out,
                    const std::string& label)
{
    if (printed.size() != derived.size())
        return {false, label + ": wrong number of components"};
    for (std::size_t i = 0; i < out->size(); ++i) {
        const std::string& name = (*out)[i].name;
        if (!printed.contains(name))
            return {false, label + ": " + name + " not printed"};
        Poly want = parse_poly(printed[name].get<std::string>(), in);
        if (want != derived[i].rebase(in))
            return mismatch(label + " " + name, want, derived[i]);
    }
    return {};
}

Outcome check_euler(const Json& printed, const FrobeniusData& fd)
{
    std::map<std::string, Rational> coef;
    for (auto& term : printed) {
        std::string var = term[1].get<std::string>();
        if (coef.count(var))
            return {false, "direction " + var + " printed twice"};
        coef[var] = parse_rational(term[0].get<std::string>());
    }
    const auto& t = *fd.t();
    for (std::size_t a = 0; a < t.size(); ++a) {
        auto it = coef.find(t[a].name);
        if (it == coef.end())
            return {false, "direction " + t[a].name + " missing"};
        if (it->second != fd.degrees[a])
            return {false, t[a].name + ": printed " + to_string(it->second) + ", derived " + to_string(fd.degrees[a])};
    }
    if (coef.size() != t.size())
        return {false, "extra directions printed"};
    return {};
}

// e^a = num_a / den on both sides, compared after cross-multiplying
Outcome check_unit(const Json& printed, const FrobeniusData& fd)
{
    const TablePtr& t = fd.t();
    Poly den = parse_poly(printed["denominator"].get<std::string>(), t);
    const Json& nums = printed["numerators"];
    if (nums.size() != fd.e_num.size())
        return {false, "wrong number of components"};
    for (std::size_t a = 0; a < fd.e_num.size(); ++a) {
        Poly num = parse_poly(nums[a].get<std::string>(), t);
        if (!num.is_zero() && !num.is_homogeneous())
            return {false, "numerator " + std::to_string(a + 1) + " is not quasi-homogeneous: " + num.str()};
        if (num * fd.e_den != fd.e_num[a] * den)
            return {false, "component " + std::to_string(a + 1) + ": printed (" + num.str() + ")/(" + den.str() +
                               "), derived (" + fd.e_num[a].str() + ")/(" + fd.e_den.str() + ")"};
    }
    return {};
}

// apply one erratum to a copy of the fixture
Json corrected(Json fx, const Json& err)
{
    std::string field = err["field"];
    std::size_t idx = err["index"];
    if (field == "euler")
        fx["euler"][idx] = err["corrected"];
    else if (field == "unit.numerators")
        fx["unit"]["numerators"][idx] = err["corrected"];
    else
        throw UsageError("unknown erratum field " + field);
    return fx;
}

std::string erratum_field_of(const std::string& check)
{
    if (check == "euler")
        return "euler";
    if (check == "unit")
        return "unit.numerators";
    return {};
}

}  // namespace

bool FixtureReport::pass() const
{
    for (auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

bool FixtureReport::potential_pass() const
{
    for (auto& c : checks)
        if (c.name == "potential")
            return c.pass;
    return false;
}

Json FixtureReport::to_json() const
{
    Json j;
    j["fixture"] = fixture;
    j["kind"] = std::string(1, kind_char(kind));
    j["rank"] = l;
    if (m)
        j["m"] = *m;
    j["pass"] = pass();
    auto arr = Json::array();
    for (auto& c : checks) {
        Json e = {{"check", c.name}, {"pass", c.pass}};
        if (c.erratum)
            e["erratum"] = true;
        if (!c.detail.empty())
            e["detail"] = c.detail;
        arr.push_back(e);
    }
    j["checks"] = arr;
    return j;
}

std::filesystem::path fixture_root()
{
    if (const char* env = std::getenv("FROBKIT_FIXTURES"))
        return env;
    return FROBKIT_FIXTURE_DIR;
}

std::vector<std::filesystem::path> fixture_files(const std::string& set)
{
    auto dir = fixture_root() / set;
    if (!std::filesystem::is_directory(dir))
        throw UsageError("no fixture set at " + dir.string());
    std::vector<std::filesystem::path> out;
    for (auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

FixtureReport compare_fixture(const Json& fx, const FrobeniusData& fd)
{
    FixtureReport rep;
    rep.fixture = fx.value("name", "");
    rep.kind = fd.chart.kind;
    rep.l = fd.chart.l;
    if (fd.chart.m >= 0)
        rep.m = fd.chart.m;

    auto run = [&](const std::string& name, const std::function<Outcome(const Json&)>& check) {
        FixtureCheck c{name, true, false, {}};
        Outcome o = check(fx);
        c.pass = o.ok;
        c.detail = o.detail;
        if (!o.ok && fx.contains("errata")) {
            for (auto& err : fx["errata"]) {
                if (err["field"] != erratum_field_of(name))
                    continue;
                Outcome fixed = check(corrected(fx, err));
                if (fixed.ok) {
                    c.pass = true;
                    c.erratum = true;
                    c.detail = "printed entry rejected (" + o.detail + "); corrected entry matches";
                }
            }
        }
        rep.checks.push_back(c);
    };

    const FlatChart& ch = fd.chart;
    const TablePtr& t = fd.t();

    run("potential", [&](const Json& f) -> Outcome {
        Poly want = parse_poly(f["potential"].get<std::string>(), t);
        if (want != fd.F)
            return mismatch("F", want, fd.F);
        if (want.str() != fd.F.str())
            return {false, "canonical text differs"};
        return {};
    });

    if (fx.contains("shifts"))
        run("shifts", [&](const Json& f) -> Outcome {
            PencilSpec ps = pencil_spec(ch.l, ch.m);
            for (std::size_t j = 0; j < ps.c.size(); ++j)
                if (parse_rational(f["shifts"][j].get<std::string>()) != ps.c[j])
                    return {false, "z" + std::to_string(j + 1) + ": derived shift " + to_string(ps.c[j])};
            return {};
        });

    run("eta_base", [&](const Json& f) { return compare_matrix(f["eta_base"], ch.base_eta, ch.base, "eta"); });
    if (fx.contains("g_base"))
        run("g_base", [&](const Json& f) { return compare_matrix(f["g_base"], ch.base_g, ch.base, "g"); });

    for (auto& [key, printed] : fx["chain"].items()) {
        run("map " + key, [&, key = key](const Json& f) -> Outcome {
            const Json& p = f["chain"][key];
            if (key == "w_in_v") {
                const CoordinateMap& mp = ch.step("v").map;
                return compare_map(p, mp.target, mp.inverse, mp.source, key);
            }
            const CoordinateMap& mp = ch.step(key).map;
            return compare_map(p, mp.source, mp.forward, mp.target, key);
        });
    }

    run("eta_flat", [&](const Json& f) -> Outcome {
        const Json& p = f["eta_flat"];
        for (std::size_t i = 0; i < fd.eta.size(); ++i)
            for (std::size_t j = 0; j < fd.eta.size(); ++j)
                if (parse_rational(p[i][j].get<std::string>()) != fd.eta[i][j])
                    return {false, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"};
        return {};
    });
    if (fx.contains("g_flat"))
        run("g_flat", [&](const Json& f) { return compare_matrix(f["g_flat"], fd.g, t, "g"); });

    run("euler", [&](const Json& f) { return check_euler(f["euler"], fd); });
    run("unit", [&](const Json& f) { return check_unit(f["unit"], fd); });
    return rep;
}

FixtureReport check_fixture_file(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw UsageError("cannot read " + file.string());
    Json fx = Json::parse(in);
    Kind kind = parse_kind(fx["kind"].get<std::string>());
    std::optional<int> m;
    if (fx.contains("m"))
        m = fx["m"].get<int>();
    auto t0 = std::chrono::steady_clock::now();
    FrobeniusData fd = build_frobenius(kind, fx["rank"].get<int>(), m);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    FixtureReport rep = compare_fixture(fx, fd);
    rep.seconds = secs;
    return rep;
}

}  // namespace frobkit
