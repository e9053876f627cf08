#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "frobkit/checks.hpp"
#include "frobkit/fixtures.hpp"
#include "frobkit/lg.hpp"
#include "frobkit/pencil.hpp"

using namespace frobkit;
using Json = nlohmann::json;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, internal = 3, degenerate = 4 };

struct RunConfig {
    std::string command;
    std::string type;
    int rank = -1;
    std::optional<int> m;
    std::uint64_t seed = 42;
    int samples = 20;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    std::string fixtures;
    std::string bd_check;
    std::string what = "F";
};

int rank_cap()
{
    if (const char* s = std::getenv("FROBKIT_RANK_CAP")) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw UsageError("FROBKIT_RANK_CAP must be an integer");
        }
    }
    return 6;
}

Kind exact_kind(const RunConfig& cfg)
{
    if (cfg.type.empty())
        throw UsageError("--type is required");
    if (cfg.rank < 0)
        throw UsageError("--rank is required");
    Kind k = parse_kind(cfg.type);
    if (k != Kind::A && k != Kind::C)
        throw UsageError("the exact pipeline covers types a and c; use lg --bd-check for b and d");
    if (cfg.rank < (k == Kind::A ? 1 : 2))
        throw UsageError("rank " + std::to_string(cfg.rank) + " is too small for type " + cfg.type);
    if (k == Kind::A && cfg.m)
        throw UsageError("--m applies to type c only");
    if (k == Kind::C && !cfg.m)
        throw UsageError("type c needs --m");
    if (cfg.m && (*cfg.m < 0 || *cfg.m > cfg.rank))
        throw UsageError("--m must satisfy 0 <= m <= rank");
    if (cfg.rank > rank_cap())
        throw UsageError("rank " + std::to_string(cfg.rank) + " exceeds the exact-pipeline cap " +
                         std::to_string(rank_cap()) + " (set FROBKIT_RANK_CAP to raise it)");
    return k;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + cfg.out);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string matrix_text(const PolyMatrix& m, const std::string& name)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            os << name << "^" << i + 1 << j + 1 << " = " << m(i, j).str() << "\n";
    return os.str();
}

std::string frobenius_text(const FrobeniusData& fd)
{
    std::ostringstream os;
    const auto& t = *fd.t();
    os << "type " << kind_char(fd.chart.kind) << " rank " << fd.chart.l;
    if (fd.chart.m >= 0)
        os << " m " << fd.chart.m;
    os << "\n\nF = " << fd.F.str() << "\n\nE =";
    for (std::size_t a = 0; a < t.size(); ++a)
        os << (a ? " +" : "") << " " << to_string(fd.degrees[a]) << "*" << t[a].name << " d/d" << t[a].name;
    os << "\n\ne = (1/(" << fd.e_den.str() << ")) * (";
    for (std::size_t a = 0; a < fd.e_num.size(); ++a)
        os << (a ? ", " : "") << fd.e_num[a].str();
    os << ")\n\n";
    for (std::size_t i = 0; i < fd.eta.size(); ++i) {
        os << (i ? "      " : "eta = ");
        for (auto& x : fd.eta[i])
            os << " " << to_string(x);
        os << "\n";
    }
    os << "\n" << matrix_text(fd.g, "g") << "\n";
    for (auto& st : fd.chart.steps) {
        os << "chart " << st.name << ":\n";
        const CoordinateMap& mp = st.map;
        if (!mp.forward.empty())
            for (std::size_t i = 0; i < mp.forward.size(); ++i)
                os << "  " << (*mp.target)[i].name << " = " << mp.forward[i].str() << "\n";
        else
            for (std::size_t i = 0; i < mp.inverse.size(); ++i)
                os << "  " << (*mp.source)[i].name << " = " << mp.inverse[i].str() << "\n";
    }
    return os.str();
}

std::string checks_text(const Json& checks, const std::string& indent = "")
{
    std::ostringstream os;
    for (auto& c : checks) {
        os << indent << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>();
        if (c.contains("detail"))
            os << ": " << c["detail"].get<std::string>();
        os << "\n";
    }
    return os.str();
}

std::string numeric_text(const Json& r)
{
    std::ostringstream os;
    os << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["check"].get<std::string>() << " "
       << r["kind"].get<std::string>() << r["rank"].get<int>();
    if (r.contains("m"))
        os << " m=" << r["m"].get<int>();
    os << " max_rel_err=" << r["max_rel_err"].get<std::string>() << " tol=" << r["tol"].get<std::string>() << "\n";
    for (auto& [k, v] : r.items())
        if (k != "pass" && k != "check" && k != "kind" && k != "rank" && k != "m" && k != "max_rel_err" &&
            k != "tol")
            os << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return os.str();
}

std::optional<std::filesystem::path> fixture_for(Kind k, int l, std::optional<int> m)
{
    std::vector<std::filesystem::path> files;
    try {
        files = fixture_files("paper");
    } catch (const UsageError&) {
        return std::nullopt;
    }
    for (auto& f : files) {
        std::ifstream in(f);
        Json fx = Json::parse(in);
        if (parse_kind(fx["kind"].get<std::string>()) != k || fx["rank"].get<int>() != l)
            continue;
        std::optional<int> fm;
        if (fx.contains("m"))
            fm = fx["m"].get<int>();
        if (fm == m)
            return f;
    }
    return std::nullopt;
}

int cmd_derive(const RunConfig& cfg)
{
    Kind k = exact_kind(cfg);
    FrobeniusData fd = build_frobenius(k, cfg.rank, cfg.m);
    emit(cfg, cfg.format == "text" ? frobenius_text(fd) : dump(fd.to_json()));
    return ok;
}

int verify_fixture_set(const RunConfig& cfg)
{
    Json reports = Json::array();
    bool pass = true;
    std::ostringstream text;
    for (auto& f : fixture_files(cfg.fixtures)) {
        FixtureReport r = check_fixture_file(f);
        pass = pass && r.pass();
        reports.push_back(r.to_json());
        text << (r.pass() ? "PASS " : "FAIL ") << r.fixture << "\n" << checks_text(r.to_json()["checks"], "  ");
    }
    Json j = {{"fixtures", cfg.fixtures}, {"reports", reports}, {"pass", pass}};
    emit(cfg, cfg.format == "text" ? text.str() : dump(j));
    return pass ? ok : check_failed;
}

int cmd_verify(const RunConfig& cfg)
{
    if (!cfg.fixtures.empty())
        return verify_fixture_set(cfg);
    Kind k = exact_kind(cfg);
    FrobeniusData fd = build_frobenius(k, cfg.rank, cfg.m);
    bool pass = true;
    Json j;
    j["kind"] = std::string(1, kind_char(k));
    j["rank"] = cfg.rank;
    if (cfg.m)
        j["m"] = *cfg.m;

    AxiomReport ax = verify_axioms(fd);
    pass = pass && ax.pass();
    j["axioms"] = ax.to_json();

    auto closed = k == Kind::A ? a_closed_form_checks(cfg.rank) : c_pencil_checks(cfg.rank, *cfg.m);
    pass = pass && all_pass(closed);
    j[k == Kind::A ? "closed_forms" : "pencil"] = checks_json(closed);

    int points = cfg.samples > 0 ? std::min(cfg.samples, 10) : 10;
    NumericReport cc = connection_cross_check(fd, points, cfg.seed, cfg.tol.value_or(1e-9));
    pass = pass && cc.pass;
    j["connection"] = cc.to_json();

    if (k == Kind::C)
        j["equivalence"] = equivalence_check(cfg.rank, *cfg.m).to_json();

    if (auto f = fixture_for(k, cfg.rank, cfg.m)) {
        std::ifstream in(*f);
        FixtureReport fr = compare_fixture(Json::parse(in), fd);
        pass = pass && fr.pass();
        j["fixture"] = fr.to_json();
    } else {
        j["fixture"] = nullptr;
    }
    j["pass"] = pass;

    if (cfg.format == "text") {
        std::ostringstream os;
        os << (pass ? "PASS" : "FAIL") << " " << j["kind"].get<std::string>() << cfg.rank;
        if (cfg.m)
            os << " m=" << *cfg.m;
        os << "\n" << checks_text(j["axioms"]["checks"], "  ");
        os << checks_text(j[k == Kind::A ? "closed_forms" : "pencil"], "  ");
        os << "  " << numeric_text(j["connection"]);
        if (j.contains("equivalence") && !j["equivalence"].is_null()) {
            auto& e = j["equivalence"];
            os << "  INFO equivalence with m=" << e["dual_m"].get<int>() << ": relabel "
               << (e["relabel_equal"].get<bool>() ? "equal" : "differs") << ", rescaled "
               << (e["rescaled_equal"].get<bool>() ? "equal" : "differs") << "\n";
        }
        if (j["fixture"].is_null())
            os << "  no printed fixture\n";
        else
            os << "  fixture " << j["fixture"]["fixture"].get<std::string>() << "\n"
               << checks_text(j["fixture"]["checks"], "    ");
        emit(cfg, os.str());
    } else {
        emit(cfg, dump(j));
    }
    return pass ? ok : check_failed;
}

int cmd_lg(const RunConfig& cfg)
{
    if (cfg.rank < 0)
        throw UsageError("--rank is required");
    if (cfg.samples < 1)
        throw UsageError("--samples must be positive");
    std::vector<NumericReport> reports;
    if (!cfg.bd_check.empty()) {
        Kind k = parse_kind(cfg.bd_check);
        if (k != Kind::B && k != Kind::D)
            throw UsageError("--bd-check takes b or d");
        reports.push_back(bd_reduction_check(k, cfg.rank, cfg.samples, cfg.seed, cfg.tol.value_or(1e-9)));
    } else {
        if (cfg.type.empty())
            throw UsageError("--type or --bd-check is required");
        Kind k = parse_kind(cfg.type);
        if (k != Kind::A && k != Kind::C)
            throw UsageError("superpotentials exist for types a and c");
        if (k == Kind::A && cfg.m)
            throw UsageError("--m applies to type c only");
        if (cfg.rank < (k == Kind::A ? 1 : 2))
            throw UsageError("rank too small");
        if (k == Kind::C && !cfg.m)
            throw UsageError("type c needs --m");
        if (cfg.m && (*cfg.m < 0 || *cfg.m > cfg.rank))
            throw UsageError("--m must satisfy 0 <= m <= rank");
        reports.push_back(lg_isomorphism_check(k, cfg.rank, cfg.m, cfg.samples, cfg.seed, cfg.tol.value_or(1e-8)));
        reports.push_back(lg_symmetry_check(k, cfg.rank, cfg.m, cfg.samples, cfg.seed));
    }
    bool pass = true;
    Json arr = Json::array();
    std::string text;
    for (auto& r : reports) {
        pass = pass && r.pass;
        arr.push_back(r.to_json());
        text += numeric_text(arr.back());
    }
    emit(cfg, cfg.format == "text" ? text : dump(Json{{"reports", arr}, {"pass", pass}}));
    return pass ? ok : check_failed;
}

int cmd_export(const RunConfig& cfg)
{
    const std::string& w = cfg.what;
    if (w == "roots") {
        if (cfg.type.empty() || cfg.rank < 0)
            throw UsageError("--type and --rank are required");
        emit(cfg, dump(build_root_system(parse_kind(cfg.type), cfg.rank).to_json()));
        return ok;
    }
    Kind k = exact_kind(cfg);
    if (w == "pencil") {
        Json j;
        if (k == Kind::A) {
            MetricPencil p = metric_pencil_a(cfg.rank);
            j["g_lambda"] = p.g_lambda.to_json();
            j["vars"] = table_to_json(*p.table);
        } else {
            ShiftedPencil sp = shift_to_pencil_c(cfg.rank, *cfg.m);
            j["spec"] = sp.spec.to_json();
            j["g_lambda"] = sp.pencil.g_lambda.to_json();
            j["vars"] = table_to_json(*sp.pencil.table);
        }
        emit(cfg, dump(j));
        return ok;
    }
    if (w == "chart") {
        emit(cfg, dump(flat_coords(k, cfg.rank, cfg.m).to_json()));
        return ok;
    }
    FrobeniusData fd = build_frobenius(k, cfg.rank, cfg.m);
    if (w == "F")
        emit(cfg, cfg.format == "text" ? fd.F.str() + "\n" : dump(fd.F.to_json()));
    else if (w == "frobenius")
        emit(cfg, cfg.format == "text" ? frobenius_text(fd) : dump(fd.to_json()));
    else
        throw UsageError("unknown --what " + w);
    return ok;
}

void add_common(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--type", cfg.type, "root system type")->check(CLI::IsMember({"a", "b", "c", "d", "A", "B", "C", "D"}));
    sub->add_option("--rank", cfg.rank, "rank");
    sub->add_option("--m", cfg.m, "pencil parameter (type c)");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

void add_numeric(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "number of samples");
    sub->add_option("--tol", cfg.tol, "tolerance");
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"frobkit: generalized Frobenius manifolds on affine Weyl group orbit spaces"};
    app.require_subcommand(1);

    auto* derive = app.add_subcommand("derive", "derive F, c, e, E, eta, g(t) and the coordinate chain");
    add_common(derive, cfg);

    auto* verify = app.add_subcommand("verify", "run axiom, closed-form, cross-check and fixture comparisons");
    add_common(verify, cfg);
    add_numeric(verify, cfg);
    verify->add_option("--fixtures", cfg.fixtures, "compare a fixture set, e.g. paper");

    auto* lg = app.add_subcommand("lg", "Landau-Ginzburg residue oracle and B/D reduction checks");
    add_common(lg, cfg);
    add_numeric(lg, cfg);
    lg->add_option("--bd-check", cfg.bd_check, "b or d: reduction onto the type c pencil");

    auto* exp = app.add_subcommand("export", "export one component");
    add_common(exp, cfg);
    exp->add_option("--what", cfg.what, "F, frobenius, chart, pencil or roots")
        ->check(CLI::IsMember({"F", "frobenius", "chart", "pencil", "roots"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (derive->parsed())
            return cmd_derive(cfg);
        if (verify->parsed())
            return cmd_verify(cfg);
        if (lg->parsed())
            return cmd_lg(cfg);
        return cmd_export(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return usage;
    } catch (const DegenerateError& e) {
        std::cerr << "numeric degeneracy: " << e.what() << "\n";
        return degenerate;
    } catch (const AlgebraError& e) {
        std::cerr << "internal assertion: " << e.what() << "\n";
        return internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}
