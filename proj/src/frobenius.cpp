#include "frobkit/frobenius.hpp"

#include <Eigen/Dense>
#include <random>

namespace frobkit {

QMatrix rational_inverse(const QMatrix& m) { return invert(m); }

Poly potential_from_intersection(const PolyMatrix& g, const QMatrix& eta, const std::vector<Rational>& d)
{
    std::size_t n = d.size();
    QMatrix low = invert(eta);
    TablePtr t = g.table();
    PolyMatrix M(t, n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Poly s(t);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t z = 0; z < n; ++z)
                    if (low[a][x] != 0 && low[b][z] != 0)
                        s += (low[a][x] * low[b][z]) * g(x, z);
            Rational w = 2 - d[a] - d[b];
            if (w == 0)
                throw AlgebraError("potential: 2 - d_a - d_b vanishes");
            M(a, b) = (1 / w) * s;
        }
    return euler_integrate(M, d);
}

std::vector<PolyMatrix> structure_constants(const Poly& F, const QMatrix& eta)
{
    TablePtr t = F.table();
    std::size_t n = eta.size();
    std::vector<Poly> d1;
    for (std::size_t a = 0; a < n; ++a)
        d1.push_back(F.partial(a));
    std::vector<PolyMatrix> c(n, PolyMatrix(t, n, n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Poly dab = d1[a].partial(b);
            std::vector<Poly> third;
            for (std::size_t x = 0; x < n; ++x)
                third.push_back(dab.partial(x));
            for (std::size_t gm = 0; gm < n; ++gm) {
                Poly s(t);
                for (std::size_t x = 0; x < n; ++x)
                    if (eta[gm][x] != 0)
                        s += eta[gm][x] * third[x];
                c[gm](a, b) = s;
                c[gm](b, a) = s;
            }
        }
    return c;
}

std::pair<std::vector<Poly>, Poly> unit_field(const Poly& r, const QMatrix& eta)
{
    std::size_t n = eta.size();
    std::vector<Poly> num(n, Poly(r.table()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (eta[a][b] != 0)
                num[a] -= eta[a][b] * r.partial(b);
    return {num, r};
}

FrobeniusData build_frobenius(const FlatChart& chart)
{
    FrobeniusData fd;
    fd.chart = chart;
    fd.degrees = chart.degrees;
    fd.eta = chart.eta_flat;
    fd.eta_low = invert(fd.eta);
    fd.g = chart.g_t();
    fd.F = potential_from_intersection(fd.g, fd.eta, fd.degrees);
    fd.c = structure_constants(fd.F, fd.eta);
    // z^l for type A, z^1 for type C
    std::size_t r0 = chart.kind == Kind::A ? chart.l - 1 : 0;
    auto [num, den] = unit_field(chart.base_in_t[r0], fd.eta);
    fd.e_num = num;
    fd.e_den = den;
    return fd;
}

FrobeniusData build_frobenius(Kind kind, int l, std::optional<int> m) { return build_frobenius(flat_coords(kind, l, m)); }

static nlohmann::json qjson(const QMatrix& q)
{
    auto e = nlohmann::json::array();
    for (auto& row : q) {
        auto r = nlohmann::json::array();
        for (auto& x : row)
            r.push_back(to_string(x));
        e.push_back(r);
    }
    return e;
}

nlohmann::json FrobeniusData::to_json() const
{
    nlohmann::json j;
    j["kind"] = std::string(1, kind_char(chart.kind));
    j["rank"] = chart.l;
    if (chart.m >= 0)
        j["m"] = chart.m;
    j["charge"] = to_string(charge);
    j["flat_vars"] = table_to_json(*t());
    auto d = nlohmann::json::array();
    for (auto& x : degrees)
        d.push_back(to_string(x));
    j["degrees"] = d;
    j["eta"] = qjson(eta);
    j["g"] = g.to_json();
    j["F"] = F.str();
    j["F_json"] = F.to_json();
    auto cj = nlohmann::json::object();
    for (std::size_t gm = 0; gm < c.size(); ++gm)
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a; b < c.size(); ++b)
                if (!c[gm](a, b).is_zero())
                    cj["c^" + std::to_string(gm + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1)] =
                        c[gm](a, b).str();
    j["c"] = cj;
    auto en = nlohmann::json::array();
    for (auto& p : e_num)
        en.push_back(p.str());
    j["e"] = {{"numerators", en}, {"denominator", e_den.str()}};
    auto E = nlohmann::json::object();
    for (std::size_t a = 0; a < degrees.size(); ++a)
        E[(*t())[a].name] = to_string(degrees[a]);
    j["E"] = E;
    j["chart"] = chart.to_json();
    return j;
}

bool AxiomReport::pass() const
{
    for (auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

nlohmann::json AxiomReport::to_json() const
{
    auto a = nlohmann::json::array();
    for (auto& c : checks) {
        nlohmann::json j{{"check", c.name}, {"pass", c.pass}};
        if (!c.detail.empty())
            j["detail"] = c.detail;
        a.push_back(j);
    }
    return {{"checks", a}, {"pass", pass()}};
}

static std::string first_term(const Poly& p)
{
    if (p.is_zero())
        return "0";
    auto terms = ordered_terms(p);
    return Poly::monomial(p.table(), terms.front().first, terms.front().second).str();
}

static std::string idx(std::initializer_list<std::size_t> v)
{
    std::string s = "(";
    bool first = true;
    for (auto x : v) {
        if (!first)
            s += ",";
        s += std::to_string(x + 1);
        first = false;
    }
    return s + ")";
}

AxiomReport verify_axioms(const FrobeniusData& fd)
{
    AxiomReport rep;
    std::size_t n = fd.degrees.size();
    TablePtr t = fd.F.table();
    const auto& c = fd.c;

    CheckResult wdvv{"wdvv", true, {}};
    for (std::size_t a = 0; a < n && wdvv.pass; ++a)
        for (std::size_t b = 0; b < n && wdvv.pass; ++b)
            for (std::size_t g = b + 1; g < n && wdvv.pass; ++g)
                for (std::size_t v = 0; v < n && wdvv.pass; ++v) {
                    Poly lhs(t), rhs(t);
                    for (std::size_t mu = 0; mu < n; ++mu) {
                        if (!c[mu](a, b).is_zero() && !c[v](mu, g).is_zero())
                            lhs += c[mu](a, b) * c[v](mu, g);
                        if (!c[mu](a, g).is_zero() && !c[v](mu, b).is_zero())
                            rhs += c[mu](a, g) * c[v](mu, b);
                    }
                    Poly diff = lhs - rhs;
                    if (!diff.is_zero()) {
                        wdvv.pass = false;
                        wdvv.detail = "indices " + idx({a, b, g, v}) + ": leading term " + first_term(diff);
                    }
                }
    rep.checks.push_back(wdvv);

    CheckResult unit{"unit", true, {}};
    for (std::size_t a = 0; a < n && unit.pass; ++a)
        for (std::size_t g = 0; g < n && unit.pass; ++g) {
            Poly s(t);
            for (std::size_t b = 0; b < n; ++b)
                if (!fd.e_num[b].is_zero() && !c[g](b, a).is_zero())
                    s += fd.e_num[b] * c[g](b, a);
            if (a == g)
                s -= fd.e_den;
            if (!s.is_zero()) {
                unit.pass = false;
                unit.detail = "component " + idx({g, a}) + ": leading term " + first_term(s);
            }
        }
    rep.checks.push_back(unit);

    CheckResult euler{"euler", true, {}};
    Poly EF(t);
    for (std::size_t a = 0; a < n; ++a)
        EF += fd.degrees[a] * Poly::var(t, a) * fd.F.partial(a);
    Poly ed = EF - Rational(2) * fd.F;
    if (!ed.is_zero()) {
        euler.pass = false;
        euler.detail = "E(F) - 2F has leading term " + first_term(ed);
    }
    rep.checks.push_back(euler);

    CheckResult sym{"symmetry", true, {}};
    std::vector<std::vector<std::vector<Poly>>> low(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly(t))));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t x = 0; x < n; ++x)
                    if (fd.eta_low[g][x] != 0)
                        low[a][b][g] += fd.eta_low[g][x] * c[x](a, b);
    for (std::size_t a = 0; a < n && sym.pass; ++a)
        for (std::size_t b = 0; b < n && sym.pass; ++b)
            for (std::size_t g = 0; g < n && sym.pass; ++g)
                if (low[a][b][g] != low[b][a][g] || low[a][b][g] != low[a][g][b]) {
                    sym.pass = false;
                    sym.detail = "eta.c not symmetric at " + idx({a, b, g});
                }
    rep.checks.push_back(sym);

    CheckResult deg{"degrees", true, {}};
    auto fail = [&](const std::string& what) {
        if (deg.pass) {
            deg.pass = false;
            deg.detail = what;
        }
    };
    if (!fd.F.is_zero() && !fd.F.is_homogeneous(2))
        fail("F is not of degree 2");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!fd.g(a, b).is_zero() && !fd.g(a, b).is_homogeneous(fd.degrees[a] + fd.degrees[b]))
                fail("g" + idx({a, b}) + " has the wrong degree");
            if (fd.eta[a][b] != 0 && fd.degrees[a] + fd.degrees[b] != 1)
                fail("eta" + idx({a, b}) + " pairs degrees not summing to 1");
            for (std::size_t g = 0; g < n; ++g)
                if (!c[g](a, b).is_zero() && !c[g](a, b).is_homogeneous(1 - fd.degrees[a] - fd.degrees[b] + fd.degrees[g]))
                    fail("c^" + std::to_string(g + 1) + "_" + std::to_string(a + 1) + std::to_string(b + 1) +
                         " has the wrong degree");
        }
    if (!fd.e_den.is_homogeneous())
        fail("unit denominator is not homogeneous");
    else
        for (std::size_t a = 0; a < n; ++a)
            if (!fd.e_num[a].is_zero() && !fd.e_num[a].is_homogeneous(fd.e_den.degree() + fd.degrees[a] - 1))
                fail("e^" + std::to_string(a + 1) + " has the wrong degree");
    rep.checks.push_back(deg);
    return rep;
}

NumericReport connection_cross_check(const FrobeniusData& fd, int points, std::uint64_t seed, double tol)
{
    using CM = Eigen::MatrixXcd;
    std::size_t n = fd.degrees.size();
    NumericReport r;
    r.check = "connection_formula";
    r.kind = kind_char(fd.chart.kind);
    r.rank = fd.chart.l;
    if (fd.chart.m >= 0)
        r.m = fd.chart.m;
    r.samples = points;
    r.seed = seed;
    r.tol = tol;

    std::vector<PolyMatrix> dg;
    for (std::size_t z = 0; z < n; ++z)
        dg.push_back(fd.g.partial(z));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.5, 1.5), ang(0.0, 2 * M_PI);
    auto ev = [](const PolyMatrix& M, const std::vector<cplx>& x) {
        CM out(M.rows(), M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j)
                out(i, j) = M(i, j).eval(x);
        return out;
    };
    for (int s = 0; s < points; ++s) {
        std::vector<cplx> x(n);
        for (auto& v : x)
            v = std::polar(rad(rng), ang(rng));
        CM gu = ev(fd.g, x);
        CM gl = gu.inverse();
        // derivatives of the covariant metric
        std::vector<CM> dgl(n);
        for (std::size_t z = 0; z < n; ++z)
            dgl[z] = -gl * ev(dg[z], x) * gl;
        // Gamma^k_{ij}
        std::vector<CM> G(n, CM::Zero(n, n));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    cplx acc = 0;
                    for (std::size_t l = 0; l < n; ++l)
                        acc += gu(k, l) * (dgl[i](l, j) + dgl[j](l, i) - dgl[l](i, j));
                    G[k](i, j) = 0.5 * acc;
                }
        // contravariant Gamma^{nu rho}_zeta = -g^{nu sigma} Gamma^rho_{sigma zeta}
        std::vector<CM> Gc(n, CM::Zero(n, n));  // Gc[zeta](nu, rho)
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t nu = 0; nu < n; ++nu)
                for (std::size_t rho = 0; rho < n; ++rho) {
                    cplx acc = 0;
                    for (std::size_t sg = 0; sg < n; ++sg)
                        acc -= gu(nu, sg) * G[rho](sg, z);
                    Gc[z](nu, rho) = acc;
                }
        double num = 0, den = 0;
        for (std::size_t gm = 0; gm < n; ++gm)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    cplx acc = 0;
                    for (std::size_t nu = 0; nu < n; ++nu) {
                        if (fd.eta_low[a][nu] == 0)
                            continue;
                        for (std::size_t rho = 0; rho < n; ++rho) {
                            if (fd.eta_low[b][rho] == 0)
                                continue;
                            for (std::size_t z = 0; z < n; ++z)
                                if (fd.eta[gm][z] != 0)
                                    acc += Rational(fd.eta_low[a][nu] * fd.eta_low[b][rho] * fd.eta[gm][z] / fd.degrees[rho]).get_d() *
                                           Gc[z](nu, rho);
                        }
                    }
                    cplx exact = fd.c[gm](a, b).eval(x);
                    num = std::max(num, std::abs(acc - exact));
                    den = std::max(den, std::abs(exact));
                }
        r.max_rel_err = std::max(r.max_rel_err, num / std::max(den, 1e-300));
    }
    r.pass = r.max_rel_err <= tol;
    return r;
}


nlohmann::json EquivalenceReport::to_json() const
{
    nlohmann::json j;
    j["rank"] = l;
    j["m"] = m;
    j["dual_m"] = l - m;
    j["relabel_equal"] = relabel_equal;
    j["rescaled_equal"] = rescaled_equal;
    j["scale_block1"] = to_string(nu1);
    j["scale_block2"] = to_string(nu2);
    j["detail"] = detail;
    return j;
}

// 4^k for integer k, nullopt otherwise
static std::optional<Rational> four_pow(const Rational& k)
{
    if (k.get_den() != 1)
        return std::nullopt;
    long e = k.get_num().get_si();
    return rational_pow(4, int(e));
}

EquivalenceReport equivalence_check(int l, int m)
{
    if (m < 0 || m > l)
        throw UsageError("m must satisfy 0 <= m <= rank");
    EquivalenceReport rep;
    rep.l = l;
    rep.m = m;
    FrobeniusData A = build_frobenius(Kind::C, l, m);
    FrobeniusData B = build_frobenius(Kind::C, l, l - m);
    int n = l - m;
    // the first block of B (size m) lands on the second block of A
    std::vector<Poly> img;
    for (int b = 0; b < l; ++b)
        img.push_back(Poly::var(A.t(), b < m ? n + b : b - m));
    Poly Bp = B.F.subst(img, A.t());
    rep.relabel_equal = Bp == A.F;

    // t^a -> nu_b^{d_a - 1/2} t^a on block b keeps eta and multiplies a monomial by
    // nu1^{q1} nu2^{q2}, q_b = sum over block b of e_a (d_a - 1/2); nu1 = 1/4, nu2 = 4
    Poly scaled(A.t());
    bool ok = true;
    Rational half = frac(1, 2);
    for (auto& [e, c] : A.F.terms()) {
        Rational q1 = 0, q2 = 0;
        for (int a = 0; a < l; ++a)
            (a < n ? q1 : q2) += e[a] * (A.degrees[a] - half);
        auto f = four_pow(q2 - q1);
        if (!f) {
            ok = false;
            rep.detail = "irrational rescaling factor at a monomial of F";
            break;
        }
        scaled.add_term(e, c * *f);
    }
    rep.rescaled_equal = ok && scaled == Bp;
    if (ok && !rep.rescaled_equal) {
        auto d = ordered_terms(Bp - scaled);
        rep.detail = "rescaled potentials differ at " + Poly::monomial(A.t(), d.front().first, d.front().second).str();
    }
    if (!rep.relabel_equal && rep.detail.empty()) {
        auto d = ordered_terms(Bp - A.F);
        rep.detail = "relabel alone differs at " + Poly::monomial(A.t(), d.front().first, d.front().second).str();
    }
    return rep;
}

}  // namespace frobkit
