#include "frobkit/roots.hpp"

#include <numeric>

namespace frobkit {

char kind_char(Kind k) { return "ABCD"[int(k)]; }

Kind parse_kind(std::string_view s)
{
    if (s == "a" || s == "A")
        return Kind::A;
    if (s == "b" || s == "B")
        return Kind::B;
    if (s == "c" || s == "C")
        return Kind::C;
    if (s == "d" || s == "D")
        return Kind::D;
    throw UsageError("unknown root system type " + std::string(s));
}

Rational dot(const QVector& a, const QVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

QMatrix invert(const QMatrix& m)
{
    std::size_t n = m.size();
    QMatrix r(n, QVector(n));
    for (std::size_t j = 0; j < n; ++j) {
        QVector e(n, 0);
        e[j] = 1;
        auto s = solve_linear(m, e);
        if (!s.consistent || !s.free.empty())
            throw AlgebraError("singular matrix");
        for (std::size_t i = 0; i < n; ++i)
            r[i][j] = s.x[i];
    }
    return r;
}

int min_rank(Kind k)
{
    switch (k) {
    case Kind::A:
        return 1;
    case Kind::B:
    case Kind::C:
        return 2;
    case Kind::D:
        return 3;
    }
    return 1;
}

static QVector unit(std::size_t dim, std::size_t i, const Rational& s = 1)
{
    QVector v(dim, 0);
    v[i] = s;
    return v;
}

RootSystemData build_root_system(Kind kind, int l)
{
    if (l < min_rank(kind))
        throw UsageError(std::string("rank too small for type ") + kind_char(kind));
    RootSystemData rs;
    rs.kind = kind;
    rs.rank = l;
    std::size_t dim = kind == Kind::A ? l + 1 : l;
    for (int i = 0; i + 1 < l || (kind == Kind::A && i < l); ++i) {
        QVector a = unit(dim, i);
        a[i + 1] = -1;
        rs.simple_roots.push_back(a);
    }
    switch (kind) {
    case Kind::A:
        break;
    case Kind::B:
        rs.simple_roots.push_back(unit(dim, l - 1));
        break;
    case Kind::C:
        rs.simple_roots.push_back(unit(dim, l - 1, 2));
        break;
    case Kind::D: {
        QVector a(dim, 0);
        a[l - 2] = 1;
        a[l - 1] = 1;
        rs.simple_roots.push_back(a);
        break;
    }
    }
    for (auto& a : rs.simple_roots) {
        Rational f = Rational(2) / dot(a, a);
        QVector c = a;
        for (auto& x : c)
            x *= f;
        rs.coroots.push_back(c);
    }
    rs.coroot_gram.assign(l, QVector(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            rs.coroot_gram[i][j] = dot(rs.coroots[i], rs.coroots[j]);
    rs.dual_metric = invert(rs.coroot_gram);

    // omega_i = sum_k M_ik alpha_k with (omega_i, alpha_j^v) = delta_ij
    QMatrix pair(l, QVector(l));
    for (int k = 0; k < l; ++k)
        for (int j = 0; j < l; ++j)
            pair[j][k] = dot(rs.simple_roots[k], rs.coroots[j]);
    QMatrix pinv = invert(pair);
    for (int i = 0; i < l; ++i) {
        QVector w(dim, 0);
        for (int k = 0; k < l; ++k)
            for (std::size_t x = 0; x < dim; ++x)
                w[x] += pinv[k][i] * rs.simple_roots[k][x];
        rs.fundamental_weights.push_back(w);
    }
    rs.omega_index = kind == Kind::A ? l : 1;
    rs.omega = rs.fundamental_weights[rs.omega_index - 1];
    for (int j = 0; j < l; ++j)
        rs.theta.push_back(dot(rs.fundamental_weights[j], rs.omega));
    mpz_class g = 0;
    for (int r = 0; r < l; ++r) {
        Rational p = dot(rs.omega, rs.simple_roots[r]);
        if (p.get_den() != 1)
            throw AlgebraError("non-integral pairing in kappa");
        mpz_class num = p.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    rs.kappa = Rational(g);
    for (int r = 0; r < l; ++r)
        rs.multiplicities.push_back(dot(rs.omega, rs.coroots[r]));
    return rs;
}

std::vector<Rational> degree_vector(const RootSystemData& rs, std::optional<int> m)
{
    int l = rs.rank;
    std::vector<Rational> d;
    if (rs.kind == Kind::A) {
        for (int a = 1; a <= l; ++a)
            d.push_back(frac(a, l + 1));
        return d;
    }
    if (rs.kind != Kind::C)
        throw UsageError("flat-coordinate degrees are only defined for types A and C");
    if (!m || *m < 0 || *m > l)
        throw UsageError("pencil parameter m out of range");
    int n = l - *m;
    for (int a = 1; a <= n; ++a)
        d.push_back(frac(2 * (n - a) + 1, 2 * n));
    for (int b = n + 1; b <= l; ++b)
        d.push_back(frac(2 * (l - b) + 1, 2 * *m));
    return d;
}

static nlohmann::json qvec(const QVector& v)
{
    auto j = nlohmann::json::array();
    for (auto& x : v)
        j.push_back(to_string(x));
    return j;
}

nlohmann::json RootSystemData::to_json() const
{
    nlohmann::json j;
    j["kind"] = std::string(1, kind_char(kind));
    j["rank"] = rank;
    auto list = [](const std::vector<QVector>& vs) {
        auto a = nlohmann::json::array();
        for (auto& v : vs)
            a.push_back(qvec(v));
        return a;
    };
    j["simple_roots"] = list(simple_roots);
    j["coroots"] = list(coroots);
    j["fundamental_weights"] = list(fundamental_weights);
    j["omega_index"] = omega_index;
    j["dual_metric"] = list(dual_metric);
    j["theta"] = qvec(theta);
    j["kappa"] = to_string(kappa);
    j["multiplicities"] = qvec(multiplicities);
    return j;
}

}  // namespace frobkit
