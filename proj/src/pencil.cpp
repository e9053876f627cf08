#include "frobkit/pencil.hpp"

namespace frobkit {

UPoly upoly_mul(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

UPoly upoly_pow_linear(const Rational& shift, int k)
{
    UPoly r{1};
    for (int i = 0; i < k; ++i)
        r = upoly_mul(r, UPoly{shift, 1});
    return r;
}

static Rational coeff(const UPoly& p, int k) { return k >= 0 && k < int(p.size()) ? p[k] : Rational(0); }

PencilSpec pencil_spec(int l, int m)
{
    if (l < 1 || m < 0 || m > l)
        throw UsageError("pencil parameter m must satisfy 0 <= m <= rank");
    PencilSpec s;
    s.l = l;
    s.m = m;
    s.P1 = upoly_mul(upoly_pow_linear(2, m), upoly_pow_linear(-2, l - m));
    s.P2 = upoly_mul(upoly_pow_linear(-2, m), upoly_pow_linear(2, l - m));
    s.P0 = s.P1;
    for (auto& x : s.P0)
        x = -x;
    s.P0[l] += 1;
    if (s.P0[l] != 0)
        throw AlgebraError("P0 has degree l");
    s.P0.resize(l);
    for (int j = 1; j <= l; ++j)
        s.c.push_back(coeff(s.P0, l - j));
    return s;
}

static nlohmann::json upoly_json(const UPoly& p)
{
    auto j = nlohmann::json::array();
    for (auto& x : p)
        j.push_back(to_string(x));
    return j;
}

nlohmann::json PencilSpec::to_json() const
{
    nlohmann::json j;
    j["rank"] = l;
    j["m"] = m;
    j["c"] = upoly_json(c);
    j["P0"] = upoly_json(P0);
    j["P1"] = upoly_json(P1);
    j["P2"] = upoly_json(P2);
    return j;
}

Split split_pencil(const PolyMatrix& gl, std::size_t li, const TablePtr& coords)
{
    Split s{PolyMatrix(coords, gl.rows(), gl.cols()), PolyMatrix(coords, gl.rows(), gl.cols())};
    for (std::size_t i = 0; i < gl.rows(); ++i)
        for (std::size_t j = 0; j < gl.cols(); ++j) {
            const Poly& p = gl(i, j);
            if (p.max_exponent(li) > 1)
                throw AlgebraError("split_pencil: lambda-degree exceeds 1");
            s.g(i, j) = p.coefficient(li, 0).rebase(coords);
            s.eta(i, j) = p.coefficient(li, 1).rebase(coords);
        }
    if (!s.g.is_symmetric() || !s.eta.is_symmetric())
        throw AlgebraError("split_pencil: asymmetric result");
    return s;
}

ShiftedPencil shift_to_pencil_c(int l, int m)
{
    ShiftedPencil sp;
    sp.spec = pencil_spec(l, m);
    MetricPencil y = metric_pencil_c(l);
    TablePtr zt = pencil_table_c(l, "z");
    std::vector<Poly> img;
    Poly lam = Poly::var(zt, l);
    for (int j = 0; j < l; ++j)
        img.push_back(Poly::var(zt, j) - sp.spec.c[j] * lam);
    img.push_back(lam);
    sp.pencil.table = zt;
    sp.pencil.n = l;
    sp.pencil.g_lambda = y.g_lambda.subst(img, zt);
    for (auto& G : y.christoffel)
        sp.pencil.christoffel.push_back(G.subst(img, zt));
    for (std::size_t i = 0; i < std::size_t(l); ++i)
        for (std::size_t j = 0; j < std::size_t(l); ++j) {
            if (sp.pencil.g_lambda(i, j).max_exponent(l) > 1)
                throw AlgebraError("residual lambda^2 term after the pencil shift");
            for (auto& G : sp.pencil.christoffel)
                if (G(i, j).max_exponent(l) > 1)
                    throw AlgebraError("residual lambda^2 term in the shifted connection");
        }
    sp.z = make_table(numbered("z", l, 1));
    auto s = split_pencil(sp.pencil.g_lambda, l, sp.z);
    sp.g = s.g;
    sp.eta = s.eta;
    return sp;
}

TablePtr tau_table(int l, int m, const std::string& prefix)
{
    auto v = numbered(prefix, l, 1);
    int n = l - m;
    if (n >= 1)
        v[n - 1].invertible = true;
    v[l - 1].invertible = true;
    return make_table(std::move(v));
}

PolyMatrix tau_block_form(int l, int m, const TablePtr& t, bool simplified)
{
    int n = l - m;
    PolyMatrix E(t, l, l);
    auto x = [&](int k) { return Poly::var(t, k - 1); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; i + j - 1 <= n; ++j) {
            int s = i + j - 1;
            Poly R = Rational(4 * s) * x(s);
            if (!simplified && s != n)
                R += Rational(s + 1) * x(s + 1);
            E(i - 1, j - 1) = R;
        }
    for (int i = 1; i <= m; ++i)
        for (int j = 1; i + j - 1 <= m; ++j) {
            int r = i + j - 1;
            Poly S = Rational(4 * r) * x(n + r);
            if (!simplified && r != m)
                S -= Rational(4 * r) * x(n + r + 1);
            E(n + i - 1, n + j - 1) = S;
        }
    return E;
}

TauChange tau_change_c(const ShiftedPencil& sp)
{
    int l = sp.spec.l, m = sp.spec.m, n = l - m;
    TablePtr tt = tau_table(l, m);
    // columns: z-coefficients of each tau^j
    QMatrix M(l, QVector(l, 0));
    for (int j = 1; j <= l; ++j) {
        UPoly b = j <= n ? upoly_mul(upoly_pow_linear(2, m), upoly_pow_linear(-2, n - j))
                         : upoly_mul(upoly_pow_linear(2, l - j), upoly_pow_linear(-2, j - 1));
        Rational sign = j <= n ? 1 : -1;
        for (int i = 1; i <= l; ++i)
            M[i - 1][j - 1] = sign * coeff(b, l - i);
    }
    QMatrix Minv = invert(M);
    TauChange tc;
    tc.map.source = sp.z;
    tc.map.target = tt;
    for (int i = 0; i < l; ++i) {
        Poly zi(tt), ti(sp.z);
        for (int j = 0; j < l; ++j) {
            zi += M[i][j] * Poly::var(tt, j);
            ti += Minv[i][j] * Poly::var(sp.z, j);
        }
        tc.map.inverse.push_back(zi);
        tc.map.forward.push_back(ti);
    }
    if (!tc.map.check_round_trip())
        throw AlgebraError("tau change round trip failed");
    tc.eta_tau = pushforward_metric(tc.map, sp.eta);
    tc.expected = tau_block_form(l, m, tt, false);
    tc.det = determinant(tc.eta_tau);

    Exponent e(l, 0);
    Rational mag = rational_pow(4, l);
    if (m == 0 || m == l) {
        mag *= rational_pow(l, l);
        e[l - 1] = l;
        tc.det_sign_exponent = l * (l - 1) / 2;
    } else {
        mag *= rational_pow(m, m) * rational_pow(n, n);
        e[n - 1] = n;
        e[l - 1] += m;
        tc.det_sign_exponent = (l * l - (2 * m + 1) * l + 2 * m * m) / 2;
    }
    tc.det_expected_abs = Poly::monomial(tt, e, mag);
    tc.det_abs_ok = tc.det.size() == 1 && tc.det.terms().begin()->first == e && abs(tc.det.terms().begin()->second) == mag;
    Rational sign = tc.det_sign_exponent % 2 ? -1 : 1;
    tc.det_sign_ok = tc.det_abs_ok && tc.det.terms().begin()->second == sign * mag;
    return tc;
}

}  // namespace frobkit
