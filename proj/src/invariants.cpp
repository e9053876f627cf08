#include "frobkit/invariants.hpp"

#include <cmath>
#include <sstream>

namespace frobkit {

TablePtr pencil_table_a(int l)
{
    std::vector<Variable> v;
    for (int j = 1; j <= l; ++j)
        v.push_back({"y" + std::to_string(j), frac(j, l + 1), false});
    v.push_back({"lambda", 1, false});
    return make_table(std::move(v));
}

TablePtr pencil_table_c(int l, const std::string& prefix)
{
    auto v = numbered(prefix, l, 1);
    v.push_back({"lambda", 1, false});
    return make_table(std::move(v));
}

static void check_lambda_linear(const MetricPencil& p)
{
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = 0; j < p.n; ++j)
            if (p.g_lambda(i, j).max_exponent(p.lambda_index()) > 1)
                throw AlgebraError("lambda-degree exceeds 1 in g_lambda(" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")");
}

MetricPencil metric_pencil_a(int l)
{
    if (l < 1)
        throw UsageError("rank must be positive");
    std::size_t N = l + 1;
    TablePtr u = make_table(numbered("u", int(N), frac(1, l + 1)));
    TablePtr t = pencil_table_a(l);

    // X[a][r] = u_r sigma_{a-1}(u without u_r)
    std::vector<std::vector<Poly>> X(l + 1, std::vector<Poly>(N, Poly(u)));
    for (std::size_t r = 0; r < N; ++r) {
        std::vector<std::size_t> others;
        for (std::size_t k = 0; k < N; ++k)
            if (k != r)
                others.push_back(k);
        for (int a = 1; a <= l; ++a)
            X[a][r] = Poly::var(u, r) * elementary(u, others, a - 1);
    }
    std::vector<Poly> S(l + 1, Poly(u));
    for (int a = 1; a <= l; ++a)
        for (std::size_t r = 0; r < N; ++r)
            S[a] += X[a][r];

    std::vector<Poly> targets;
    for (int j = 0; j < l; ++j)
        targets.push_back(Poly::var(t, j));
    targets.push_back(Poly::var(t, l));

    MetricPencil p;
    p.table = t;
    p.n = l;
    p.g_lambda = PolyMatrix(t, l, l);
    for (int a = 1; a <= l; ++a)
        for (int b = a; b <= l; ++b) {
            Poly s(u);
            for (std::size_t r = 0; r < N; ++r)
                s += X[a][r] * X[b][r];
            s -= frac(1, l + 1) * (S[a] * S[b]);
            Poly g = reduce_symmetric(-s, targets, t);
            if (!g.is_zero() && !g.is_homogeneous(frac(a + b, l + 1)))
                throw AlgebraError("g_lambda entry has the wrong degree");
            p.g_lambda(a - 1, b - 1) = g;
            p.g_lambda(b - 1, a - 1) = g;
        }
    check_lambda_linear(p);
    for (int a = 1; a <= l; ++a)
        for (int b = 1; a + b <= l; ++b)
            if (p.g_lambda(a - 1, b - 1).max_exponent(l) > 0)
                throw AlgebraError("lambda appears below the anti-diagonal");
    return p;
}

Poly divide_linear(const Poly& p, std::size_t x, const Poly& r)
{
    int d = p.max_exponent(x);
    if (p.is_zero())
        return p;
    if (p.min_exponent(x) < 0)
        throw AlgebraError("divide_linear: negative power");
    Poly xv = Poly::var(p.table(), x);
    std::vector<Poly> q(d + 1, Poly(p.table()));
    // n_k = q_{k-1} - r q_k
    Poly carry(p.table());
    for (int k = d; k >= 1; --k) {
        carry = p.coefficient(x, k) + r * carry;
        q[k - 1] = carry;
    }
    Poly rem = p.coefficient(x, 0) + r * carry;
    if (!rem.is_zero())
        throw AlgebraError("nonzero remainder in exact division: " + rem.str());
    Poly out(p.table());
    for (int k = 0; k < d; ++k)
        out += q[k] * xv.pow(k);
    return out;
}

namespace {

struct CWork {
    int l;
    TablePtr w;  // y1..yl, lambda, u, v
    std::size_t iu, iv;
    Poly P(std::size_t var) const
    {
        Poly x = Poly::var(w, var);
        Poly p = Poly::var(w, l) * x.pow(l);
        for (int j = 1; j <= l; ++j)
            p += Poly::var(w, j - 1) * x.pow(l - j);
        return p;
    }
    // coefficient of u^{l-i} v^{l-j}, moved to the pencil table
    Poly extract(const Poly& G, int i, int j, const TablePtr& target) const
    {
        Poly c = G.coefficient(iu, l - i).coefficient(iv, l - j);
        std::vector<Poly> img;
        for (int k = 0; k <= l; ++k)
            img.push_back(Poly::var(target, k));
        img.push_back(Poly(target));
        img.push_back(Poly(target));
        return c.subst(img, target);
    }
};

CWork c_work(int l)
{
    auto v = numbered("y", l, 1);
    v.push_back({"lambda", 1, false});
    v.push_back({"u", 0, false});
    v.push_back({"v", 0, false});
    CWork c{l, make_table(std::move(v)), std::size_t(l + 1), std::size_t(l + 2)};
    return c;
}

}  // namespace

MetricPencil metric_pencil_c(int l)
{
    if (l < 1)
        throw UsageError("rank must be positive");
    CWork W = c_work(l);
    TablePtr t = pencil_table_c(l);
    Poly u = Poly::var(W.w, W.iu), v = Poly::var(W.w, W.iv);
    Poly Pu = W.P(W.iu), Pv = W.P(W.iv);
    Poly dPu = Pu.partial(W.iu), dPv = Pv.partial(W.iv);
    Poly four(W.w, 4);
    Poly num = (u * u - four) * dPu * Pv - (v * v - four) * Pu * dPv;
    Poly G = Rational(-l) * (Pu * Pv) + divide_linear(num, W.iu, v);

    MetricPencil p;
    p.table = t;
    p.n = l;
    p.g_lambda = PolyMatrix(t, l, l);
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j)
            p.g_lambda(i - 1, j - 1) = W.extract(G, i, j, t);
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j)
            if ((i == 0 || j == 0) && !G.coefficient(W.iu, l - i).coefficient(W.iv, l - j).is_zero())
                throw AlgebraError("generating function has terms outside the coordinate range");
    if (!p.g_lambda.is_symmetric())
        throw AlgebraError("C-type g_lambda not symmetric");
    p.christoffel = christoffel_c(l, t);
    return p;
}

std::vector<PolyMatrix> christoffel_c(int l, const TablePtr& t)
{
    CWork W = c_work(l);
    Poly u = Poly::var(W.w, W.iu), v = Poly::var(W.w, W.iv);
    Poly Pu = W.P(W.iu), Pv = W.P(W.iv);
    Poly dPu = Pu.partial(W.iu);
    Poly four(W.w, 4);
    std::vector<PolyMatrix> out;
    for (int k = 1; k <= l; ++k) {
        Poly dP_u = u.pow(l - k), dP_v = v.pow(l - k);
        Poly dPp_v = (l - k) ? Rational(l - k) * v.pow(l - k - 1) : Poly(W.w);
        Poly n1 = (u * u - four) * dPu * dP_v - (v * v - four) * Pu * dPp_v;
        Poly n2 = (u * v - four) * (Pv * dP_u - Pu * dP_v);
        Poly combined = (u - v) * n1 + n2;
        Poly G = Rational(-l) * (Pu * dP_v) + divide_linear(divide_linear(combined, W.iu, v), W.iu, v);
        PolyMatrix m(t, l, l);
        for (int i = 1; i <= l; ++i)
            for (int j = 1; j <= l; ++j)
                m(i - 1, j - 1) = W.extract(G, i, j, t);
        out.push_back(m);
    }
    return out;
}

cplx AffineSample::lambda() const { return std::polar(1.0, -2 * M_PI * c); }

AffineSample random_sample(Kind kind, int l, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    AffineSample s;
    int n = kind == Kind::A ? l + 1 : l;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double x = U(rng);
        if (kind == Kind::A && i == l)
            x = -sum;
        sum += x;
        s.xi.push_back(x);
    }
    do
        s.c = U(rng);
    while (s.c == 0);
    return s;
}

std::vector<cplx> elementary_numeric(const std::vector<cplx>& x)
{
    std::vector<cplx> e(x.size() + 1, 0);
    e[0] = 1;
    for (auto& v : x)
        for (std::size_t j = x.size(); j >= 1; --j)
            e[j] += e[j - 1] * v;
    return e;
}

static std::vector<cplx> generators_at(Kind kind, int l, const std::vector<cplx>& xi, double c)
{
    const cplx I(0, 1);
    cplx lam = std::exp(-2.0 * M_PI * I * c);
    cplx half = std::exp(-M_PI * I * c);
    std::vector<cplx> y;
    if (kind == Kind::A) {
        cplx mu = std::exp(-2.0 * M_PI * I * c / double(l + 1));
        std::vector<cplx> x;
        for (auto& v : xi)
            x.push_back(std::exp(2.0 * M_PI * I * v));
        auto e = elementary_numeric(x);
        for (int j = 1; j <= l; ++j)
            y.push_back(std::pow(mu, j) * e[j]);
        return y;
    }
    std::vector<cplx> zeta, zt, zp, zm;
    for (auto& v : xi) {
        cplx a = std::exp(2.0 * M_PI * I * v), b = std::exp(M_PI * I * v);
        zeta.push_back(a + 1.0 / a);
        zp.push_back(b + 1.0 / b);
        zm.push_back(b - 1.0 / b);
    }
    auto e = elementary_numeric(zeta);
    int plain = kind == Kind::C ? l : kind == Kind::B ? l - 1 : l - 2;
    for (int j = 1; j <= plain; ++j)
        y.push_back(lam * e[j]);
    if (kind == Kind::B)
        y.push_back(half * elementary_numeric(zp)[l]);
    if (kind == Kind::D) {
        cplx sp = elementary_numeric(zp)[l], sm = elementary_numeric(zm)[l];
        y.push_back(0.5 * half * (sp + sm));
        y.push_back(0.5 * half * (sp - sm));
    }
    return y;
}

std::vector<cplx> eval_generators_numeric(Kind kind, int l, const AffineSample& s)
{
    std::vector<cplx> xi(s.xi.begin(), s.xi.end());
    return generators_at(kind, l, xi, s.c);
}

std::vector<cplx> bd_hat_coordinates(Kind kind, int l, const std::vector<cplx>& y, cplx lam)
{
    std::vector<cplx> h = y;
    if (kind == Kind::B) {
        cplx s = y[l - 1] * y[l - 1];
        for (int k = 1; k <= l - 1; ++k)
            s -= std::pow(2.0, l - k) * y[k - 1];
        h[l - 1] = s - std::pow(2.0, l) * lam;
    } else if (kind == Kind::D) {
        cplx a = y[l - 2], b = y[l - 1];
        cplx h1 = a * b, h2 = b * b + a * a;
        for (int k = 1; k <= l - 2; ++k) {
            double p = std::pow(2.0, l - k), q = std::pow(-2.0, l - k);
            h1 -= 0.25 * (p - q) * y[k - 1];
            h2 -= 0.5 * (p + q) * y[k - 1];
        }
        double p = std::pow(2.0, l), q = std::pow(-2.0, l);
        h1 -= 0.25 * (p - q) * lam;
        h2 -= 0.5 * (p + q) * lam;
        h[l - 2] = h1;
        h[l - 1] = h2;
    }
    return h;
}

std::vector<std::vector<cplx>> numeric_pencil(Kind kind, int l, const AffineSample& s)
{
    std::size_t n = s.xi.size();
    std::vector<cplx> xi(s.xi.begin(), s.xi.end());
    cplx lam = s.lambda();
    auto f = [&](const std::vector<cplx>& x) {
        auto y = generators_at(kind, l, x, s.c);
        return bd_hat_coordinates(kind, l, y, lam);
    };
    std::vector<std::vector<cplx>> J;  // J[r] = d y / d xi^r
    for (std::size_t r = 0; r < n; ++r) {
        auto fr = [&](cplx z) {
            auto x = xi;
            x[r] = z;
            return f(x);
        };
        J.push_back(holo_derivative(fr, xi[r]));
    }
    std::vector<std::vector<cplx>> g(l, std::vector<cplx>(l, 0));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            cplx acc = 0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t q = 0; q < n; ++q) {
                    double b = kind == Kind::A ? (r == q ? 1.0 : 0.0) - 1.0 / double(l + 1) : (r == q ? 1.0 : 0.0);
                    if (b != 0)
                        acc += J[r][i] * b * J[q][j];
                }
            g[i][j] = acc / (4 * M_PI * M_PI);
        }
    return g;
}

std::vector<std::vector<cplx>> eval_matrix(const PolyMatrix& m, const std::vector<cplx>& x)
{
    std::vector<std::vector<cplx>> r(m.rows(), std::vector<cplx>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i][j] = m(i, j).eval(x);
    return r;
}

double max_rel_diff(const std::vector<std::vector<cplx>>& a, const std::vector<std::vector<cplx>>& b)
{
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            scale = std::max({scale, std::abs(a[i][j]), std::abs(b[i][j])});
            diff = std::max(diff, std::abs(a[i][j] - b[i][j]));
        }
    return scale == 0 ? diff : diff / scale;
}

static std::string fmt_double(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << x;
    return os.str();
}

nlohmann::json NumericReport::to_json() const
{
    nlohmann::json j;
    j["check"] = check;
    j["kind"] = std::string(1, kind);
    j["rank"] = rank;
    if (m)
        j["m"] = *m;
    j["samples"] = samples;
    j["seed"] = seed;
    j["tol"] = fmt_double(tol);
    j["max_rel_err"] = fmt_double(max_rel_err);
    for (auto& [k, v] : extra)
        j[k] = fmt_double(v);
    if (!detail.empty())
        j["detail"] = detail;
    j["pass"] = pass;
    return j;
}

NumericReport bd_reduction_check(Kind kind, int l, int n_samples, std::uint64_t seed, double tol)
{
    if (kind != Kind::B && kind != Kind::D)
        throw UsageError("reduction check is defined for types B and D");
    if (l < min_rank(kind))
        throw UsageError("rank too small");
    MetricPencil C = metric_pencil_c(l);
    std::mt19937_64 rng(seed);
    NumericReport r;
    r.check = "bd_reduction";
    r.kind = kind_char(kind);
    r.rank = l;
    r.samples = n_samples;
    r.seed = seed;
    r.tol = tol;
    for (int k = 0; k < n_samples; ++k) {
        AffineSample s = random_sample(kind, l, rng);
        auto g = numeric_pencil(kind, l, s);
        auto y = bd_hat_coordinates(kind, l, eval_generators_numeric(kind, l, s), s.lambda());
        y.push_back(s.lambda());
        double e = max_rel_diff(g, eval_matrix(C.g_lambda, y));
        if (e > r.max_rel_err) {
            r.max_rel_err = e;
            std::ostringstream os;
            os << "worst sample " << k << " c=" << s.c;
            r.detail = os.str();
        }
    }
    r.pass = r.max_rel_err < tol;
    return r;
}

}  // namespace frobkit
