#include "frobkit/lg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace frobkit {

static cplx ipow(cplx z, int k)
{
    cplx r = 1;
    if (k < 0) {
        z = 1.0 / z;
        k = -k;
    }
    for (; k > 0; --k)
        r *= z;
    return r;
}

static cplx horner(const std::vector<cplx>& c, cplx x)
{
    cplx r = 0;
    for (std::size_t k = c.size(); k-- > 0;)
        r = r * x + c[k];
    return r;
}

static std::vector<cplx> derivative(const std::vector<cplx>& c)
{
    std::vector<cplx> d;
    for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(double(k) * c[k]);
    return d;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs)
{
    std::size_t n = coeffs.size() - 1;
    if (coeffs.size() < 2 || coeffs[n] == cplx(0))
        throw DegenerateError("polynomial_roots: vanishing leading coefficient");
    CMat C = CMat::Zero(n, n);
    for (std::size_t i = 1; i < n; ++i)
        C(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i)
        C(i, n - 1) = -coeffs[i] / coeffs[n];
    Eigen::ComplexEigenSolver<CMat> es(C, false);
    if (es.info() != Eigen::Success)
        throw DegenerateError("companion eigenvalues did not converge");
    auto dc = derivative(coeffs);
    std::vector<cplx> r;
    for (std::size_t i = 0; i < n; ++i) {
        cplx x = es.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {
            cplx d = horner(dc, x);
            if (d == cplx(0))
                break;
            cplx step = horner(coeffs, x) / d;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x)))
                break;
        }
        r.push_back(x);
    }
    return r;
}

// A(x) and B(x) = x A + (x - 1) x A' - m (x - 1) A for the C model
static std::vector<cplx> c_A(int l, const std::vector<cplx>& b)
{
    std::vector<cplx> A(l, 0);
    for (int j = 1; j <= l; ++j)
        A[l - j] = b[j - 1];
    return A;
}

static std::vector<cplx> c_B(int l, int m, const std::vector<cplx>& b)
{
    auto A = c_A(l, b);
    auto dA = derivative(A);
    std::vector<cplx> B(l + 1, 0);
    for (int k = 0; k < l; ++k) {
        B[k + 1] += A[k];
        B[k] += double(m) * A[k];
        B[k + 1] -= double(m) * A[k];
    }
    for (int k = 0; k + 1 < l; ++k) {
        B[k + 2] += dA[k];
        B[k + 1] -= dA[k];
    }
    return B;
}

cplx LGModel::Lambda(cplx p) const
{
    if (kind == Kind::A) {
        cplx r = ipow(p, l + 1);
        for (int k = 1; k <= l; ++k)
            r += a_eff[k - 1] * ipow(p, l + 1 - k);
        return r;
    }
    cplx x = p * p;
    return (x - 1.0) * ipow(p, -2 * m_eff) * horner(c_A(l, a_eff), x);
}

cplx LGModel::dLambda(cplx p) const
{
    if (kind == Kind::A) {
        cplx r = double(l + 1) * ipow(p, l);
        for (int k = 1; k <= l; ++k)
            r += a_eff[k - 1] * double(l + 1 - k) * ipow(p, l - k);
        return r;
    }
    return 2.0 * ipow(p, -2 * m_eff - 1) * horner(c_B(l, m_eff, a_eff), p * p);
}

cplx LGModel::dLambda_da(int alpha, cplx p) const
{
    if (kind == Kind::A)
        return ipow(p, l - alpha);
    cplx x = p * p;
    return (x - 1.0) * ipow(p, 2 * (l - 1 - alpha) - 2 * m_eff);
}

static nlohmann::json cjson(const std::vector<cplx>& v)
{
    auto j = nlohmann::json::array();
    for (auto& z : v)
        j.push_back({z.real(), z.imag()});
    return j;
}

nlohmann::json LGModel::to_json() const
{
    nlohmann::json j;
    j["kind"] = std::string(1, kind_char(kind));
    j["rank"] = l;
    if (kind == Kind::C)
        j["m"] = m;
    j["a"] = cjson(a);
    j["flipped"] = flipped;
    j["critical_points"] = cjson(q);
    j["critical_values"] = cjson(u);
    return j;
}

LGModel lg_model(Kind kind, int l, int m, std::vector<cplx> a, const LGFloors& floors)
{
    if (kind != Kind::A && kind != Kind::C)
        throw UsageError("superpotentials exist for types A and C only");
    if (l < 1 || int(a.size()) != l)
        throw UsageError("coefficient vector must have rank entries");
    if (kind == Kind::C && (m < 0 || m > l))
        throw UsageError("m must satisfy 0 <= m <= rank");
    LGModel M;
    M.kind = kind;
    M.l = l;
    M.m = kind == Kind::A ? -1 : m;
    M.a = a;
    M.a_eff = a;
    M.m_eff = M.m;
    if (kind == Kind::C && m == l && l > 0) {
        M.flipped = true;
        M.m_eff = 0;
        for (int j = 0; j < l; ++j)
            M.a_eff[j] = -a[l - 1 - j];
    }
    if (kind == Kind::A) {
        std::vector<cplx> d(l + 1);
        d[l] = double(l + 1);
        for (int k = 1; k <= l; ++k)
            d[l - k] = a[k - 1] * double(l + 1 - k);
        M.q = polynomial_roots(d);
        for (auto q : M.q) {
            cplx s = double(l) * double(l + 1) * ipow(q, l - 1);
            for (int k = 1; k < l; ++k)
                s += a[k - 1] * double(l + 1 - k) * double(l - k) * ipow(q, l - k - 1);
            M.lam2.push_back(s);
            M.u.push_back(M.Lambda(q));
            M.cim.push_back(1);
        }
    } else {
        auto B = c_B(l, M.m_eff, M.a_eff);
        auto dB = derivative(B);
        std::vector<cplx> xs;
        if (M.m_eff == 0) {
            // x = 0 is an exact root
            std::vector<cplx> Bt(B.begin() + 1, B.end());
            xs = l > 1 ? polynomial_roots(Bt) : std::vector<cplx>{};
            xs.push_back(0);
        } else {
            xs = polynomial_roots(B);
        }
        auto A = c_A(l, M.a_eff);
        for (auto x : xs) {
            if (x == cplx(0)) {
                M.q.push_back(0);
                M.lam2.push_back(2.0 * dB[0]);
                M.u.push_back(-A[0]);
                M.cim.push_back(1);
            } else {
                cplx q = std::sqrt(x);
                M.q.push_back(q);
                M.lam2.push_back(4.0 * ipow(q, -2 * M.m_eff) * horner(dB, x));
                M.u.push_back((x - 1.0) * ipow(q, -2 * M.m_eff) * horner(A, x));
                M.cim.push_back(2);
            }
        }
    }
    // nondegeneracy
    for (std::size_t i = 0; i < M.q.size(); ++i) {
        if (std::abs(M.lam2[i]) < floors.lam2)
            throw DegenerateError("degenerate critical point");
        if (std::abs(M.u[i]) < floors.crit_value)
            throw DegenerateError("critical value too close to zero");
        double scale = 1;
        cplx r = M.dLambda(M.q[i]);
        if (M.q[i] != cplx(0) && std::abs(r) > 1e-12 * std::max(scale, std::abs(M.lam2[i] * M.q[i])))
            throw DegenerateError("critical point residual above contract");
        for (std::size_t j = 0; j < i; ++j) {
            double d = std::abs(M.q[i] - M.q[j]);
            if (kind == Kind::C)
                d = std::min(d, std::abs(M.q[i] + M.q[j]));
            if (d < floors.separation)
                throw DegenerateError("critical points too close");
        }
        if (kind == Kind::C && std::abs(M.q[i] * M.q[i] - 1.0) < floors.separation)
            throw DegenerateError("critical point at p^2 = 1");
    }
    if (kind == Kind::C) {
        auto near_cut = [&](cplx z) { return std::abs(z) < floors.separation || M_PI - std::abs(std::arg(z)) < floors.branch; };
        if ((l - m > 0 && near_cut(a[0])) || (m > 0 && near_cut(-a[l - 1])))
            throw DegenerateError("leading coefficient near the branch cut");
    }
    return M;
}

LGModel lg_sample(Kind kind, int l, int m, std::mt19937_64& rng, const LGFloors& floors, int tries)
{
    std::uniform_real_distribution<double> rad(0.5, 1.5), ang(0, 2 * M_PI);
    for (int t = 0; t < tries; ++t) {
        std::vector<cplx> a(l);
        for (auto& x : a)
            x = std::polar(rad(rng), ang(rng));
        try {
            return lg_model(kind, l, m, a, floors);
        } catch (const DegenerateError&) {
        }
    }
    throw DegenerateError("no nondegenerate sample after retries");
}

// a_eff = R a with R = -reversal; R is its own inverse
static CMat flip_matrix(int l)
{
    CMat R = CMat::Zero(l, l);
    for (int j = 0; j < l; ++j)
        R(j, l - 1 - j) = -1;
    return R;
}

LGTensors lg_metrics(const LGModel& M)
{
    int l = M.l;
    LGTensors T;
    CMat V(l, l);
    T.f.resize(l);
    for (int i = 0; i < l; ++i) {
        cplx q = M.q[i];
        for (int k = 0; k < l; ++k)
            V(i, k) = M.dLambda_da(k, q);
        cplx den = M.kind == Kind::A ? q * q * M.lam2[i] : (q * q - 1.0) * (q * q - 1.0) * M.lam2[i];
        T.f(i) = M.cim[i] / den;
    }
    if (M.flipped)
        V = V * flip_matrix(l);
    T.V = V;
    CMat W = V.inverse();
    CVec finv = T.f.cwiseInverse();
    CVec u(l), ones = CVec::Ones(l);
    for (int i = 0; i < l; ++i)
        u(i) = M.u[i];
    T.eta_a = W * finv.asDiagonal() * W.transpose();
    T.g_a = W * (finv.cwiseProduct(u)).asDiagonal() * W.transpose();
    T.e_a = W * ones;
    T.E_a = W * u;
    return T;
}

LGQuadrature lg_quadrature(const LGModel& M, int nodes)
{
    int l = M.l;
    // every singular point of the integrands
    std::vector<cplx> poles, sing{0};
    for (auto q : M.q) {
        poles.push_back(q);
        if (M.kind == Kind::C && q != cplx(0))
            poles.push_back(-q);
    }
    if (M.kind == Kind::A) {
        std::vector<cplx> c(l + 1);
        c[l] = 1;
        for (int k = 1; k <= l; ++k)
            c[l - k] = M.a_eff[k - 1];
        for (auto z : polynomial_roots(c))
            sing.push_back(z);
    } else {
        sing.push_back(1);
        sing.push_back(-1);
        if (l > 1)
            for (auto x : polynomial_roots(c_A(l, M.a_eff))) {
                sing.push_back(std::sqrt(x));
                sing.push_back(-std::sqrt(x));
            }
    }
    LGQuadrature Q;
    Q.eta = CMat::Zero(l, l);
    Q.g = CMat::Zero(l, l);
    Q.c.assign(l, CMat::Zero(l, l));
    for (auto q : poles) {
        double d = 1e300;
        for (auto s : poles)
            if (s != q)
                d = std::min(d, std::abs(s - q));
        for (auto s : sing)
            if (s != q)
                d = std::min(d, std::abs(s - q));
        double rho = d / 3;
        for (int k = 0; k < nodes; ++k) {
            cplx w = std::polar(1.0, 2 * M_PI * (k + 0.5) / nodes);
            cplx p = q + rho * w;
            // (1/2 pi i) * integral = mean of f(p) (p - q)
            cplx meas = M.kind == Kind::A ? 1.0 / (p * p * M.dLambda(p)) : 1.0 / (M.dLambda(p) * (p * p - 1.0) * (p * p - 1.0));
            meas *= rho * w / double(nodes);
            cplx lam = M.Lambda(p);
            std::vector<cplx> d1(l);
            for (int i = 0; i < l; ++i)
                d1[i] = M.dLambda_da(i, p);
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j) {
                    cplx two = d1[i] * d1[j] * meas;
                    Q.eta(i, j) += two;
                    Q.g(i, j) += two / lam;
                    for (int k2 = 0; k2 < l; ++k2)
                        Q.c[k2](i, j) += two * d1[k2];
                }
        }
    }
    if (M.flipped) {
        CMat R = flip_matrix(l);
        Q.eta = R.transpose() * Q.eta * R;
        Q.g = R.transpose() * Q.g * R;
        std::vector<CMat> c(l, CMat::Zero(l, l));
        for (int k = 0; k < l; ++k)
            for (int k2 = 0; k2 < l; ++k2)
                c[k] += R(k2, k) * (R.transpose() * Q.c[k2] * R);
        Q.c = c;
    }
    return Q;
}

// f^r for a series with f[0] = 1, truncated at the length of f
static std::vector<cplx> series_pow(const std::vector<cplx>& f, double r)
{
    std::size_t N = f.size();
    std::vector<cplx> g(N, 0);
    g[0] = 1;
    for (std::size_t n = 1; n < N; ++n) {
        cplx s = 0;
        for (std::size_t k = 1; k <= n; ++k)
            s += (r * double(k) - double(n - k)) * f[k] * g[n - k];
        g[n] = s / double(n);
    }
    return g;
}

static std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<cplx> c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// [y^k] of (1 - y)^{r - 1} S(y)^r
static cplx c_block_coeff(const std::vector<cplx>& S, double r, int k)
{
    std::vector<cplx> one_minus(S.size(), 0);
    one_minus[0] = 1;
    if (S.size() > 1)
        one_minus[1] = -1;
    auto prod = series_mul(series_pow(one_minus, r - 1), series_pow(S, r));
    return prod[k];
}

std::vector<cplx> lg_flat_coords(Kind kind, int l, int m, const std::vector<cplx>& a)
{
    std::vector<cplx> t(l);
    if (kind == Kind::A) {
        std::vector<cplx> f(l + 1);
        f[0] = 1;
        for (int k = 1; k <= l; ++k)
            f[k] = a[k - 1];
        for (int al = 1; al <= l; ++al) {
            auto g = series_pow(f, double(al) / (l + 1));
            t[al - 1] = double(l + 1) / al * g[al];
        }
        return t;
    }
    if (m == l) {
        std::vector<cplx> b(l);
        for (int j = 0; j < l; ++j)
            b[j] = -a[l - 1 - j];
        return lg_flat_coords(kind, l, 0, b);
    }
    int n = l - m;
    std::vector<cplx> S(l + 1, 0);
    S[0] = 1;
    for (int j = 2; j <= l; ++j)
        S[j - 1] = a[j - 1] / a[0];
    for (int al = 1; al <= n; ++al) {
        int k = 2 * (n - al) + 1;
        double r = double(k) / (2 * n);
        t[al - 1] = -std::pow(a[0], r) * c_block_coeff(S, r, n - al) / double(k);
    }
    if (m > 0) {
        std::vector<cplx> T(l + 1, 0);
        T[0] = 1;
        for (int j = 1; j < l; ++j)
            T[j] = a[l - 1 - j] / a[l - 1];
        for (int be = n + 1; be <= l; ++be) {
            int k = 2 * (l - be) + 1;
            double r = double(k) / (2 * m);
            t[be - 1] = -std::pow(-a[l - 1], r) * c_block_coeff(T, r, l - be) / double(k);
        }
    }
    return t;
}

CMat lg_flat_jacobian(Kind kind, int l, int m, const std::vector<cplx>& a)
{
    CMat J(l, l);
    for (int k = 0; k < l; ++k) {
        double r = 1e-3 * std::max(1.0, std::abs(a[k]));
        auto col = holo_derivative(
            [&](cplx z) {
                auto b = a;
                b[k] = z;
                return lg_flat_coords(kind, l, m, b);
            },
            a[k], r, 32);
        for (int i = 0; i < l; ++i)
            J(i, k) = col[i];
    }
    return J;
}

CMat lg_flat_eta(const LGModel& M)
{
    auto T = lg_metrics(M);
    CMat J = lg_flat_jacobian(M.kind, M.l, M.m, M.a);
    CMat eta_t = J * T.eta_a * J.transpose();
    return eta_t.inverse();
}

std::vector<CMat> lg_flat_c(const LGModel& M)
{
    int l = M.l;
    auto T = lg_metrics(M);
    CMat J = lg_flat_jacobian(M.kind, l, M.m, M.a);
    CMat psi = T.V * J.inverse();  // du_i / dt_alpha
    std::vector<CMat> c(l, CMat::Zero(l, l));
    for (int k = 0; k < l; ++k)
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b)
                for (int i = 0; i < l; ++i)
                    c[k](a, b) += T.f(i) * psi(i, a) * psi(i, b) * psi(i, k);
    return c;
}

QMatrix lg_expected_flat_eta(Kind kind, int l, int m)
{
    QMatrix E(l, QVector(l, 0));
    if (kind == Kind::A) {
        for (int i = 0; i < l; ++i)
            E[i][l - 1 - i] = frac(1, l + 1);
        return E;
    }
    int n = l - m;
    for (int i = 0; i < n; ++i)
        E[i][n - 1 - i] = 2 * n;
    for (int i = 0; i < m; ++i)
        E[n + i][l - 1 - i] = 2 * m;
    return E;
}

QMatrix lg_h_matrix(int l)
{
    QMatrix H(l, QVector(l, 0));
    for (int k = 1; k <= l; ++k) {
        UPoly b = upoly_mul(upoly_pow_linear(-2, l - k), upoly_pow_linear(2, k - 1));
        for (int j = 1; j <= l; ++j)
            H[j - 1][k - 1] = b[l - j];
    }
    return H;
}

int lg_partner_m(int l, int m) { return l - m; }

static CMat to_cmat(const QMatrix& q)
{
    CMat M(q.size(), q.empty() ? 0 : q[0].size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q[i].size(); ++j)
            M(i, j) = q[i][j].get_d();
    return M;
}

static CMat eval_cmat(const PolyMatrix& P, const std::vector<cplx>& x)
{
    CMat M(P.rows(), P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j)
            M(i, j) = P(i, j).eval(x);
    return M;
}

static double rel(const CMat& a, const CMat& ref)
{
    double den = ref.cwiseAbs().maxCoeff();
    return (a - ref).cwiseAbs().maxCoeff() / std::max(den, 1e-300);
}

static double rel(const CVec& a, const CVec& ref)
{
    double den = ref.cwiseAbs().maxCoeff();
    return (a - ref).cwiseAbs().maxCoeff() / std::max(den, 1e-300);
}

// least-squares constant k with a ~ k ref
template <class M>
static cplx fit(const M& a, const M& ref)
{
    cplx num = (ref.conjugate().cwiseProduct(a)).sum();
    double den = ref.squaredNorm();
    return num / den;
}

struct Tracker {
    std::vector<std::pair<std::string, double>> v;
    void put(const std::string& k, double x)
    {
        for (auto& [n, y] : v)
            if (n == k) {
                y = std::max(y, x);
                return;
            }
        v.emplace_back(k, x);
    }
    double get(const std::string& k) const
    {
        for (auto& [n, y] : v)
            if (n == k)
                return y;
        return 0;
    }
};

// canonical multiplication from the quadrature tensors
static double canonical_error(const LGTensors& T, const LGQuadrature& Q)
{
    int l = int(T.V.rows());
    CMat W = T.V.inverse();  // da/du
    CMat eta_u = W.transpose() * Q.eta * W;
    CMat eta_u_inv = eta_u.inverse();
    double err = 0;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            CVec cl(l);
            for (int k = 0; k < l; ++k) {
                cplx s = 0;
                for (int a = 0; a < l; ++a)
                    for (int b = 0; b < l; ++b)
                        for (int g = 0; g < l; ++g)
                            s += W(a, i) * W(b, j) * W(g, k) * Q.c[g](a, b);
                cl(k) = s;
            }
            CVec prod = eta_u_inv * cl;
            for (int k = 0; k < l; ++k) {
                double want = (i == j && j == k) ? 1 : 0;
                err = std::max(err, std::abs(prod(k) - want));
            }
        }
    return err;
}

NumericReport lg_isomorphism_check(Kind kind, int l, std::optional<int> m_opt, int n_samples, std::uint64_t seed,
                                   double tol)
{
    if (kind != Kind::A && kind != Kind::C)
        throw UsageError("lg checks exist for types A and C only");
    if (kind == Kind::C && !m_opt)
        throw UsageError("type C needs --m");
    int m = kind == Kind::C ? *m_opt : -1;
    if (kind == Kind::C && (m < 0 || m > l))
        throw UsageError("m must satisfy 0 <= m <= rank");
    if (n_samples < 1)
        throw UsageError("need at least one sample");

    NumericReport r;
    r.check = "lg_isomorphism";
    r.kind = kind_char(kind);
    r.rank = l;
    if (kind == Kind::C)
        r.m = m;
    r.samples = n_samples;
    r.seed = seed;
    r.tol = tol;

    int pm = kind == Kind::C ? lg_partner_m(l, m) : -1;
    FlatChart chart = kind == Kind::A ? flat_coords_a(l) : flat_coords_c(l, pm);
    const PolyMatrix& eta_x = chart.base_eta;
    const PolyMatrix& g_x = chart.base_g;
    std::vector<Rational> deg;
    for (auto& v : chart.base->vars())
        deg.push_back(v.deg);
    CMat H = kind == Kind::A ? CMat::Identity(l, l) : to_cmat(lg_h_matrix(l));
    if (kind == Kind::A)
        for (int k = 0; k < l; ++k)
            H(k, k) = (k + 1) % 2 ? -1.0 : 1.0;
    CMat flat_expected = to_cmat(lg_expected_flat_eta(kind, l, m));

    // stated relations: eta~ = k eta, g~ = k g pulled through h, e~ = e, e~ = -kf grad log r
    double k_stated = kind == Kind::A ? 1 : 2, kf_stated = kind == Kind::A ? 1 : 2;
    // superpotential normalisation that reconciles the measured constants
    double kappa = kind == Kind::A ? (l % 2 ? 1 : -1) : -0.25;
    r.extra.clear();

    std::mt19937_64 rng(seed);
    Tracker tr;
    std::vector<cplx> k_eta, k_g, k_e, k_f;
    for (int s = 0; s < n_samples; ++s) {
        LGModel M = lg_sample(kind, l, m, rng);
        LGTensors T = lg_metrics(M);
        LGQuadrature Q = lg_quadrature(M);
        tr.put("residue_quadrature", std::max({rel(Q.eta, CMat(T.eta_a.inverse())), rel(Q.g, CMat(T.g_a.inverse()))}));
        tr.put("canonical", canonical_error(T, Q));
        tr.put("flat_eta", (lg_flat_eta(M) - flat_expected).cwiseAbs().maxCoeff());

        CVec av(l);
        for (int k = 0; k < l; ++k)
            av(k) = M.a[k];
        CVec x = H * av;
        std::vector<cplx> xs(x.data(), x.data() + l);
        CMat eta_lg = H * T.eta_a * H.transpose();
        CMat g_lg = H * T.g_a * H.transpose();
        CVec e_lg = H * T.e_a;
        CVec E_lg = H * T.E_a;

        CMat eta_ex = eval_cmat(eta_x, xs);
        CMat g_ex = eval_cmat(g_x, xs);
        int r0 = kind == Kind::A ? l - 1 : 0;
        CVec e_ex = -eta_ex.col(r0) / xs[r0];
        CVec E_ex(l);
        for (int k = 0; k < l; ++k)
            E_ex(k) = deg[k].get_d() * xs[k];
        tr.put("euler", rel(E_lg, E_ex));

        // -grad log r in the coefficient chart, r = a_l (A) or a1 + ... + al (C)
        CVec grad = kind == Kind::A ? CVec(-T.eta_a.col(l - 1) / M.a[l - 1]) : CVec(-(T.eta_a * CVec::Ones(l)) / av.sum());

        tr.put("eta", rel(eta_lg, CMat(k_stated * eta_ex)));
        tr.put("g", rel(g_lg, CMat(k_stated * g_ex)));
        tr.put("unit", rel(e_lg, e_ex));
        tr.put("unit_formula", rel(T.e_a, CVec(kf_stated * grad)));

        k_eta.push_back(fit(eta_lg, eta_ex));
        k_g.push_back(fit(g_lg, g_ex));
        k_e.push_back(fit(e_lg, e_ex));
        k_f.push_back(fit(T.e_a, grad));
        tr.put("eta_up_to_constant", rel(eta_lg, CMat(k_eta.back() * eta_ex)));
        tr.put("g_up_to_constant", rel(g_lg, CMat(k_g.back() * g_ex)));
        tr.put("unit_up_to_constant", rel(e_lg, CVec(k_e.back() * e_ex)));
        tr.put("unit_formula_up_to_constant", rel(T.e_a, CVec(k_f.back() * grad)));

        // Lambda -> kappa Lambda: contravariant eta and e~ scale by 1/kappa, g~ and E~ do not
        tr.put("eta_normalized", rel(CMat(eta_lg / kappa), CMat(k_stated * eta_ex)));
        tr.put("g_normalized", rel(g_lg, CMat(k_stated * g_ex)));
        tr.put("unit_normalized", rel(CVec(e_lg / kappa), e_ex));
    }
    auto spread = [](const std::vector<cplx>& v) {
        double d = 0;
        for (auto& z : v)
            d = std::max(d, std::abs(z - v.front()));
        return d;
    };
    r.extra = tr.v;
    r.extra.emplace_back("measured_eta_factor", k_eta.front().real());
    r.extra.emplace_back("measured_g_factor", k_g.front().real());
    r.extra.emplace_back("measured_unit_factor", k_e.front().real());
    r.extra.emplace_back("measured_unit_formula_factor", k_f.front().real());
    double sp = std::max({spread(k_eta), spread(k_g), spread(k_e), spread(k_f)});
    for (auto* v : {&k_eta, &k_g, &k_e, &k_f})
        for (auto& z : *v)
            sp = std::max(sp, std::abs(z.imag()));
    r.extra.emplace_back("measured_factor_spread", sp);
    r.extra.emplace_back("normalization_kappa", kappa);
    if (kind == Kind::C)
        r.extra.emplace_back("partner_m", pm);

    auto worst_of = [&](const std::vector<std::string>& keys, std::string& worst) {
        double v = 0;
        for (auto& k : keys)
            if (tr.get(k) >= v) {
                v = tr.get(k);
                worst = k;
            }
        return v;
    };
    std::string worst, worst_c;
    r.max_rel_err = worst_of({"residue_quadrature", "canonical", "flat_eta", "euler", "eta", "g", "unit", "unit_formula"}, worst);
    double up_to = std::max(sp, worst_of({"residue_quadrature", "canonical", "flat_eta", "euler", "eta_up_to_constant",
                                          "g_up_to_constant", "unit_up_to_constant", "unit_formula_up_to_constant"},
                                         worst_c));
    r.extra.emplace_back("max_err_up_to_constant", up_to);
    r.pass = r.max_rel_err <= tol;
    if (!r.pass) {
        std::string failing;
        for (auto& k : {"residue_quadrature", "canonical", "flat_eta", "euler", "eta", "g", "unit", "unit_formula"})
            if (tr.get(k) > tol)
                failing += (failing.empty() ? "" : ", ") + std::string(k);
        r.detail = "stated relation fails in " + failing +
                   (up_to <= tol ? "; holds up to the measured constant factors" : "; not a constant factor");
    }
    return r;
}

// coordinate rescaling that turns the C flat metric into sqrt2 times the exact one, 1-based index
static double sqrt2_scale(int l, int m, int idx)
{
    int n = l - m;
    if (idx == l && m > 0)
        return std::pow(2.0, 3.0 / (4 * m));
    if (idx == n)
        return std::pow(2.0, double(4 * n - 1) / (4 * n));
    if (idx < n)
        return std::pow(2.0, double(6 * n + 2 * idx - 1) / (4 * n)) * n;
    return std::pow(2.0, double(6 * (l - idx) + 4 * m + 3) / (4 * m)) * m;
}

NumericReport lg_symmetry_check(Kind kind, int l, std::optional<int> m_opt, int n_samples, std::uint64_t seed,
                                double h_step, double tol)
{
    if (kind != Kind::A && kind != Kind::C)
        throw UsageError("lg checks exist for types A and C only");
    if (kind == Kind::C && !m_opt)
        throw UsageError("type C needs --m");
    int m = kind == Kind::C ? *m_opt : -1;
    NumericReport r;
    r.check = "lg_symmetry";
    r.kind = kind_char(kind);
    r.rank = l;
    if (kind == Kind::C)
        r.m = m;
    r.samples = n_samples;
    r.seed = seed;
    r.tol = tol;
    std::mt19937_64 rng(seed);
    Tracker tr;
    for (int s = 0; s < n_samples; ++s) {
        LGModel M = lg_sample(kind, l, m, rng);
        CMat Jinv = lg_flat_jacobian(kind, l, m, M.a).inverse();
        // d c_{abg} / d a_k by central differences
        std::vector<std::vector<CMat>> dc(l);
        for (int k = 0; k < l; ++k) {
            auto ap = M.a, am = M.a;
            ap[k] += h_step;
            am[k] -= h_step;
            auto cp = lg_flat_c(lg_model(kind, l, m, ap));
            auto cm = lg_flat_c(lg_model(kind, l, m, am));
            for (int g = 0; g < l; ++g)
                dc[k].push_back((cp[g] - cm[g]) / (2 * h_step));
        }
        // c4(a, b, g, x) = sum_k Jinv(k, x) dc[k][g](a, b)
        auto c4 = [&](int a, int b, int g, int x) {
            cplx v = 0;
            for (int k = 0; k < l; ++k)
                v += Jinv(k, x) * dc[k][g](a, b);
            return v;
        };
        double num = 0, den = 0;
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b)
                for (int g = 0; g < l; ++g)
                    for (int x = 0; x < l; ++x) {
                        cplx v = c4(a, b, g, x);
                        den = std::max(den, std::abs(v));
                        num = std::max(num, std::abs(v - c4(x, b, g, a)));
                        num = std::max(num, std::abs(v - c4(a, x, g, b)));
                        num = std::max(num, std::abs(v - c4(a, b, x, g)));
                    }
        tr.put("asymmetry", l == 1 ? 0.0 : num / std::max(den, 1e-300));

        if (kind == Kind::C) {
            CMat eta_cov = lg_flat_eta(M);
            CMat eta_con = eta_cov.inverse();
            CMat scaled = eta_con;
            for (int a = 0; a < l; ++a)
                for (int b = 0; b < l; ++b)
                    scaled(a, b) *= sqrt2_scale(l, m, a + 1) * sqrt2_scale(l, m, b + 1);
            CMat exact = to_cmat(expected_flat_eta(Kind::C, l, m));
            tr.put("rescaled_eta_vs_sqrt2_eta", rel(scaled, CMat(std::sqrt(2.0) * exact)));
            tr.put("rescaled_eta_factor", std::abs(fit(scaled, exact)));
        }
    }
    r.extra = tr.v;
    r.max_rel_err = tr.get("asymmetry");
    r.pass = r.max_rel_err <= tol;
    if (!r.pass)
        r.detail = "c~ derivative not totally symmetric";
    return r;
}

}  // namespace frobkit
