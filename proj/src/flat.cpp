#include "frobkit/flat.hpp"

#include <functional>

namespace frobkit {

std::vector<PolyMatrix> christoffel_lower(const PolyMatrix& eta)
{
    std::size_t n = eta.rows();
    PolyMatrix low = matrix_adjugate_inverse(eta);
    std::vector<PolyMatrix> dlow;
    for (std::size_t i = 0; i < n; ++i)
        dlow.push_back(low.partial(i));
    std::vector<PolyMatrix> G(n, PolyMatrix(eta.table(), n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Poly> first(n, Poly(eta.table()));
            for (std::size_t l = 0; l < n; ++l)
                first[l] = frac(1, 2) * (dlow[i](l, j) + dlow[j](l, i) - dlow[l](i, j));
            for (std::size_t k = 0; k < n; ++k) {
                Poly s(eta.table());
                for (std::size_t l = 0; l < n; ++l)
                    if (!eta(k, l).is_zero() && !first[l].is_zero())
                        s += eta(k, l) * first[l];
                G[k](i, j) = s;
                G[k](j, i) = s;
            }
        }
    return G;
}

std::vector<Poly> monomials_of_degree(const TablePtr& t, const std::vector<std::size_t>& vars, const Rational& deg)
{
    std::vector<Poly> out;
    Exponent e(t->size(), 0);
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational left) {
        if (left == 0) {
            out.push_back(Poly::monomial(t, e, 1));
            return;
        }
        if (k == vars.size() || left < 0)
            return;
        Rational d = (*t)[vars[k]].deg;
        if (d <= 0)
            throw AlgebraError("monomial enumeration needs positive degrees");
        for (int p = 0; d * p <= left; ++p) {
            e[vars[k]] = p;
            rec(k + 1, left - d * p);
        }
        e[vars[k]] = 0;
    };
    rec(0, deg);
    return out;
}

FlatSolve solve_flat_coordinate(const std::vector<PolyMatrix>& gamma, const Poly& base, const Poly& prefactor,
                                const std::vector<Poly>& monos)
{
    TablePtr X = base.table();
    std::size_t n = X->size();
    auto vars = X->vars();
    for (std::size_t k = 0; k < monos.size(); ++k)
        vars.push_back({"_c" + std::to_string(k + 1), 0, false});
    TablePtr C = make_table(vars);

    Poly f = base.rebase(C);
    Poly pre = prefactor.rebase(C);
    std::vector<std::size_t> unknowns;
    for (std::size_t k = 0; k < monos.size(); ++k) {
        f += pre * monos[k].rebase(C) * Poly::var(C, n + k);
        unknowns.push_back(n + k);
    }
    std::vector<Poly> df;
    for (std::size_t i = 0; i < n; ++i)
        df.push_back(f.partial(i));
    std::vector<std::size_t> main(n);
    for (std::size_t i = 0; i < n; ++i)
        main[i] = i;
    std::vector<Poly> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Poly e = df[i].partial(j);
            for (std::size_t k = 0; k < n; ++k)
                if (!gamma[k](i, j).is_zero() && !df[k].is_zero())
                    e -= gamma[k](i, j).rebase(C) * df[k];
            for (auto& q : coefficients_in(e, main))
                eqs.push_back(q);
        }
    FlatSolve out;
    if (monos.empty()) {
        for (auto& q : eqs)
            if (!q.is_zero())
                throw AlgebraError("coordinate " + base.str() + " is not flat");
        out.value = base;
        return out;
    }
    PeelResult r = solve_by_peeling(eqs, unknowns);
    std::vector<Poly> img;
    for (std::size_t i = 0; i < n; ++i)
        img.push_back(Poly::var(X, i));
    for (auto& v : r.values)
        img.push_back(Poly(X, v));
    out.value = f.subst(img, X);
    for (auto k : r.gauge)
        out.gauge.push_back(monos[k].str());
    return out;
}

const ChartStep& FlatChart::step(const std::string& name) const
{
    for (auto& s : steps)
        if (s.name == name)
            return s;
    throw UsageError("no chart named " + name);
}

nlohmann::json FlatChart::to_json() const
{
    nlohmann::json j;
    j["kind"] = std::string(1, kind_char(kind));
    j["rank"] = l;
    if (m >= 0)
        j["m"] = m;
    j["base"] = table_to_json(*base);
    j["eta_base"] = base_eta.to_json();
    j["g_base"] = base_g.to_json();
    auto st = nlohmann::json::array();
    for (auto& s : steps) {
        nlohmann::json x;
        x["chart"] = s.name;
        x["map"] = s.map.to_json();
        x["eta"] = s.eta.to_json();
        x["g"] = s.g.to_json();
        st.push_back(x);
    }
    j["steps"] = st;
    auto d = nlohmann::json::array();
    for (auto& x : degrees)
        d.push_back(to_string(x));
    j["degrees"] = d;
    auto e = nlohmann::json::array();
    for (auto& row : eta_flat) {
        auto r = nlohmann::json::array();
        for (auto& x : row)
            r.push_back(to_string(x));
        e.push_back(r);
    }
    j["eta_flat"] = e;
    auto b = nlohmann::json::object();
    for (std::size_t i = 0; i < base_in_t.size(); ++i)
        b[(*base)[i].name] = base_in_t[i].str();
    j["base_in_t"] = b;
    j["gauge"] = gauge;
    return j;
}

static void anti_block(QMatrix& E, int off, int size, const Rational& inner)
{
    if (size == 1) {
        E[off][off] = 1;
        return;
    }
    for (int i = 0; i < size; ++i) {
        int j = size - 1 - i;
        E[off + i][off + j] = (i == 0 || j == 0) ? Rational(2) : inner;
    }
}

QMatrix expected_flat_eta(Kind kind, int l, int m)
{
    QMatrix E(l, QVector(l, 0));
    if (kind == Kind::A) {
        for (int i = 0; i < l; ++i)
            E[i][l - 1 - i] = l + 1;
        return E;
    }
    if (kind != Kind::C)
        throw UsageError("flat coordinates are only built for types A and C");
    int n = l - m;
    if (n > 0)
        anti_block(E, 0, n, 4 * n);
    if (m > 0)
        anti_block(E, n, m, 4 * m);
    return E;
}

static QMatrix constant_part(const PolyMatrix& M)
{
    if (!M.is_constant())
        throw AlgebraError("metric in the final chart is not constant:\n" + M.str());
    QMatrix q(M.rows(), QVector(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            q[i][j] = M(i, j).constant_term();
    return q;
}

static void finish(FlatChart& fc)
{
    fc.eta_flat = constant_part(fc.eta_t());
    if (fc.eta_flat != expected_flat_eta(fc.kind, fc.l, fc.m < 0 ? 0 : fc.m))
        throw AlgebraError("flat metric does not have the expected normal form:\n" + fc.eta_t().str());
    std::vector<Poly> cur;
    for (std::size_t i = 0; i < fc.base->size(); ++i)
        cur.push_back(Poly::var(fc.base, i));
    for (auto& s : fc.steps)
        for (auto& p : cur)
            p = p.subst(s.map.inverse, s.map.target);
    fc.base_in_t = cur;
    for (std::size_t a = 0; a < fc.degrees.size(); ++a)
        for (std::size_t b = 0; b < fc.degrees.size(); ++b)
            if (!fc.g_t()(a, b).is_zero() && !fc.g_t()(a, b).is_homogeneous(fc.degrees[a] + fc.degrees[b]))
                throw AlgebraError("intersection form in flat chart is not quasi-homogeneous");
}

static ChartStep make_step(const std::string& name, const CoordinateMap& map, const ChartStep* prev, const PolyMatrix& eta0,
                           const PolyMatrix& g0)
{
    ChartStep s;
    s.name = name;
    s.map = map;
    s.eta = pushforward_metric(map, prev ? prev->eta : eta0);
    s.g = pushforward_metric(map, prev ? prev->g : g0);
    return s;
}

FlatChart flat_coords_a(int l)
{
    if (l < 1)
        throw UsageError("rank must be positive");
    FlatChart fc;
    fc.kind = Kind::A;
    fc.l = l;
    MetricPencil p = metric_pencil_a(l);
    std::vector<Variable> yv(p.table->vars().begin(), p.table->vars().end() - 1);
    fc.base = make_table(yv);
    auto sp = split_pencil(p.g_lambda, l, fc.base);
    fc.base_eta = sp.eta;
    fc.base_g = sp.g;
    for (int a = 1; a <= l; ++a)
        fc.degrees.push_back(frac(a, l + 1));

    auto gamma = christoffel_lower(fc.base_eta);
    std::vector<Poly> fwd;
    for (int a = 0; a < l; ++a) {
        std::vector<std::size_t> lower;
        for (int b = 0; b < a; ++b)
            lower.push_back(b);
        auto monos = monomials_of_degree(fc.base, lower, fc.degrees[a]);
        auto r = solve_flat_coordinate(gamma, Poly::var(fc.base, a), Poly(fc.base, 1), monos);
        for (auto& gname : r.gauge)
            fc.gauge.push_back("t" + std::to_string(a + 1) + ": coefficient of " + gname + " set to 0");
        fwd.push_back(r.value);
    }
    std::vector<Variable> tv;
    for (int a = 1; a <= l; ++a)
        tv.push_back({"t" + std::to_string(a), fc.degrees[a - 1], false});
    fc.t = make_table(tv);
    fc.steps.push_back(make_step("t", invert_triangular_map(fwd, fc.t), nullptr, fc.base_eta, fc.base_g));
    finish(fc);
    return fc;
}

WChange tau_to_w(int l, int m, const PolyMatrix& eta_tau)
{
    int n = l - m;
    TablePtr tt = eta_tau.table();
    auto vars = tt->vars();
    std::vector<std::pair<int, int>> slots;  // (j, s)
    for (int j = 1; j <= l; ++j) {
        int end = j <= n ? n : l;
        if (j == n || j == l)
            continue;
        for (int s = j + 1; s <= end; ++s) {
            slots.push_back({j, s});
            vars.push_back({"_h" + std::to_string(j) + "_" + std::to_string(s), 0, false});
        }
    }
    TablePtr C = make_table(vars);
    std::vector<Poly> w;
    std::vector<std::size_t> unknowns;
    for (int j = 1; j <= l; ++j)
        w.push_back(Poly::var(C, j - 1));
    for (std::size_t k = 0; k < slots.size(); ++k) {
        auto [j, s] = slots[k];
        w[j - 1] += Poly::var(C, l + k) * Poly::var(C, s - 1);
        unknowns.push_back(l + k);
    }
    PolyMatrix J(C, l, l);
    for (int a = 0; a < l; ++a)
        for (int i = 0; i < l; ++i)
            J(a, i) = w[a].partial(i);
    PolyMatrix lhs = J * eta_tau.map([&](const Poly& p) { return p.rebase(C); }) * J.transpose();
    TablePtr wt = tau_table(l, m, "w");
    PolyMatrix rhs = tau_block_form(l, m, wt, true).subst(w, C);
    std::vector<std::size_t> main(l);
    for (int i = 0; i < l; ++i)
        main[i] = i;
    std::vector<Poly> eqs;
    for (int a = 0; a < l; ++a)
        for (int b = a; b < l; ++b)
            for (auto& q : coefficients_in(lhs(a, b) - rhs(a, b), main))
                eqs.push_back(q);
    PeelResult r = solve_by_peeling(eqs, unknowns);

    WChange out;
    std::vector<Poly> img;
    for (int i = 0; i < l; ++i)
        img.push_back(Poly::var(tt, i));
    for (auto& v : r.values)
        img.push_back(Poly(tt, v));
    std::vector<Poly> fwd;
    for (auto& p : w)
        fwd.push_back(p.subst(img, tt));
    for (auto k : r.gauge)
        out.gauge.push_back("w" + std::to_string(slots[k].first) + ": coefficient of tau" +
                            std::to_string(slots[k].second) + " set to 0");
    out.map = invert_triangular_map(fwd, wt);
    return out;
}

TablePtr v_table(int l, int m)
{
    int n = l - m;
    std::vector<Variable> v(l);
    auto block = [&](int off, int size) {
        for (int s = 1; s <= size; ++s) {
            Variable& x = v[off + s - 1];
            x.name = "v" + std::to_string(off + s);
            if (s == size) {
                x.deg = frac(1, 2 * size);
                x.invertible = true;
            } else if (s == 1)
                x.deg = frac(2 * size - 1, 2 * size);
            else
                x.deg = frac(size - s, size);
        }
    };
    block(0, n);
    block(n, m);
    return make_table(v);
}

CoordinateMap w_to_v(int l, int m, const TablePtr& w)
{
    int n = l - m;
    CoordinateMap cm;
    cm.source = w;
    cm.target = v_table(l, m);
    cm.inverse.assign(l, Poly(cm.target));
    auto block = [&](int off, int size) {
        if (size == 0)
            return;
        Poly top = Poly::var(cm.target, off + size - 1);
        cm.inverse[off + size - 1] = top.pow(2 * size);
        for (int s = 1; s < size; ++s) {
            Poly x = Poly::var(cm.target, off + s - 1);
            cm.inverse[off + s - 1] = s == 1 ? x * top : x * top.pow(2 * s);
        }
    };
    block(0, n);
    block(n, m);
    for (int i = 0; i < l; ++i)
        if (!cm.inverse[i].is_homogeneous(1))
            throw AlgebraError("w -> v map is not homogeneous");
    return cm;
}

FlatChart flat_coords_c(int l, int m)
{
    if (l < 2)
        throw UsageError("type C needs rank at least 2");
    if (m < 0 || m > l)
        throw UsageError("pencil parameter m must satisfy 0 <= m <= rank");
    int n = l - m;
    FlatChart fc;
    fc.kind = Kind::C;
    fc.l = l;
    fc.m = m;
    ShiftedPencil sp = shift_to_pencil_c(l, m);
    fc.base = sp.z;
    fc.base_eta = sp.eta;
    fc.base_g = sp.g;
    fc.degrees = degree_vector(build_root_system(Kind::C, l), m);

    TauChange tc = tau_change_c(sp);
    if (tc.eta_tau != tc.expected)
        throw AlgebraError("eta in the tau chart differs from the block form");
    fc.steps.push_back(make_step("tau", tc.map, nullptr, fc.base_eta, fc.base_g));

    WChange wc = tau_to_w(l, m, fc.steps.back().eta);
    fc.gauge = wc.gauge;
    fc.steps.push_back(make_step("w", wc.map, &fc.steps.back(), {}, {}));
    if (fc.steps.back().eta != tau_block_form(l, m, wc.map.target, true))
        throw AlgebraError("eta in the w chart differs from the simplified block form");

    fc.steps.push_back(make_step("v", w_to_v(l, m, wc.map.target), &fc.steps.back(), {}, {}));
    const PolyMatrix& eta_v = fc.steps.back().eta;
    TablePtr V = eta_v.table();
    auto gamma = christoffel_lower(eta_v);

    std::vector<Poly> fwd(l, Poly(V));
    auto block = [&](int off, int size) {
        if (size == 0)
            return;
        Poly top = Poly::var(V, off + size - 1);
        fwd[off + size - 1] = top;
        for (int s = 1; s < size; ++s) {
            std::vector<std::size_t> later;
            for (int k = (s == 1 ? 2 : s + 1); k < size; ++k)
                later.push_back(off + k - 1);
            Poly x = Poly::var(V, off + s - 1);
            FlatSolve r;
            if (s == 1)
                r = solve_flat_coordinate(gamma, x, top, monomials_of_degree(V, later, frac(size - 1, size)));
            else
                r = solve_flat_coordinate(gamma, top * x, top, monomials_of_degree(V, later, frac(size - s, size)));
            for (auto& gname : r.gauge)
                fc.gauge.push_back("t" + std::to_string(off + s) + ": coefficient of " + gname + " set to 0");
            fwd[off + s - 1] = r.value;
        }
    };
    block(0, n);
    block(n, m);
    std::vector<Variable> tv;
    for (int a = 1; a <= l; ++a)
        tv.push_back({"t" + std::to_string(a), fc.degrees[a - 1], a == n || a == l});
    fc.t = make_table(tv);
    fc.steps.push_back(make_step("t", invert_triangular_map(fwd, fc.t), &fc.steps.back(), {}, {}));
    finish(fc);
    return fc;
}

FlatChart flat_coords(Kind kind, int l, std::optional<int> m)
{
    if (kind == Kind::A)
        return flat_coords_a(l);
    if (kind == Kind::C) {
        if (!m)
            throw UsageError("type C needs the pencil parameter m");
        return flat_coords_c(l, *m);
    }
    throw UsageError("flat coordinates are only built for types A and C");
}

}  // namespace frobkit
