#include "frobkit/algebra.hpp"

#include <functional>

namespace frobkit {

Poly elementary(const TablePtr& t, const std::vector<std::size_t>& vars, int k)
{
    // e_0..e_k by the usual one-variable-at-a-time recursion
    std::vector<Poly> e(k + 1, Poly(t));
    e[0] = Poly(t, 1);
    for (auto v : vars) {
        Poly x = Poly::var(t, v);
        for (int j = k; j >= 1; --j)
            e[j] += e[j - 1] * x;
    }
    return e[k];
}

Poly reduce_symmetric(const Poly& p, const std::vector<Poly>& targets, const TablePtr& target_table)
{
    const TablePtr& u = p.table();
    std::size_t n = u->size();
    if (targets.size() != n)
        throw AlgebraError("reduce_symmetric: need one target per elementary polynomial");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<Poly> img;
        for (std::size_t k = 0; k < n; ++k)
            img.push_back(Poly::var(u, k == i ? i + 1 : k == i + 1 ? i : k));
        if (p.subst(img, u) != p)
            throw AlgebraError("reduce_symmetric: input is not symmetric");
    }
    for (auto& [e, c] : p.terms())
        for (int k : e)
            if (k < 0)
                throw AlgebraError("reduce_symmetric: negative exponent");

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = i;
    std::vector<Poly> es;
    for (std::size_t k = 1; k <= n; ++k)
        es.push_back(elementary(u, all, int(k)));
    std::vector<std::map<int, Poly>> epow(n), tpow(n);
    auto power = [](std::vector<std::map<int, Poly>>& cache, const Poly& base, std::size_t i, int k) -> const Poly& {
        auto it = cache[i].find(k);
        if (it != cache[i].end())
            return it->second;
        return cache[i].emplace(k, base.pow(k)).first->second;
    };

    Poly rest = p;
    Poly out(target_table);
    while (!rest.is_zero()) {
        auto lead = rest.terms().rbegin();
        Exponent a = lead->first;
        Rational c = lead->second;
        Poly sub(u, c);
        Poly img(target_table, c);
        for (std::size_t k = 0; k < n; ++k) {
            int d = a[k] - (k + 1 < n ? a[k + 1] : 0);
            if (d < 0)
                throw AlgebraError("reduce_symmetric: leading exponent not a partition");
            if (d == 0)
                continue;
            sub = sub * power(epow, es[k], k, d);
            img = img * power(tpow, targets[k], k, d);
        }
        rest -= sub;
        out += img;
    }
    return out;
}

bool CoordinateMap::check_round_trip() const
{
    if (!forward.empty()) {
        for (std::size_t j = 0; j < forward.size(); ++j)
            if (forward[j].subst(inverse, target) != Poly::var(target, j))
                return false;
        for (std::size_t i = 0; i < inverse.size(); ++i)
            if (inverse[i].subst(forward, source) != Poly::var(source, i))
                return false;
    }
    return true;
}

nlohmann::json CoordinateMap::to_json() const
{
    nlohmann::json j;
    j["source"] = table_to_json(*source);
    j["target"] = table_to_json(*target);
    auto f = nlohmann::json::object(), g = nlohmann::json::object();
    for (std::size_t k = 0; k < forward.size(); ++k)
        f[(*target)[k].name] = forward[k].str();
    for (std::size_t k = 0; k < inverse.size(); ++k)
        g[(*source)[k].name] = inverse[k].str();
    j["forward"] = f;
    j["inverse"] = g;
    return j;
}

CoordinateMap invert_triangular_map(const std::vector<Poly>& forward, const TablePtr& target)
{
    if (forward.empty())
        throw AlgebraError("empty map");
    TablePtr src = forward[0].table();
    std::size_t n = src->size();
    if (forward.size() != n || target->size() != n)
        throw AlgebraError("triangular map must be square");
    for (std::size_t j = 0; j < n; ++j)
        if (!forward[j].is_zero() && forward[j].is_homogeneous() && forward[j].degree() != (*target)[j].deg)
            throw AlgebraError("map entry " + (*target)[j].name + " has the wrong degree");

    std::vector<std::optional<Poly>> solved(n);
    std::vector<bool> used(n, false);
    auto images = [&]() {
        std::vector<Poly> img;
        for (std::size_t i = 0; i < n; ++i)
            img.push_back(solved[i] ? *solved[i] : Poly(target));
        return img;
    };
    for (std::size_t round = 0; round < n; ++round) {
        bool progress = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j])
                continue;
            const Poly& f = forward[j];
            std::optional<std::size_t> x;
            bool single = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (solved[i])
                    continue;
                bool appears = false;
                for (auto& [e, c] : f.terms())
                    if (e[i]) {
                        appears = true;
                        break;
                    }
                if (appears) {
                    if (x)
                        single = false;
                    x = i;
                }
            }
            if (!x || !single)
                continue;
            if (f.max_exponent(*x) != 1 || f.min_exponent(*x) < 0)
                continue;
            auto img = images();
            Poly a = f.coefficient(*x, 1).subst(img, target);
            Poly b = f.coefficient(*x, 0).subst(img, target);
            if (!a.is_unit())
                continue;
            solved[*x] = (Poly::var(target, j) - b) * a.unit_inverse();
            used[j] = true;
            progress = true;
        }
        if (!progress)
            break;
    }
    CoordinateMap m;
    m.source = src;
    m.target = target;
    m.forward = forward;
    for (std::size_t i = 0; i < n; ++i) {
        if (!solved[i])
            throw AlgebraError("map is not triangular in " + (*src)[i].name);
        m.inverse.push_back(*solved[i]);
    }
    if (!m.check_round_trip())
        throw AlgebraError("triangular inversion failed round trip");
    return m;
}

CoordinateMap compose(const CoordinateMap& first, const CoordinateMap& second)
{
    CoordinateMap m;
    m.source = first.source;
    m.target = second.target;
    if (!first.forward.empty() && !second.forward.empty())
        for (auto& f : second.forward)
            m.forward.push_back(f.subst(first.forward, first.source));
    for (auto& g : first.inverse)
        m.inverse.push_back(g.subst(second.inverse, second.target));
    return m;
}

PolyMatrix jacobian(const std::vector<Poly>& f)
{
    TablePtr t = f.at(0).table();
    PolyMatrix j(t, f.size(), t->size());
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t i = 0; i < t->size(); ++i)
            j(a, i) = f[a].partial(i);
    return j;
}

PolyMatrix pushforward_metric(const CoordinateMap& map, const PolyMatrix& metric)
{
    PolyMatrix d = jacobian(map.inverse);
    PolyMatrix di = matrix_adjugate_inverse(d);
    PolyMatrix g = metric.subst(map.inverse, map.target);
    return di * g * di.transpose();
}

Poly euler_integrate(const PolyMatrix& M, const std::vector<Rational>& d)
{
    TablePtr t = M.table();
    std::size_t n = d.size();
    if (M.rows() != n || M.cols() != n)
        throw AlgebraError("euler_integrate: shape mismatch");
    if (!M.is_symmetric())
        throw AlgebraError("euler_integrate: second derivatives not symmetric");
    std::vector<Poly> dF(n, Poly(t));
    for (std::size_t b = 0; b < n; ++b) {
        Rational w = 2 - d[b];
        if (w == 0)
            throw AlgebraError("euler_integrate: zero weight");
        for (std::size_t a = 0; a < n; ++a)
            dF[b] += d[a] * Poly::var(t, a) * M(a, b);
        dF[b] *= Rational(1) / w;
    }
    Poly F(t);
    for (std::size_t b = 0; b < n; ++b)
        F += d[b] * Poly::var(t, b) * dF[b];
    F *= frac(1, 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (F.partial(a).partial(b) != M(a, b))
                throw AlgebraError("euler_integrate: inconsistent second derivatives at (" + std::to_string(a + 1) +
                                   "," + std::to_string(b + 1) + ")");
    return F;
}

}  // namespace frobkit
