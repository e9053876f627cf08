#include "frobkit/matrix.hpp"

#include <bit>
#include <set>

namespace frobkit {

PolyMatrix::PolyMatrix(TablePtr t, std::size_t rows, std::size_t cols)
    : table_(t), rows_(rows), cols_(cols), a_(rows * cols, Poly(t))
{
}

PolyMatrix PolyMatrix::identity(TablePtr t, std::size_t n)
{
    PolyMatrix m(t, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Poly(t, 1);
    return m;
}

PolyMatrix PolyMatrix::constant(TablePtr t, const std::vector<std::vector<Rational>>& v)
{
    PolyMatrix m(t, v.size(), v.empty() ? 0 : v[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = Poly(t, v[i][j]);
    return m;
}

PolyMatrix PolyMatrix::transpose() const
{
    PolyMatrix r(table_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

PolyMatrix PolyMatrix::map(const std::function<Poly(const Poly&)>& f) const
{
    PolyMatrix r = *this;
    for (auto& p : r.a_)
        p = f(p);
    if (!r.a_.empty())
        r.table_ = r.a_[0].table();
    return r;
}

PolyMatrix PolyMatrix::subst(const std::vector<Poly>& images, const TablePtr& target) const
{
    PolyMatrix r(target, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k)
        r.a_[k] = a_[k].subst(images, target);
    return r;
}

PolyMatrix PolyMatrix::partial(std::size_t var) const
{
    return map([&](const Poly& p) { return p.partial(var); });
}

bool PolyMatrix::is_symmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

bool PolyMatrix::is_constant() const
{
    for (auto& p : a_)
        if (!p.is_constant())
            return false;
    return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw AlgebraError("matrix shape mismatch");
    PolyMatrix r(a.table_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Poly& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    r(i, j) += x * b(k, j);
        }
    return r;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw AlgebraError("matrix shape mismatch");
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k)
        r.a_[k] += b.a_[k];
    return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw AlgebraError("matrix shape mismatch");
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k)
        r.a_[k] -= b.a_[k];
    return r;
}

PolyMatrix operator*(const Rational& c, const PolyMatrix& a)
{
    PolyMatrix r = a;
    for (auto& p : r.a_)
        p *= c;
    return r;
}

nlohmann::json PolyMatrix::to_json() const
{
    auto j = nlohmann::json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < cols_; ++k)
            row.push_back((*this)(i, k).str());
        j.push_back(row);
    }
    return j;
}

std::string PolyMatrix::str() const
{
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
        s += "[";
        for (std::size_t k = 0; k < cols_; ++k) {
            if (k)
                s += ", ";
            s += (*this)(i, k).str();
        }
        s += "]\n";
    }
    return s;
}

// expansion over column subsets, rows taken in order
static Poly det_rows(const PolyMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    std::size_t n = rows.size();
    if (n == 0)
        return Poly(m.table(), 1);
    std::vector<Poly> dp(std::size_t(1) << n, Poly(m.table()));
    dp[0] = Poly(m.table(), 1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask].is_zero())
            continue;
        std::size_t k = std::popcount(mask);
        if (k == n)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t(1) << j))
                continue;
            const Poly& e = m(rows[k], cols[j]);
            if (e.is_zero())
                continue;
            int above = std::popcount(mask >> (j + 1));
            Poly t = dp[mask] * e;
            if (above & 1)
                dp[mask | (std::size_t(1) << j)] -= t;
            else
                dp[mask | (std::size_t(1) << j)] += t;
        }
    }
    return dp.back();
}

Poly determinant(const PolyMatrix& m)
{
    if (m.rows() != m.cols())
        throw AlgebraError("determinant of non-square matrix");
    std::vector<std::size_t> idx(m.rows());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    return det_rows(m, idx, idx);
}

PolyMatrix adjugate(const PolyMatrix& m)
{
    std::size_t n = m.rows();
    PolyMatrix r(m.table(), n, n);
    if (n == 1) {
        r(0, 0) = Poly(m.table(), 1);
        return r;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i)
                    rows.push_back(k);
                if (k != j)
                    cols.push_back(k);
            }
            Poly d = det_rows(m, rows, cols);
            r(j, i) = ((i + j) % 2) ? -d : d;
        }
    return r;
}

PolyMatrix matrix_adjugate_inverse(const PolyMatrix& m)
{
    Poly d = determinant(m);
    if (!d.is_unit())
        throw AlgebraError("determinant is not a unit: " + d.str());
    Poly di = d.unit_inverse();
    return adjugate(m).map([&](const Poly& p) { return p * di; });
}

LinearSolution solve_linear(QMatrix a, QVector b)
{
    LinearSolution s;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = Rational(1) / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t k = c; k < cols; ++k)
                a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        s.pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0)
            s.consistent = false;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : s.pivots)
        is_pivot[c] = true;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c])
            s.free.push_back(c);
    s.x.assign(cols, 0);
    s.determined.assign(cols, false);
    for (std::size_t i = 0; i < s.pivots.size(); ++i) {
        std::size_t c = s.pivots[i];
        s.x[c] = b[i];
        bool det = true;
        for (auto f : s.free)
            if (a[i][f] != 0)
                det = false;
        s.determined[c] = det;
    }
    return s;
}

std::vector<Poly> coefficients_in(const Poly& p, const std::vector<std::size_t>& main)
{
    std::map<Exponent, Poly> groups;
    for (auto& [e, c] : p.terms()) {
        Exponent key;
        Exponent rest = e;
        for (auto v : main) {
            key.push_back(e[v]);
            rest[v] = 0;
        }
        auto it = groups.try_emplace(key, Poly(p.table())).first;
        it->second.add_term(rest, c);
    }
    std::vector<Poly> out;
    for (auto& [k, q] : groups)
        if (!q.is_zero())
            out.push_back(q);
    return out;
}

PeelResult solve_by_peeling(std::vector<Poly> eqs, const std::vector<std::size_t>& unknowns)
{
    PeelResult res;
    if (eqs.empty()) {
        res.values.assign(unknowns.size(), 0);
        for (std::size_t k = 0; k < unknowns.size(); ++k)
            res.gauge.push_back(k);
        return res;
    }
    TablePtr t = eqs[0].table();
    std::vector<std::optional<Rational>> val(unknowns.size());
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t k = 0; k < unknowns.size(); ++k)
        slot[unknowns[k]] = k;

    auto substitute = [&]() {
        std::vector<Poly> img;
        for (std::size_t i = 0; i < t->size(); ++i) {
            auto it = slot.find(i);
            if (it != slot.end() && val[it->second])
                img.push_back(Poly(t, *val[it->second]));
            else
                img.push_back(Poly::var(t, i));
        }
        std::vector<Poly> next;
        for (auto& e : eqs) {
            Poly q = e.subst(img, t);
            if (q.is_zero())
                continue;
            if (q.is_constant())
                throw AlgebraError("inconsistent equations: " + q.str() + " = 0");
            next.push_back(std::move(q));
        }
        eqs = std::move(next);
    };

    auto total_degree = [&](const Poly& p) {
        int d = 0;
        for (auto& [e, c] : p.terms()) {
            int s = 0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] && !slot.count(i))
                    throw AlgebraError("equation involves a non-unknown variable");
                s += e[i];
            }
            d = std::max(d, s);
        }
        return d;
    };

    for (std::size_t round = 0; round <= 2 * unknowns.size() + 2; ++round) {
        substitute();
        if (eqs.empty())
            break;
        std::vector<const Poly*> lin;
        std::set<std::size_t> vars;
        for (auto& e : eqs)
            if (total_degree(e) <= 1) {
                lin.push_back(&e);
                for (auto& [ex, c] : e.terms())
                    for (std::size_t i = 0; i < ex.size(); ++i)
                        if (ex[i])
                            vars.insert(i);
            }
        if (lin.empty()) {
            // stuck on nonlinear equations: fix the first open unknown
            for (auto& e : eqs)
                for (auto& [ex, c] : e.terms())
                    for (std::size_t i = 0; i < ex.size(); ++i)
                        if (ex[i]) {
                            std::size_t k = slot[i];
                            val[k] = Rational(0);
                            res.gauge.push_back(k);
                            goto next_round;
                        }
        }
        {
            std::vector<std::size_t> cols(vars.begin(), vars.end());
            QMatrix a(lin.size(), QVector(cols.size(), 0));
            QVector b(lin.size(), 0);
            for (std::size_t r = 0; r < lin.size(); ++r)
                for (auto& [ex, c] : lin[r]->terms()) {
                    bool cst = true;
                    for (std::size_t k = 0; k < cols.size(); ++k)
                        if (ex[cols[k]]) {
                            a[r][k] = c;
                            cst = false;
                        }
                    if (cst)
                        b[r] = -c;
                }
            auto sol = solve_linear(a, b);
            if (!sol.consistent)
                throw AlgebraError("inconsistent linear system");
            bool progress = false;
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (sol.determined[k]) {
                    val[slot[cols[k]]] = sol.x[k];
                    progress = true;
                }
            if (!progress) {
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    val[slot[cols[k]]] = sol.x[k];
                }
                for (auto f : sol.free)
                    res.gauge.push_back(slot[cols[f]]);
            }
        }
    next_round:;
    }
    substitute();
    if (!eqs.empty())
        throw AlgebraError("peeling solver did not converge");
    for (std::size_t k = 0; k < unknowns.size(); ++k)
        if (!val[k]) {
            val[k] = Rational(0);
            res.gauge.push_back(k);
        }
    for (auto& v : val)
        res.values.push_back(*v);
    return res;
}

}  // namespace frobkit
