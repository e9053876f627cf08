#include "frobkit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace frobkit {

Rational parse_rational(std::string_view s)
{
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (t.empty())
        throw AlgebraError("empty rational");
    if (t[0] == '+')
        t.erase(0, 1);
    Rational q;
    if (q.set_str(t, 10) != 0)
        throw AlgebraError("bad rational '" + std::string(s) + "'");
    if (q.get_den() == 0)
        throw AlgebraError("zero denominator");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_pow(const Rational& q, int k)
{
    if (k < 0) {
        if (q == 0)
            throw AlgebraError("0 to negative power");
        return rational_pow(Rational(1) / q, -k);
    }
    Rational r = 1, b = q;
    while (k) {
        if (k & 1)
            r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

VariableTable::VariableTable(std::vector<Variable> vars) : vars_(std::move(vars))
{
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (vars_[i].name == vars_[j].name)
                throw AlgebraError("duplicate variable " + vars_[i].name);
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t VariableTable::index(std::string_view name) const
{
    auto i = find(name);
    if (!i)
        throw AlgebraError("unknown variable " + std::string(name));
    return *i;
}

bool VariableTable::operator==(const VariableTable& o) const
{
    if (vars_.size() != o.vars_.size())
        return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name != o.vars_[i].name || vars_[i].deg != o.vars_[i].deg ||
            vars_[i].invertible != o.vars_[i].invertible)
            return false;
    return true;
}

TablePtr make_table(std::vector<Variable> vars)
{
    return std::make_shared<const VariableTable>(std::move(vars));
}

std::vector<Variable> numbered(const std::string& prefix, int n, const Rational& deg, bool inv)
{
    std::vector<Variable> v;
    for (int i = 1; i <= n; ++i)
        v.push_back({prefix + std::to_string(i), deg, inv});
    return v;
}

bool same_table(const TablePtr& a, const TablePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

Rational monomial_degree(const VariableTable& t, const Exponent& e)
{
    Rational d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i])
            d += t[i].deg * e[i];
    return d;
}

Poly::Poly(TablePtr t, const Rational& c) : table_(std::move(t))
{
    if (c != 0)
        terms_[Exponent(table_->size(), 0)] = c;
}

Poly Poly::var(TablePtr t, std::size_t i, int power)
{
    Exponent e(t->size(), 0);
    e.at(i) = power;
    return monomial(t, e, 1);
}

Poly Poly::var(TablePtr t, std::string_view name, int power)
{
    auto i = t->index(name);
    return var(t, i, power);
}

Poly Poly::monomial(TablePtr t, const Exponent& e, const Rational& c)
{
    Poly p(std::move(t));
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    for (int k : terms_.begin()->first)
        if (k)
            return false;
    return true;
}

Rational Poly::constant_term() const
{
    if (!table_)
        return 0;
    auto it = terms_.find(Exponent(table_->size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rational& c)
{
    if (c == 0)
        return;
    if (e.size() != table_->size())
        throw AlgebraError("exponent length mismatch");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && !(*table_)[i].invertible)
            throw AlgebraError("negative exponent on non-invertible variable " + (*table_)[i].name);
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void Poly::check_table(const Poly& o) const
{
    if (!same_table(table_, o.table_))
        throw AlgebraError("variable table mismatch");
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (!table_)
        table_ = o.table_;
    check_table(o);
    for (auto& [e, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (!table_)
        table_ = o.table_;
    check_table(o);
    for (auto& [e, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(e, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    a.check_table(b);
    Poly r(a.table_);
    Exponent e(a.table_->size());
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            auto [it, fresh] = r.terms_.try_emplace(e, ca * cb);
            if (!fresh) {
                it->second += ca * cb;
                if (it->second == 0)
                    r.terms_.erase(it);
            }
        }
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    if (terms_.empty() && o.terms_.empty())
        return true;
    return same_table(table_, o.table_) && terms_ == o.terms_;
}

Poly Poly::pow(int k) const
{
    if (k < 0)
        return unit_inverse().pow(-k);
    Poly r(table_, 1), b = *this;
    while (k) {
        if (k & 1)
            r = r * b;
        k >>= 1;
        if (k)
            b = b * b;
    }
    return r;
}

Poly Poly::partial(std::size_t v) const
{
    if (v >= table_->size())
        throw AlgebraError("unknown variable index");
    Poly r(table_);
    for (auto& [e, c] : terms_) {
        if (e[v] == 0)
            continue;
        Exponent f = e;
        f[v] -= 1;
        r.terms_.emplace(f, c * e[v]);
    }
    return r;
}

Poly Poly::partial(std::string_view name) const { return partial(table_->index(name)); }

Rational Poly::degree() const
{
    if (terms_.empty())
        throw AlgebraError("degree of the zero polynomial is undefined");
    Rational d = monomial_degree(*table_, terms_.begin()->first);
    for (auto& [e, c] : terms_)
        if (monomial_degree(*table_, e) != d)
            throw AlgebraError("polynomial is not quasi-homogeneous");
    return d;
}

bool Poly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    return is_homogeneous(monomial_degree(*table_, terms_.begin()->first));
}

bool Poly::is_homogeneous(const Rational& d) const
{
    for (auto& [e, c] : terms_)
        if (monomial_degree(*table_, e) != d)
            return false;
    return true;
}

int Poly::max_exponent(std::size_t v) const
{
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e[v] > m)
            m = e[v];
        first = false;
    }
    return m;
}

int Poly::min_exponent(std::size_t v) const
{
    int m = 0;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (first || e[v] < m)
            m = e[v];
        first = false;
    }
    return m;
}

Poly Poly::coefficient(std::size_t v, int k) const
{
    Poly r(table_);
    for (auto& [e, c] : terms_)
        if (e[v] == k) {
            Exponent f = e;
            f[v] = 0;
            r.terms_.emplace(f, c);
        }
    return r;
}

bool Poly::is_unit() const
{
    if (terms_.size() != 1)
        return false;
    auto& e = terms_.begin()->first;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] && !(*table_)[i].invertible)
            return false;
    return true;
}

Poly Poly::unit_inverse() const
{
    if (!is_unit())
        throw AlgebraError("not a unit: " + str());
    auto& [e, c] = *terms_.begin();
    Exponent f = e;
    for (int& k : f)
        k = -k;
    return monomial(table_, f, Rational(1) / c);
}

Poly Poly::subst(const std::vector<Poly>& images, const TablePtr& target) const
{
    if (images.size() != table_->size())
        throw AlgebraError("substitution arity mismatch");
    std::vector<std::map<int, Poly>> cache(images.size());
    auto power = [&](std::size_t i, int k) -> const Poly& {
        auto it = cache[i].find(k);
        if (it != cache[i].end())
            return it->second;
        if (images[i].table() && !same_table(images[i].table(), target))
            throw AlgebraError("substitution image in wrong table");
        Poly base = images[i].table() ? images[i] : Poly(target);
        return cache[i].emplace(k, base.pow(k)).first->second;
    };
    Poly r(target);
    for (auto& [e, c] : terms_) {
        Poly t(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                t = t * power(i, e[i]);
        r += t;
    }
    return r;
}

Poly Poly::rebase(const TablePtr& target) const
{
    std::vector<Poly> img;
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto j = target->find((*table_)[i].name);
        img.push_back(j ? Poly::var(target, *j) : Poly(target));
    }
    for (auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && !target->find((*table_)[i].name))
                throw AlgebraError("rebase drops used variable " + (*table_)[i].name);
    return subst(img, target);
}

cplx Poly::eval(const std::vector<cplx>& x) const
{
    cplx s = 0;
    for (auto& [e, c] : terms_) {
        cplx t = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                t *= std::pow(x[i], e[i]);
        s += t;
    }
    return s;
}

std::vector<std::pair<Exponent, Rational>> ordered_terms(const Poly& p)
{
    std::vector<std::pair<Exponent, Rational>> v(p.terms().begin(), p.terms().end());
    auto& t = *p.table();
    std::vector<Rational> deg;
    for (auto& x : v)
        deg.push_back(monomial_degree(t, x.first));
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (deg[a] != deg[b])
            return deg[a] > deg[b];
        return v[a].first > v[b].first;
    });
    std::vector<std::pair<Exponent, Rational>> out;
    for (auto i : idx)
        out.push_back(v[i]);
    return out;
}

std::string Poly::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : ordered_terms(*this)) {
        Rational a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (!mono.empty())
                mono += "*";
            mono += (*table_)[i].name;
            if (e[i] != 1)
                mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            os << to_string(a);
        else if (a == 1)
            os << mono;
        else
            os << to_string(a) << "*" << mono;
    }
    return os.str();
}

nlohmann::json table_to_json(const VariableTable& t)
{
    auto vars = nlohmann::json::array();
    for (auto& v : t.vars())
        vars.push_back({{"name", v.name}, {"deg", to_string(v.deg)}, {"invertible", v.invertible}});
    return vars;
}

nlohmann::json Poly::to_json() const
{
    nlohmann::json j;
    j["vars"] = table_to_json(*table_);
    auto terms = nlohmann::json::array();
    for (auto& [e, c] : ordered_terms(*this)) {
        nlohmann::json ex = nlohmann::json::object();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                ex[(*table_)[i].name] = e[i];
        terms.push_back({{"coeff", to_string(c)}, {"exp", ex}});
    }
    j["terms"] = terms;
    return j;
}

Poly poly_from_json(const nlohmann::json& j)
{
    std::vector<Variable> vars;
    for (auto& v : j.at("vars"))
        vars.push_back({v.at("name").get<std::string>(), parse_rational(v.at("deg").get<std::string>()),
                        v.value("invertible", false)});
    return poly_from_json(j, make_table(std::move(vars)));
}

Poly poly_from_json(const nlohmann::json& j, const TablePtr& table)
{
    Poly p(table);
    for (auto& t : j.at("terms")) {
        Exponent e(table->size(), 0);
        for (auto& [name, k] : t.at("exp").items())
            e[table->index(name)] = k.get<int>();
        p.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
    }
    return p;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

namespace {

// recursive descent: expr := term (('+'|'-') term)*, term := factor (('*'|'/') factor)*,
// factor := ('-'|'+') factor | atom ('^' int)?, atom := number | name | '(' expr ')'
class Parser {
public:
    Parser(std::string_view s, const TablePtr& t) : s_(s), t_(t) {}

    Poly run()
    {
        Poly p = expr();
        skip();
        if (i_ != s_.size())
            fail("trailing input");
        return p;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    const TablePtr& t_;

    [[noreturn]] void fail(const std::string& msg)
    {
        throw AlgebraError("parse error at " + std::to_string(i_) + ": " + msg + " in '" + std::string(s_) + "'");
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly p = term();
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }

    Poly term()
    {
        Poly p = factor();
        for (;;) {
            if (eat('*'))
                p = p * factor();
            else if (eat('/')) {
                Poly d = factor();
                if (d.is_zero())
                    fail("division by zero");
                p = p * d.unit_inverse();
            } else
                return p;
        }
    }

    Poly factor()
    {
        if (eat('-'))
            return -factor();
        if (eat('+'))
            return factor();
        Poly a = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (st == i_)
                fail("exponent expected");
            int k = std::stoi(std::string(s_.substr(st, i_ - st)));
            a = a.pow(neg ? -k : k);
        }
        return a;
    }

    Poly atom()
    {
        skip();
        if (i_ >= s_.size())
            fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Poly p = expr();
            if (!eat(')'))
                fail("')' expected");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            return Poly(t_, parse_rational(s_.substr(st, i_ - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            auto name = s_.substr(st, i_ - st);
            auto k = t_->find(name);
            if (!k)
                fail("unknown variable " + std::string(name));
            return Poly::var(t_, *k);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

Poly parse_poly(std::string_view text, const TablePtr& table) { return Parser(text, table).run(); }

}  // namespace frobkit
