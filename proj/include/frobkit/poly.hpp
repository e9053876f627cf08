#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace frobkit {

using Rational = mpq_class;
using cplx = std::complex<double>;

// exit-code classes used by the cli
struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
Rational rational_pow(const Rational& q, int k);
inline Rational frac(long n, long d)
{
    Rational q(n, d);
    q.canonicalize();
    return q;
}

struct Variable {
    std::string name;
    Rational deg;
    bool invertible = false;
};

class VariableTable {
public:
    explicit VariableTable(std::vector<Variable> vars);

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;

    bool operator==(const VariableTable& o) const;

private:
    std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;
TablePtr make_table(std::vector<Variable> vars);
// names prefix1..prefixN with a common degree
std::vector<Variable> numbered(const std::string& prefix, int n, const Rational& deg, bool inv = false);

bool same_table(const TablePtr& a, const TablePtr& b);

using Exponent = std::vector<int>;

class Poly {
public:
    Poly() = default;
    explicit Poly(TablePtr t) : table_(std::move(t)) {}
    Poly(TablePtr t, const Rational& c);

    static Poly var(TablePtr t, std::size_t i, int power = 1);
    static Poly var(TablePtr t, std::string_view name, int power = 1);
    static Poly monomial(TablePtr t, const Exponent& e, const Rational& c);

    const TablePtr& table() const { return table_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponent& e, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(int k) const;
    Poly partial(std::size_t var) const;
    Poly partial(std::string_view name) const;

    // degree of every term; throws on zero or on inhomogeneous input
    Rational degree() const;
    bool is_homogeneous() const;
    bool is_homogeneous(const Rational& d) const;
    int max_exponent(std::size_t var) const;
    int min_exponent(std::size_t var) const;
    Poly coefficient(std::size_t var, int k) const;

    // single term whose variables with nonzero exponent are all invertible
    bool is_unit() const;
    Poly unit_inverse() const;

    Poly subst(const std::vector<Poly>& images, const TablePtr& target) const;
    Poly rebase(const TablePtr& target) const;
    cplx eval(const std::vector<cplx>& x) const;

    std::string str() const;
    nlohmann::json to_json() const;

private:
    TablePtr table_;
    std::map<Exponent, Rational> terms_;
    void check_table(const Poly& o) const;
};

Rational monomial_degree(const VariableTable& t, const Exponent& e);
std::vector<std::pair<Exponent, Rational>> ordered_terms(const Poly& p);

Poly parse_poly(std::string_view text, const TablePtr& table);
Poly poly_from_json(const nlohmann::json& j);
Poly poly_from_json(const nlohmann::json& j, const TablePtr& table);
nlohmann::json table_to_json(const VariableTable& t);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace frobkit
