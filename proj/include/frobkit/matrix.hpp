#pragma once

#include <functional>

#include "frobkit/poly.hpp"

namespace frobkit {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(TablePtr t, std::size_t rows, std::size_t cols);
    static PolyMatrix identity(TablePtr t, std::size_t n);
    static PolyMatrix constant(TablePtr t, const std::vector<std::vector<Rational>>& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const TablePtr& table() const { return table_; }
    Poly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    PolyMatrix transpose() const;
    PolyMatrix map(const std::function<Poly(const Poly&)>& f) const;
    PolyMatrix subst(const std::vector<Poly>& images, const TablePtr& target) const;
    PolyMatrix partial(std::size_t var) const;
    bool is_symmetric() const;
    bool is_constant() const;
    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Rational& c, const PolyMatrix& a);

    nlohmann::json to_json() const;  // rows of text polynomials
    std::string str() const;

private:
    TablePtr table_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> a_;
};

Poly determinant(const PolyMatrix& m);
PolyMatrix adjugate(const PolyMatrix& m);
// adjugate / det; det must be a unit of the Laurent ring
PolyMatrix matrix_adjugate_inverse(const PolyMatrix& m);

// rational linear algebra
using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

struct LinearSolution {
    bool consistent = true;
    QVector x;                       // free variables set to zero
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free;
    std::vector<bool> determined;    // pivot whose row has no free-column entries
};
LinearSolution solve_linear(QMatrix a, QVector b);

// Solve polynomial equations in the unknown variables `unknowns` (indices in the equations'
// table) by repeatedly solving the equations that are currently linear. Unknowns left free
// are set to zero and reported in `gauge`.
struct PeelResult {
    std::vector<Rational> values;
    std::vector<std::size_t> gauge;
};
PeelResult solve_by_peeling(std::vector<Poly> equations, const std::vector<std::size_t>& unknowns);

// coefficients of p with respect to the variables in `main`, as polynomials in the rest
std::vector<Poly> coefficients_in(const Poly& p, const std::vector<std::size_t>& main);

}  // namespace frobkit
