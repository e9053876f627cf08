#pragma once

#include "frobkit/pencil.hpp"
#include "frobkit/roots.hpp"

namespace frobkit {

// Gamma[k](i, j) = Gamma^k_ij of the Levi-Civita connection of the contravariant metric eta
std::vector<PolyMatrix> christoffel_lower(const PolyMatrix& eta);

// monomials of the given degree in the listed variables (non-negative exponents)
std::vector<Poly> monomials_of_degree(const TablePtr& t, const std::vector<std::size_t>& vars, const Rational& deg);

struct FlatSolve {
    Poly value;
    std::vector<std::string> gauge;  // monomials whose coefficient was left free and set to 0
};

// f = base + prefactor * sum c_k monos[k] with d_i d_j f = Gamma^k_ij d_k f
FlatSolve solve_flat_coordinate(const std::vector<PolyMatrix>& gamma, const Poly& base, const Poly& prefactor,
                                const std::vector<Poly>& monos);

struct ChartStep {
    std::string name;    // name of the target chart
    CoordinateMap map;   // previous chart -> this chart
    PolyMatrix eta, g;   // in this chart
};

struct FlatChart {
    Kind kind = Kind::A;
    int l = 0;
    int m = -1;
    TablePtr base;                // y (type A) or z (type C)
    PolyMatrix base_eta, base_g;
    std::vector<ChartStep> steps;  // last step is the flat chart
    TablePtr t;
    std::vector<Rational> degrees;
    QMatrix eta_flat;
    std::vector<Poly> base_in_t;  // base coordinates as functions of t
    std::vector<std::string> gauge;

    const PolyMatrix& eta_t() const { return steps.back().eta; }
    const PolyMatrix& g_t() const { return steps.back().g; }
    const CoordinateMap& last_map() const { return steps.back().map; }
    const ChartStep& step(const std::string& name) const;
    nlohmann::json to_json() const;
};

QMatrix expected_flat_eta(Kind kind, int l, int m);

FlatChart flat_coords_a(int l);
FlatChart flat_coords_c(int l, int m);
FlatChart flat_coords(Kind kind, int l, std::optional<int> m);

// tau -> w: the triangular change taking eta to the simplified block form
struct WChange {
    CoordinateMap map;
    std::vector<std::string> gauge;
};
WChange tau_to_w(int l, int m, const PolyMatrix& eta_tau);

TablePtr v_table(int l, int m);
CoordinateMap w_to_v(int l, int m, const TablePtr& w);

}  // namespace frobkit
