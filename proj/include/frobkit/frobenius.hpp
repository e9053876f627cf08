#pragma once

#include "frobkit/flat.hpp"

namespace frobkit {

struct FrobeniusData {
    FlatChart chart;
    std::vector<Rational> degrees;
    QMatrix eta, eta_low;
    PolyMatrix g;
    Poly F;
    std::vector<PolyMatrix> c;  // c[gamma](alpha, beta)
    std::vector<Poly> e_num;     // e^alpha = e_num[alpha] / e_den
    Poly e_den;
    Rational charge = 1;

    const TablePtr& t() const { return chart.t; }
    nlohmann::json to_json() const;
};

Poly potential_from_intersection(const PolyMatrix& g, const QMatrix& eta, const std::vector<Rational>& degrees);
std::vector<PolyMatrix> structure_constants(const Poly& F, const QMatrix& eta);
// e = -grad_eta log r, returned as (numerators, r)
std::pair<std::vector<Poly>, Poly> unit_field(const Poly& r, const QMatrix& eta);

FrobeniusData build_frobenius(const FlatChart& chart);
FrobeniusData build_frobenius(Kind kind, int l, std::optional<int> m);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct AxiomReport {
    std::vector<CheckResult> checks;
    bool pass() const;
    nlohmann::json to_json() const;
};

AxiomReport verify_axioms(const FrobeniusData& fd);

// c from third derivatives vs the connection formula of g, at random complex points
NumericReport connection_cross_check(const FrobeniusData& fd, int points, std::uint64_t seed, double tol);

QMatrix rational_inverse(const QMatrix& m);

// F(l, l-m) relabelled block-wise against F(l, m), with and without the eta-preserving
// rescaling t^a -> nu_b^{d_a - 1/2} t^a (nu = 1/4 on the first block, 4 on the second)
struct EquivalenceReport {
    int l = 0, m = 0;
    bool relabel_equal = false;
    bool rescaled_equal = false;
    Rational nu1 = frac(1, 4), nu2 = 4;
    std::string detail;
    nlohmann::json to_json() const;
};
EquivalenceReport equivalence_check(int l, int m);

}  // namespace frobkit
