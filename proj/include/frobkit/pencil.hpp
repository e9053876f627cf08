#pragma once

#include "frobkit/invariants.hpp"

namespace frobkit {

// coefficient list, index k = coefficient of u^k
using UPoly = std::vector<Rational>;
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_pow_linear(const Rational& shift, int k);  // (u + shift)^k

struct PencilSpec {
    int l = 0, m = 0;
    QVector c;          // z^j = y^j + c_j lambda
    UPoly P0, P1, P2;

    nlohmann::json to_json() const;
};

PencilSpec pencil_spec(int l, int m);

struct Split {
    PolyMatrix g, eta;  // in the coordinate table (lambda removed)
};

Split split_pencil(const PolyMatrix& g_lambda, std::size_t lambda_index, const TablePtr& coords);

struct ShiftedPencil {
    PencilSpec spec;
    MetricPencil pencil;  // in z1..zl, lambda
    TablePtr z;           // z1..zl
    PolyMatrix g, eta;
};

ShiftedPencil shift_to_pencil_c(int l, int m);

struct TauChange {
    CoordinateMap map;  // z -> tau
    PolyMatrix eta_tau;
    PolyMatrix expected;  // block form with R_s, S_r
    Poly det;
    Poly det_expected_abs;
    int det_sign_exponent = 0;  // expected sign is (-1)^this
    bool det_abs_ok = false;
    bool det_sign_ok = false;
};

TablePtr tau_table(int l, int m, const std::string& prefix = "tau");
// block form of eta in the tau chart, entries in variables of table t
PolyMatrix tau_block_form(int l, int m, const TablePtr& t, bool simplified);
TauChange tau_change_c(const ShiftedPencil& sp);

}  // namespace frobkit
