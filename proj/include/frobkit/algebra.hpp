#pragma once

#include "frobkit/matrix.hpp"

namespace frobkit {

// elementary symmetric polynomial e_k of the variables `vars` in table t
Poly elementary(const TablePtr& t, const std::vector<std::size_t>& vars, int k);

// rewrite a symmetric polynomial in u_1..u_n (all variables of p's table) through
// e_k -> targets[k-1]
Poly reduce_symmetric(const Poly& p, const std::vector<Poly>& targets, const TablePtr& target_table);

struct CoordinateMap {
    TablePtr source, target;
    std::vector<Poly> forward;  // target variables in source variables (may be empty)
    std::vector<Poly> inverse;  // source variables in target variables

    bool check_round_trip() const;
    nlohmann::json to_json() const;
};

CoordinateMap invert_triangular_map(const std::vector<Poly>& forward, const TablePtr& target);
CoordinateMap compose(const CoordinateMap& first, const CoordinateMap& second);

PolyMatrix jacobian(const std::vector<Poly>& f);  // rows: functions, cols: variables
// contravariant 2-tensor moved from map.source to map.target through the inverse
PolyMatrix pushforward_metric(const CoordinateMap& map, const PolyMatrix& metric);

Poly euler_integrate(const PolyMatrix& second_derivs, const std::vector<Rational>& degrees);

}  // namespace frobkit
