#pragma once

#include "frobkit/frobenius.hpp"

namespace frobkit {

// eta(y) entries (2l+2-i-j) y^{i+j-1-l}, anti-diagonal l+1, det, eta(t) = (l+1) anti-identity
std::vector<CheckResult> a_closed_form_checks(int l);

// lambda-degree <= 1 of the shifted pencil, |det eta(tau)|, and its sign
std::vector<CheckResult> c_pencil_checks(int l, int m);

nlohmann::json checks_json(const std::vector<CheckResult>& checks);
bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace frobkit
