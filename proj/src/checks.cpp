#include "frobkit/checks.hpp"

#include "frobkit/pencil.hpp"

namespace frobkit {

std::vector<CheckResult> a_closed_form_checks(int l)
{
    FlatChart fc = flat_coords_a(l);
    const TablePtr& y = fc.base;
    std::vector<CheckResult> out;

    CheckResult formula{"eta_formula", true, {}};
    CheckResult anti{"anti_diagonal", true, {}};
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) {
            int k = i + j - 1 - l;
            Poly want(y);
            if (k == 0)
                want = Poly(y, Rational(2 * l + 2 - i - j));
            else if (k > 0)
                want = Rational(2 * l + 2 - i - j) * Poly::var(y, k - 1);
            const Poly& got = fc.base_eta(i - 1, j - 1);
            if (got != want && formula.pass) {
                formula.pass = false;
                formula.detail = "eta(" + std::to_string(i) + "," + std::to_string(j) + ") = " + got.str() +
                                 ", formula gives " + want.str();
            }
            if (k == 0 && got != Poly(y, Rational(l + 1)) && anti.pass) {
                anti.pass = false;
                anti.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + got.str();
            }
        }
    out.push_back(formula);
    out.push_back(anti);

    CheckResult det{"det", true, {}};
    Poly d = determinant(fc.base_eta);
    Rational want = rational_pow(l + 1, l) * ((l * (l - 1) / 2) % 2 ? -1 : 1);
    if (!d.is_constant() || d.constant_term() != want) {
        det.pass = false;
        det.detail = "det = " + d.str() + ", expected " + to_string(want);
    }
    out.push_back(det);

    CheckResult flat{"eta_flat", true, {}};
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            Rational w = i + j == l - 1 ? Rational(l + 1) : Rational(0);
            const Poly& got = fc.eta_t()(i, j);
            if ((!got.is_constant() || got.constant_term() != w) && flat.pass) {
                flat.pass = false;
                flat.detail = "eta(t)(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + got.str();
            }
        }
    out.push_back(flat);
    return out;
}

std::vector<CheckResult> c_pencil_checks(int l, int m)
{
    std::vector<CheckResult> out;
    CheckResult deg{"lambda_degree", true, {}};
    std::optional<ShiftedPencil> sp;
    try {
        sp = shift_to_pencil_c(l, m);
        std::size_t li = sp->pencil.lambda_index();
        for (std::size_t i = 0; i < std::size_t(l); ++i)
            for (std::size_t j = 0; j < std::size_t(l); ++j)
                if (sp->pencil.g_lambda(i, j).max_exponent(li) > 1 && deg.pass) {
                    deg.pass = false;
                    deg.detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                }
    } catch (const AlgebraError& e) {
        deg.pass = false;
        deg.detail = e.what();
    }
    out.push_back(deg);
    if (!sp)
        return out;

    TauChange tc = tau_change_c(*sp);
    CheckResult det{"det_abs", tc.det_abs_ok, {}};
    if (!det.pass)
        det.detail = "det = " + tc.det.str() + ", expected +-" + tc.det_expected_abs.str();
    out.push_back(det);
    CheckResult sign{"det_sign", tc.det_sign_ok, {}};
    sign.detail = "det = " + tc.det.str();
    out.push_back(sign);
    CheckResult block{"tau_block_form", tc.eta_tau == tc.expected, {}};
    out.push_back(block);
    return out;
}

nlohmann::json checks_json(const std::vector<CheckResult>& checks)
{
    auto arr = nlohmann::json::array();
    for (auto& c : checks) {
        nlohmann::json e = {{"check", c.name}, {"pass", c.pass}};
        if (!c.detail.empty())
            e["detail"] = c.detail;
        arr.push_back(e);
    }
    return arr;
}

bool all_pass(const std::vector<CheckResult>& checks)
{
    for (auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

}  // namespace frobkit
