#pragma once

#include <Eigen/Dense>

#include "frobkit/frobenius.hpp"

namespace frobkit {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// superpotential A: p^{l+1} + a1 p^l + ... + al p
//                C: (p^2-1) p^{-2m} (a1 p^{2(l-1)} + ... + al)
// m = l is carried by p -> 1/p onto the m = 0 model with a' = -reverse(a)
struct LGModel {
    Kind kind = Kind::A;
    int l = 0;
    int m = -1;
    std::vector<cplx> a;

    bool flipped = false;
    int m_eff = -1;
    std::vector<cplx> a_eff;

    std::vector<cplx> q;     // critical points (for C one of each pair +-q)
    std::vector<cplx> u;     // critical values
    std::vector<cplx> lam2;  // second derivative at q
    std::vector<double> cim; // 2 - [q = 0] for C, 1 for A

    cplx Lambda(cplx p) const;
    cplx dLambda(cplx p) const;
    cplx dLambda_da(int alpha, cplx p) const;  // effective coordinates, alpha 0-based

    nlohmann::json to_json() const;
};

struct LGFloors {
    double lam2 = 1e-6;
    double separation = 1e-4;
    double crit_value = 1e-6;
    double branch = 0.2;  // distance of arg from pi for fractional powers
};

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);  // coeffs[k] of x^k

LGModel lg_model(Kind kind, int l, int m, std::vector<cplx> a, const LGFloors& floors = {});
LGModel lg_sample(Kind kind, int l, int m, std::mt19937_64& rng, const LGFloors& floors = {}, int tries = 1000);

struct LGTensors {
    CMat V;       // du_i / da_alpha
    CVec f;       // eta(d_ui, d_ui) covariant
    CMat eta_a;   // contravariant, coefficient coordinates
    CMat g_a;
    CVec e_a;     // sum d_ui
    CVec E_a;     // sum u_i d_ui
};

LGTensors lg_metrics(const LGModel& model);

// contour quadrature around every critical point: eta, g covariant and c as c[k](i, j)
struct LGQuadrature {
    CMat eta, g;
    std::vector<CMat> c;
};
LGQuadrature lg_quadrature(const LGModel& model, int nodes = 64);

std::vector<cplx> lg_flat_coords(Kind kind, int l, int m, const std::vector<cplx>& a);
CMat lg_flat_jacobian(Kind kind, int l, int m, const std::vector<cplx>& a);  // d t~ / d a
CMat lg_flat_eta(const LGModel& model);  // covariant eta in t~
std::vector<CMat> lg_flat_c(const LGModel& model);  // c~_{abk} as c[k](a, b), covariant
QMatrix lg_expected_flat_eta(Kind kind, int l, int m);  // covariant

// C-type change a -> z
QMatrix lg_h_matrix(int l);

// pencil index on the exact side the residue structure lands on
int lg_partner_m(int l, int m);

NumericReport lg_isomorphism_check(Kind kind, int l, std::optional<int> m, int n_samples, std::uint64_t seed,
                                   double tol = 1e-8);
NumericReport lg_symmetry_check(Kind kind, int l, std::optional<int> m, int n_samples, std::uint64_t seed,
                                double h_step = 1e-5, double tol = 1e-6);

}  // namespace frobkit
