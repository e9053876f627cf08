#pragma once

#include <random>

#include "frobkit/algebra.hpp"
#include "frobkit/roots.hpp"

namespace frobkit {

// table = coordinates x1..xn followed by lambda
struct MetricPencil {
    TablePtr table;
    std::size_t n = 0;
    PolyMatrix g_lambda;
    std::vector<PolyMatrix> christoffel;  // christoffel[k](i,j) = Gamma^{ij}_{lambda,k}

    std::size_t lambda_index() const { return n; }
};

TablePtr pencil_table_a(int l);
TablePtr pencil_table_c(int l, const std::string& prefix = "y");

MetricPencil metric_pencil_a(int l);
MetricPencil metric_pencil_c(int l);
std::vector<PolyMatrix> christoffel_c(int l, const TablePtr& table);

// divide by (x - r) exactly in the variable x; throws on a nonzero remainder
Poly divide_linear(const Poly& p, std::size_t x, const Poly& r);

struct AffineSample {
    std::vector<double> xi;
    double c = 0;
    cplx lambda() const;
};

AffineSample random_sample(Kind kind, int l, std::mt19937_64& rng);
std::vector<cplx> eval_generators_numeric(Kind kind, int l, const AffineSample& s);
std::vector<cplx> elementary_numeric(const std::vector<cplx>& x);

// Cauchy-integral derivative of a holomorphic vector function of one complex argument
template <class F>
auto holo_derivative(F&& f, cplx z, double r = 1e-3, int N = 16)
{
    auto acc = f(z);
    for (auto& v : acc)
        v = 0;
    for (int k = 0; k < N; ++k) {
        cplx w = std::polar(1.0, 2 * M_PI * k / N);
        auto val = f(z + r * w);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] += val[i] / w;
    }
    for (auto& v : acc)
        v /= double(N) * r;
    return acc;
}

// metric pushed from the torus: (1/4pi^2) sum dy/dxi b dy/dxi at a sample
std::vector<std::vector<cplx>> numeric_pencil(Kind kind, int l, const AffineSample& s);
std::vector<std::vector<cplx>> eval_matrix(const PolyMatrix& m, const std::vector<cplx>& x);
double max_rel_diff(const std::vector<std::vector<cplx>>& a, const std::vector<std::vector<cplx>>& b);

std::vector<cplx> bd_hat_coordinates(Kind kind, int l, const std::vector<cplx>& y, cplx lambda);

struct NumericReport {
    std::string check;
    char kind = 'A';
    int rank = 0;
    std::optional<int> m;
    int samples = 0;
    std::uint64_t seed = 0;
    double tol = 0;
    double max_rel_err = 0;
    bool pass = false;
    std::vector<std::pair<std::string, double>> extra;
    std::string detail;
    nlohmann::json to_json() const;
};

NumericReport bd_reduction_check(Kind kind, int l, int n_samples, std::uint64_t seed, double tol = 1e-9);

}  // namespace frobkit
