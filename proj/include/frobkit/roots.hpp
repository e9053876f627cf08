#pragma once

#include <optional>

#include "frobkit/matrix.hpp"

namespace frobkit {

enum class Kind { A, B, C, D };

char kind_char(Kind k);
Kind parse_kind(std::string_view s);

struct RootSystemData {
    Kind kind;
    int rank;
    std::vector<QVector> simple_roots;  // ambient e-basis
    std::vector<QVector> coroots;
    std::vector<QVector> fundamental_weights;
    QVector omega;
    int omega_index;  // 1-based
    QMatrix coroot_gram;  // (alpha_i^v, alpha_j^v)
    QMatrix dual_metric;  // inverse of coroot_gram
    QVector theta;
    Rational kappa;
    QVector multiplicities;

    nlohmann::json to_json() const;
};

Rational dot(const QVector& a, const QVector& b);
QMatrix invert(const QMatrix& m);

int min_rank(Kind k);
RootSystemData build_root_system(Kind kind, int rank);

// flat-coordinate degrees; m is required for C and ignored for A
std::vector<Rational> degree_vector(const RootSystemData& rs, std::optional<int> m = std::nullopt);

}  // namespace frobkit
