#pragma once

#include <map>
#include <optional>
#include <utility>

#include "decoupling/gauss_model.hpp"
#include "decoupling/linalg.hpp"

namespace decoupling {

enum class Theorem { T1, T2, T3 };

/// Two-sided decoupling constants. For T2/T3 the pair is 1 -+ the relevant
/// extreme singular value / eigenvalue, so lower + upper = 2 and lower may go
/// negative for T3; it is reported unclamped, with clamped_lower the usable
/// floor for squared norms.
struct DecouplingConstants {
    Theorem theorem = Theorem::T3;
    double lower = 1.0;
    double upper = 1.0;
    std::optional<double> sigma0;                       // T3
    std::optional<SymMatrix> sstar;                     // T3
    std::map<std::pair<int, int>, double> pair_singulars;  // T3

    double clamped_lower() const { return lower > 0.0 ? lower : 0.0; }
};

/// One dependent-component vector: extremes of its correlation matrix.
DecouplingConstants theorem1_constants(const SymMatrix& correlation);

/// Two vectors with cross block r: 1 +- (top singular value of r).
DecouplingConstants theorem2_constants(const Matrix& r);

/// Top singular value of the cross block between two distinct vectors.
double pair_max_singular(const BlockGaussianSpec& spec, int a, int b);

/// Hollow symmetric matrix of pairwise top singular values.
SymMatrix build_sstar(const BlockGaussianSpec& spec);

/// N vectors: 1 +- (largest eigenvalue of the pairwise singular-value
/// matrix). The lower constant is not clamped at zero.
DecouplingConstants theorem3_constants(const BlockGaussianSpec& spec);

}  // namespace decoupling
