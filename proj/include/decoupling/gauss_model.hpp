#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decoupling/linalg.hpp"

namespace decoupling {

/// Thrown when a model is structurally sound but statistically invalid
/// (non-PSD joint matrix, correlation out of range, ...).
class InvalidModel : public std::runtime_error {
public:
    explicit InvalidModel(const std::string& what) : std::runtime_error(what) {}
};

/// N standard normal vectors of dimensions dims[alpha], coupled by the
/// cross-correlation blocks cross[{a, b}] (d_a x d_b, 0-based pairs a < b).
/// Missing pairs mean zero correlation. Within each vector the components
/// are independent; the joint matrix therefore has identity diagonal blocks.
struct BlockGaussianSpec {
    std::vector<int> dims;
    std::map<std::pair<int, int>, Matrix> cross;

    int vector_count() const { return static_cast<int>(dims.size()); }
    int total_dimension() const;

    /// Cross block between any two distinct vectors, transposing or zero-
    /// filling as needed; always shaped d_a x d_b.
    Matrix cross_between(int a, int b) const;
};

/// Assembled joint correlation matrix with per-vector start offsets.
struct JointCovariance {
    std::vector<int> offsets;
    SymMatrix matrix;

    int order() const { return static_cast<int>(matrix.order()); }
};

JointCovariance assemble(const BlockGaussianSpec& spec);

/// Diagnostics from validate(); never thrown.
struct ValidationReport {
    bool valid = false;
    double min_eigenvalue = 0.0;
    double max_abs_entry = 0.0;
    double symmetry_residual = 0.0;
    std::map<std::pair<int, int>, double> pair_max_singular;
    std::vector<std::string> issues;
};

ValidationReport validate(const BlockGaussianSpec& spec);

/// count independent draws of the concatenated vector, one per row.
/// Reproducible: the draw stream is chunked (1024 rows per chunk) and chunk c
/// uses Rng(seed + c), so a fixed (spec, seed) prefix never changes and
/// chunks can be produced by independent workers.
Matrix sample(const BlockGaussianSpec& spec, std::int64_t count, std::uint64_t seed);

/// Random valid spec: cross entries drawn uniformly from [-1, 1), then all
/// blocks scaled by the largest t in [0, 1] (bisection, 40 iterations) that
/// keeps the joint matrix PSD with margin 1e-6.
BlockGaussianSpec random_spec(std::span<const int> dims, std::uint64_t seed);

}  // namespace decoupling
