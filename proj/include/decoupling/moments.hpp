#pragma once

#include <span>
#include <vector>

#include "decoupling/linalg.hpp"
#include "decoupling/multi_index.hpp"

namespace decoupling {

/// Nonnegative integer matrix, row-major; used for contingency tables.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> data;

    int at(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
    bool operator==(const IntMatrix&) const = default;
};

/// All nonnegative integer matrices with the given row and column sums,
/// enumerated depth-first row by row with descending leading entries.
/// Requires degree(rows) == degree(cols).
std::vector<IntMatrix> enumerate_contingency(const MultiIndex& rows, const MultiIndex& cols);

/// E[:Z1^k: :Z2^l:] for jointly standard vectors whose cross-covariance is
/// diagonal with entries s (length = min dimension): zero unless the indices
/// agree after zero-padding, otherwise m! * s^m with m the shorter index.
double cross_moment_diagonal(const MultiIndex& k, const MultiIndex& l,
                             std::span<const double> s);

/// E[:Y^k: :Z^l:] for jointly standard vectors with identity within-vector
/// correlation and cross-correlation matrix r (shape dim(k) x dim(l)):
/// sum over contingency matrices M with margins (k, l) of
/// k! l! prod_ij r_ij^M_ij / M_ij!. Zero whenever the total degrees differ.
double cross_moment_general(const MultiIndex& k, const MultiIndex& l, const Matrix& r);

}  // namespace decoupling
