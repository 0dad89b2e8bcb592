#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace decoupling {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;
    std::span<const double> data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// Symmetric matrix stored in full. set() writes both mirrored entries;
/// from_matrix() rejects inputs with |a_ij - a_ji| > 1e-12 * max(1, |a_ij|).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order, double fill = 0.0)
        : order_(order), data_(order * order, fill) {}

    static SymMatrix identity(std::size_t n);
    static SymMatrix from_matrix(const Matrix& m);

    std::size_t order() const { return order_; }
    double at(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
    void set(std::size_t i, std::size_t j, double value) {
        data_[i * order_ + j] = value;
        data_[j * order_ + i] = value;
    }

    Matrix to_matrix() const;

    bool operator==(const SymMatrix&) const = default;

private:
    std::size_t order_ = 0;
    std::vector<double> data_;
};

/// Thrown by cholesky_psd when a pivot falls below -tol.
class NotPositiveSemidefinite : public std::runtime_error {
public:
    NotPositiveSemidefinite(std::size_t pivot_index, double pivot_value);

    std::size_t pivot_index;
    double pivot_value;
};

/// Eigenvalues (descending) and matching eigenvector columns.
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;
};

/// Full spectral decomposition by cyclic Jacobi rotations. Deterministic
/// rotation order; converges when the off-diagonal Frobenius norm drops below
/// 1e-13 * ||A||_F, capped at 30 sweeps. Throws on asymmetric input.
EigenSystem sym_eigen(const SymMatrix& a);

/// All eigenvalues, descending.
std::vector<double> sym_eigenvalues(const SymMatrix& a);

double max_eigenvalue(const SymMatrix& a);

/// Singular values, descending and nonnegative, via the eigenvalues of the
/// smaller of M^T M and M M^T (negatives clamped to zero before the root).
std::vector<double> singular_values(const Matrix& m);

/// Lower-triangular L with L L^T ~= A. Pivots below -tol raise
/// NotPositiveSemidefinite; pivots in [-tol, 0] are clamped to zero.
Matrix cholesky_psd(const SymMatrix& a, double tol = 1e-12);

namespace detail {

/// Full SVD M = U diag(sigma) V^T assembled through the Gram eigen route.
/// Used by consistency checks that need the rotation factors, not part of the
/// public surface.
struct SvdFactors {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};

SvdFactors svd_factors(const Matrix& m);

}  // namespace detail

}  // namespace decoupling
