#include "decoupling/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace decoupling {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimensions differ");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("SymMatrix: input must be square");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double residual = std::abs(m(i, j) - m(j, i));
            if (residual > 1e-12 * std::max(1.0, std::abs(m(i, j)))) {
                throw std::invalid_argument("SymMatrix: input is not symmetric");
            }
        }
    }
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s.set(i, i, m(i, i));
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
        }
    }
    return s;
}

Matrix SymMatrix::to_matrix() const {
    Matrix m(order_, order_);
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = 0; j < order_; ++j) {
            m(i, j) = at(i, j);
        }
    }
    return m;
}

NotPositiveSemidefinite::NotPositiveSemidefinite(std::size_t index, double value)
    : std::runtime_error("matrix is not positive semidefinite: pivot " +
                         std::to_string(index) + " = " + std::to_string(value)),
      pivot_index(index),
      pivot_value(value) {}

namespace {

double frobenius(const SymMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) {
            sum += a.at(i, j) * a.at(i, j);
        }
    }
    return std::sqrt(sum);
}

}  // namespace

EigenSystem sym_eigen(const SymMatrix& input) {
    const std::size_t n = input.order();
    Matrix a = input.to_matrix();
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-13 * frobenius(input);
    constexpr int kMaxSweeps = 30;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += 2.0 * a(i, j) * a(i, j);
            }
        }
        if (std::sqrt(off) <= threshold) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;

                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(p, i) = a(i, p);
                    a(i, q) = s * aip + c * aiq;
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x) > a(y, y);
    });

    EigenSystem result;
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) {
            result.vectors(i, j) = v(i, order[j]);
        }
    }
    return result;
}

std::vector<double> sym_eigenvalues(const SymMatrix& a) {
    return sym_eigen(a).values;
}

double max_eigenvalue(const SymMatrix& a) {
    if (a.order() == 0) {
        throw std::invalid_argument("max_eigenvalue: empty matrix");
    }
    return sym_eigenvalues(a).front();
}

std::vector<double> singular_values(const Matrix& m) {
    const std::size_t k = std::min(m.rows(), m.cols());
    if (k == 0) return {};

    // Gram matrix on the smaller side.
    const Matrix g = (m.rows() <= m.cols()) ? m * m.transposed() : m.transposed() * m;
    SymMatrix gram(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        gram.set(i, i, g(i, i));
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            gram.set(i, j, 0.5 * (g(i, j) + g(j, i)));
        }
    }
    std::vector<double> values = sym_eigenvalues(gram);
    for (double& v : values) {
        v = std::sqrt(std::max(v, 0.0));
    }
    return values;
}

Matrix cholesky_psd(const SymMatrix& a, double tol) {
    const std::size_t n = a.order();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            pivot -= l(j, k) * l(j, k);
        }
        if (pivot < -tol) {
            throw NotPositiveSemidefinite(j, pivot);
        }
        if (pivot <= 0.0) {
            continue;  // clamped pivot, column stays zero
        }
        l(j, j) = std::sqrt(pivot);
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= l(i, k) * l(j, k);
            }
            l(i, j) = sum / l(j, j);
        }
    }
    return l;
}

namespace detail {

namespace {

// Fill unset columns (marked by zero norm) with an orthonormal completion
// drawn from the standard basis.
void complete_orthonormal(Matrix& u, std::size_t filled) {
    const std::size_t n = u.rows();
    std::size_t next = filled;
    for (std::size_t cand = 0; cand < n && next < n; ++cand) {
        std::vector<double> w(n, 0.0);
        w[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < next; ++j) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += w[i] * u(i, j);
                for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u(i, j);
            }
        }
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-6) continue;
        for (std::size_t i = 0; i < n; ++i) u(i, next) = w[i] / norm;
        ++next;
    }
}

}  // namespace

SvdFactors svd_factors(const Matrix& m) {
    if (m.rows() < m.cols()) {
        SvdFactors swapped = svd_factors(m.transposed());
        return SvdFactors{std::move(swapped.v), std::move(swapped.sigma),
                          std::move(swapped.u)};
    }

    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    const Matrix gram_full = m.transposed() * m;
    SymMatrix gram(c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i; j < c; ++j) {
            gram.set(i, j, 0.5 * (gram_full(i, j) + gram_full(j, i)));
        }
    }

    const EigenSystem es = sym_eigen(gram);
    SvdFactors out;
    out.v = es.vectors;
    out.sigma.resize(c);
    for (std::size_t j = 0; j < c; ++j) {
        out.sigma[j] = std::sqrt(std::max(es.values[j], 0.0));
    }

    out.u = Matrix(r, r);
    const double sigma_max = out.sigma.empty() ? 0.0 : out.sigma.front();
    const double rank_tol = 1e-12 * std::max(1.0, sigma_max);
    std::size_t filled = 0;
    for (std::size_t j = 0; j < c; ++j) {
        if (out.sigma[j] <= rank_tol) break;
        for (std::size_t i = 0; i < r; ++i) {
            double dot = 0.0;
            for (std::size_t k = 0; k < c; ++k) dot += m(i, k) * out.v(k, j);
            out.u(i, filled) = dot / out.sigma[j];
        }
        ++filled;
    }
    complete_orthonormal(out.u, filled);
    return out;
}

}  // namespace detail

}  // namespace decoupling
