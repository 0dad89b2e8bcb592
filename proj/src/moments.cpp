#include "decoupling/moments.hpp"

#include <functional>
#include <stdexcept>

namespace decoupling {

namespace {

// Depth-first walk over all nonnegative integer matrices with the given
// margins, reducing one row at a time. The per-row compositions are emitted
// with descending leading entries, matching enumerate_degree's order.
// Capacity pruning: an entry never exceeds what its column still admits.
void walk_contingency(const MultiIndex& rows, const MultiIndex& cols,
                      const std::function<void(const std::vector<int>&)>& visit) {
    const int r = rows.dimension();
    const int c = cols.dimension();
    std::vector<int> table(static_cast<std::size_t>(r * c), 0);
    std::vector<int> remaining(cols.entries().begin(), cols.entries().end());

    std::function<void(int, int, int)> fill_cell = [&](int row, int col, int left) {
        if (col == c - 1) {
            if (left > remaining[static_cast<std::size_t>(col)]) return;
            table[static_cast<std::size_t>(row * c + col)] = left;
            remaining[static_cast<std::size_t>(col)] -= left;
            if (row == r - 1) {
                bool exhausted = true;
                for (int j = 0; j < c; ++j) {
                    if (remaining[static_cast<std::size_t>(j)] != 0) exhausted = false;
                }
                if (exhausted) visit(table);
            } else {
                fill_cell(row + 1, 0, rows[row + 1]);
            }
            remaining[static_cast<std::size_t>(col)] += left;
            table[static_cast<std::size_t>(row * c + col)] = 0;
            return;
        }
        const int cap = std::min(left, remaining[static_cast<std::size_t>(col)]);
        for (int v = cap; v >= 0; --v) {
            table[static_cast<std::size_t>(row * c + col)] = v;
            remaining[static_cast<std::size_t>(col)] -= v;
            fill_cell(row, col + 1, left - v);
            remaining[static_cast<std::size_t>(col)] += v;
            table[static_cast<std::size_t>(row * c + col)] = 0;
        }
    };

    if (r == 0 || c == 0) {
        if (rows.degree() == 0 && cols.degree() == 0) visit(table);
        return;
    }
    fill_cell(0, 0, rows[0]);
}

}  // namespace

std::vector<IntMatrix> enumerate_contingency(const MultiIndex& rows, const MultiIndex& cols) {
    if (rows.degree() != cols.degree()) {
        throw std::invalid_argument("enumerate_contingency: margins must have equal totals");
    }
    std::vector<IntMatrix> out;
    walk_contingency(rows, cols, [&](const std::vector<int>& table) {
        out.push_back(IntMatrix{rows.dimension(), cols.dimension(), table});
    });
    return out;
}

double cross_moment_diagonal(const MultiIndex& k, const MultiIndex& l,
                             std::span<const double> s) {
    const int min_dim = std::min(k.dimension(), l.dimension());
    if (static_cast<int>(s.size()) != min_dim) {
        throw std::invalid_argument(
            "cross_moment_diagonal: need one singular value per shared coordinate");
    }
    if (!padded_equal(k, l)) return 0.0;
    const MultiIndex& shorter = k.dimension() <= l.dimension() ? k : l;
    return static_cast<double>(factorial(shorter)) * power(s, shorter);
}

double cross_moment_general(const MultiIndex& k, const MultiIndex& l, const Matrix& r) {
    if (r.rows() != static_cast<std::size_t>(k.dimension()) ||
        r.cols() != static_cast<std::size_t>(l.dimension())) {
        throw std::invalid_argument("cross_moment_general: block shape must be dim(k) x dim(l)");
    }
    if (k.degree() != l.degree()) return 0.0;  // chaos degrees are orthogonal
    if (k.degree() == 0) return 1.0;

    const double prefactor =
        static_cast<double>(factorial(k)) * static_cast<double>(factorial(l));
    const int cols = l.dimension();

    double sum = 0.0;
    walk_contingency(k, l, [&](const std::vector<int>& table) {
        double term = 1.0;
        for (std::size_t cell = 0; cell < table.size(); ++cell) {
            const int m = table[cell];
            if (m == 0) continue;
            const double rho = r(cell / static_cast<std::size_t>(cols),
                                 cell % static_cast<std::size_t>(cols));
            double factorial_m = 1.0;
            for (int i = 2; i <= m; ++i) factorial_m *= i;
            double rho_pow = 1.0;
            for (int i = 0; i < m; ++i) rho_pow *= rho;
            term *= rho_pow / factorial_m;
        }
        sum += term;
    });
    return prefactor * sum;
}

}  // namespace decoupling
