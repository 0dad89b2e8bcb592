#include "decoupling/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "decoupling/linalg.hpp"

namespace decoupling {

double wick_power(int k, double x) {
    if (k < 0) {
        throw std::invalid_argument("wick_power: degree must be nonnegative");
    }
    if (k == 0) return 1.0;
    double prev = 1.0;  // He_0
    double cur = x;     // He_1
    for (int j = 1; j < k; ++j) {
        const double next = x * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double wick_monomial(std::span<const double> x, const MultiIndex& k) {
    if (static_cast<int>(x.size()) != k.dimension()) {
        throw std::invalid_argument("wick_monomial: point length must match index dimension");
    }
    double product = 1.0;
    for (int i = 0; i < k.dimension(); ++i) {
        product *= wick_power(k[i], x[static_cast<std::size_t>(i)]);
    }
    return product;
}

QuadratureRule gauss_hermite(int m) {
    if (m < 1 || m > 64) {
        throw std::invalid_argument("gauss_hermite: node count must be in [1, 64]");
    }
    const std::size_t n = static_cast<std::size_t>(m);

    // Jacobi matrix of the He recurrence: zero diagonal, off-diagonal sqrt(k).
    SymMatrix jacobi(n);
    for (std::size_t k = 1; k < n; ++k) {
        jacobi.set(k - 1, k, std::sqrt(static_cast<double>(k)));
    }

    const EigenSystem es = sym_eigen(jacobi);

    // Golub-Welsch: nodes are the eigenvalues, weights the squared first
    // eigenvector components (total mass 1 for the normal density).
    std::vector<std::pair<double, double>> points(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = es.vectors(0, j) * es.vectors(0, j);
        points[j] = {es.values[j], w};
    }
    std::sort(points.begin(), points.end());

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = points[i].first;
        rule.weights[i] = points[i].second;
    }

    // Enforce exact symmetry about zero; the spectrum is symmetric in exact
    // arithmetic and pairing removes the rounding skew.
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -node;
        rule.nodes[j] = node;
        const double weight = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = weight;
        rule.weights[j] = weight;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }

    double total = 0.0;
    for (double w : rule.weights) total += w;
    for (double& w : rule.weights) w /= total;

    return rule;
}

}  // namespace decoupling
