#pragma once

#include <span>
#include <vector>

#include "decoupling/multi_index.hpp"

namespace decoupling {

/// Probabilists' Hermite value He_k(x) by the three-term recurrence
/// He_{k+1}(x) = x He_k(x) - k He_{k-1}(x), He_0 = 1, He_1 = x.
double wick_power(int k, double x);

/// Product of per-coordinate Wick powers, prod_i He_{k_i}(x_i).
double wick_monomial(std::span<const double> x, const MultiIndex& k);

/// Quadrature rule for expectations under the standard normal law:
/// E f(X) ~= sum_i weights[i] * f(nodes[i]). Nodes are strictly increasing
/// and symmetric about zero; weights are positive and sum to one.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const auto& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(nodes[i]);
        }
        return sum;
    }
};

/// Gauss-Hermite rule with m nodes (1 <= m <= 64), exact for polynomials of
/// degree <= 2m-1 under the standard normal weight. Built by the
/// Golub-Welsch construction on the Jacobi tridiagonal matrix of the
/// recurrence.
QuadratureRule gauss_hermite(int m);

}  // namespace decoupling
