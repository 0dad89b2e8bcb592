#include "decoupling/bounds.hpp"

#include <cmath>
#include <string>

namespace decoupling {

namespace {

constexpr double kPsdTolerance = 1e-9;

void require_valid(const BlockGaussianSpec& spec) {
    const ValidationReport report = validate(spec);
    if (!report.valid) {
        std::string message = "invalid model";
        for (const auto& issue : report.issues) {
            message += "; " + issue;
        }
        throw InvalidModel(message);
    }
}

}  // namespace

DecouplingConstants theorem1_constants(const SymMatrix& correlation) {
    const std::size_t d = correlation.order();
    if (d == 0) {
        throw std::invalid_argument("theorem1_constants: empty matrix");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (std::abs(correlation.at(i, i) - 1.0) > 1e-12) {
            throw InvalidModel("correlation matrix must have unit diagonal, entry " +
                               std::to_string(i) + " is " +
                               std::to_string(correlation.at(i, i)));
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (std::abs(correlation.at(i, j)) > 1.0 + 1e-12) {
                throw InvalidModel("correlation entry (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") exceeds 1 in magnitude");
            }
        }
    }

    const std::vector<double> eigenvalues = sym_eigenvalues(correlation);
    if (eigenvalues.back() < -kPsdTolerance) {
        throw InvalidModel("correlation matrix is not PSD: min eigenvalue " +
                           std::to_string(eigenvalues.back()));
    }

    DecouplingConstants constants;
    constants.theorem = Theorem::T1;
    // A PSD spectrum is nonnegative; floor rounding noise on the boundary.
    constants.lower = std::max(eigenvalues.back(), 0.0);
    constants.upper = eigenvalues.front();
    return constants;
}

DecouplingConstants theorem2_constants(const Matrix& r) {
    if (r.rows() == 0 || r.cols() == 0) {
        throw std::invalid_argument("theorem2_constants: empty cross block");
    }

    // The two vectors with this cross block form a valid joint law only if
    // [[I, R], [R^T, I]] is PSD.
    BlockGaussianSpec pair;
    pair.dims = {static_cast<int>(r.rows()), static_cast<int>(r.cols())};
    pair.cross[{0, 1}] = r;
    require_valid(pair);

    const double top = singular_values(r).front();
    DecouplingConstants constants;
    constants.theorem = Theorem::T2;
    constants.lower = 1.0 - top;
    constants.upper = 1.0 + top;
    constants.sigma0 = top;
    return constants;
}

double pair_max_singular(const BlockGaussianSpec& spec, int a, int b) {
    if (a == b) {
        throw std::invalid_argument("pair_max_singular: vectors must be distinct");
    }
    const std::vector<double> sv = singular_values(spec.cross_between(a, b));
    return sv.empty() ? 0.0 : sv.front();
}

SymMatrix build_sstar(const BlockGaussianSpec& spec) {
    require_valid(spec);
    const int n = spec.vector_count();
    SymMatrix sstar(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            sstar.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                      pair_max_singular(spec, a, b));
        }
    }
    return sstar;
}

DecouplingConstants theorem3_constants(const BlockGaussianSpec& spec) {
    const SymMatrix sstar = build_sstar(spec);
    const double sigma0 = max_eigenvalue(sstar);

    DecouplingConstants constants;
    constants.theorem = Theorem::T3;
    constants.lower = 1.0 - sigma0;  // unclamped, may be negative
    constants.upper = 1.0 + sigma0;
    constants.sigma0 = sigma0;
    constants.sstar = sstar;
    const int n = spec.vector_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            constants.pair_singulars[{a, b}] =
                sstar.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
    }
    return constants;
}

}  // namespace decoupling
