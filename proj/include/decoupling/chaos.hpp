#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "decoupling/bounds.hpp"
#include "decoupling/gauss_model.hpp"
#include "decoupling/multi_index.hpp"

namespace decoupling {

struct ChaosOptions {
    int max_degree = kDefaultMaxDegree;
    std::size_t max_basis = 512;  // per-degree basis functions across all vectors
};

/// Finite expansion of one function per vector in the orthonormal Wick basis:
/// phi_alpha = sum_k a_{alpha,k} He_k(Y_alpha) / sqrt(k!). Degree-0 terms are
/// rejected, which keeps every phi_alpha mean-zero.
class ChaosExpansion {
public:
    ChaosExpansion() = default;
    explicit ChaosExpansion(std::vector<int> dims);

    int vector_count() const { return static_cast<int>(dims_.size()); }
    int dimension_of(int alpha) const { return dims_.at(static_cast<std::size_t>(alpha)); }

    /// Assign a coefficient; zero removes the term.
    void set(int alpha, const MultiIndex& index, double coefficient);
    /// Accumulate onto an existing coefficient.
    void add(int alpha, const MultiIndex& index, double coefficient);

    const std::map<MultiIndex, double>& terms(int alpha) const {
        return coefficients_.at(static_cast<std::size_t>(alpha));
    }

    /// Degrees that appear in any vector's terms, ascending.
    std::set<int> degrees_present() const;
    int max_degree() const;

private:
    void check_term(int alpha, const MultiIndex& index) const;

    std::vector<int> dims_;
    std::vector<std::map<MultiIndex, double>> coefficients_;
};

/// ||phi_alpha||^2 = sum of squared coefficients (orthonormal basis).
double norm_sq(const ChaosExpansion& expansion, int alpha);

/// sum_alpha ||phi_alpha||^2.
double total_norm_sq(const ChaosExpansion& expansion);

/// Gram matrix of the full degree-n basis across all vectors, in the fixed
/// order (alpha ascending, enumerate_degree order within each alpha).
/// Diagonal blocks are exactly identity; cross blocks are normalized
/// cross-moments.
struct DegreeGram {
    int degree = 0;
    std::vector<std::pair<int, MultiIndex>> basis;
    SymMatrix matrix;
};

DegreeGram degree_gram(const BlockGaussianSpec& spec, int degree,
                       const ChaosOptions& options = {});

/// Exact || sum_alpha phi_alpha ||^2 as a sum of per-degree quadratic forms
/// (cross-degree terms vanish by orthogonality).
double sum_norm_sq_exact(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                         const ChaosOptions& options = {});

/// Extreme eigenvalues of the degree-n Gram: the sharp two-sided constants
/// for expansions supported on degree n alone.
std::pair<double, double> degree_rayleigh_extremes(const BlockGaussianSpec& spec, int degree,
                                                   const ChaosOptions& options = {});

/// One evaluation of the decoupling sandwich.
struct VerifyRecord {
    double sum_norm_sq = 0.0;       // sum_alpha ||phi_alpha||^2
    double combined_norm_sq = 0.0;  // || sum_alpha phi_alpha ||^2, exact
    double c_minus = 1.0;
    double c_plus = 1.0;
    double ratio = 1.0;  // combined / sum (1 when the expansion is empty)
    double margin_lower = 0.0;  // combined - c_minus * sum
    double margin_upper = 0.0;  // c_plus * sum - combined
    bool pass = false;
};

/// Checks c_minus * sum <= combined <= c_plus * sum at relative tolerance
/// tol. A failure here indicts the implementation, not the input.
VerifyRecord verify_inequality(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                               double tol = 1e-9, const ChaosOptions& options = {});

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo counterpart of the exact norms, with 5-standard-error
/// agreement flags against them.
struct McReport {
    std::int64_t samples = 0;
    std::vector<McEstimate> per_vector_norm_sq;
    McEstimate combined_norm_sq;
    std::vector<double> exact_per_vector;
    double exact_combined = 0.0;
    double worst_sigma = 0.0;  // max |estimate - exact| / std_error
    bool consistent = false;
};

McReport mc_verify(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                   std::int64_t samples, std::uint64_t seed,
                   const ChaosOptions& options = {});

/// Random expansion: per vector, `terms` basis indices drawn uniformly from
/// all indices of degree 1..degree_max, with standard normal coefficients
/// (repeated picks accumulate). Deterministic per seed.
ChaosExpansion random_expansion(const BlockGaussianSpec& spec, int degree_max, int terms,
                                std::uint64_t seed);

}  // namespace decoupling
