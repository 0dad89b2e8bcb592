#include "decoupling/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "decoupling/hermite.hpp"
#include "decoupling/moments.hpp"
#include "decoupling/rng.hpp"

namespace decoupling {

ChaosExpansion::ChaosExpansion(std::vector<int> dims) : dims_(std::move(dims)) {
    for (int d : dims_) {
        if (d < 1) {
            throw std::invalid_argument("ChaosExpansion: vector dimensions must be >= 1");
        }
    }
    coefficients_.resize(dims_.size());
}

void ChaosExpansion::check_term(int alpha, const MultiIndex& index) const {
    if (alpha < 0 || alpha >= vector_count()) {
        throw std::invalid_argument("ChaosExpansion: vector index " + std::to_string(alpha) +
                                    " out of range");
    }
    if (index.dimension() != dims_[static_cast<std::size_t>(alpha)]) {
        throw std::invalid_argument("ChaosExpansion: index dimension " +
                                    std::to_string(index.dimension()) +
                                    " does not match vector dimension " +
                                    std::to_string(dims_[static_cast<std::size_t>(alpha)]));
    }
    if (index.degree() == 0) {
        throw std::invalid_argument(
            "ChaosExpansion: degree-0 terms are not allowed (functions must be mean-zero)");
    }
}

void ChaosExpansion::set(int alpha, const MultiIndex& index, double coefficient) {
    check_term(alpha, index);
    auto& terms = coefficients_[static_cast<std::size_t>(alpha)];
    if (coefficient == 0.0) {
        terms.erase(index);
    } else {
        terms[index] = coefficient;
    }
}

void ChaosExpansion::add(int alpha, const MultiIndex& index, double coefficient) {
    check_term(alpha, index);
    auto& terms = coefficients_[static_cast<std::size_t>(alpha)];
    const auto it = terms.find(index);
    const double updated = (it == terms.end() ? 0.0 : it->second) + coefficient;
    if (updated == 0.0) {
        if (it != terms.end()) terms.erase(it);
    } else {
        terms[index] = updated;
    }
}

std::set<int> ChaosExpansion::degrees_present() const {
    std::set<int> degrees;
    for (const auto& terms : coefficients_) {
        for (const auto& [index, coeff] : terms) {
            degrees.insert(index.degree());
        }
    }
    return degrees;
}

int ChaosExpansion::max_degree() const {
    const std::set<int> degrees = degrees_present();
    return degrees.empty() ? 0 : *degrees.rbegin();
}

double norm_sq(const ChaosExpansion& expansion, int alpha) {
    double sum = 0.0;
    for (const auto& [index, coeff] : expansion.terms(alpha)) {
        sum += coeff * coeff;
    }
    return sum;
}

double total_norm_sq(const ChaosExpansion& expansion) {
    double sum = 0.0;
    for (int alpha = 0; alpha < expansion.vector_count(); ++alpha) {
        sum += norm_sq(expansion, alpha);
    }
    return sum;
}

namespace {

void require_valid_spec(const BlockGaussianSpec& spec) {
    const ValidationReport report = validate(spec);
    if (!report.valid) {
        std::string message = "invalid model";
        for (const auto& issue : report.issues) message += "; " + issue;
        throw InvalidModel(message);
    }
}

void require_matching(const BlockGaussianSpec& spec, const ChaosExpansion& expansion) {
    if (expansion.vector_count() != spec.vector_count()) {
        throw std::invalid_argument("expansion has " + std::to_string(expansion.vector_count()) +
                                    " vectors, spec has " + std::to_string(spec.vector_count()));
    }
    for (int alpha = 0; alpha < spec.vector_count(); ++alpha) {
        if (expansion.dimension_of(alpha) != spec.dims[static_cast<std::size_t>(alpha)]) {
            throw std::invalid_argument("expansion vector " + std::to_string(alpha) +
                                        " dimension mismatch with spec");
        }
    }
}

DegreeGram degree_gram_unchecked(const BlockGaussianSpec& spec, int degree,
                                 const ChaosOptions& options) {
    DegreeGram gram;
    gram.degree = degree;
    for (int alpha = 0; alpha < spec.vector_count(); ++alpha) {
        for (MultiIndex& index :
             enumerate_degree(spec.dims[static_cast<std::size_t>(alpha)], degree)) {
            gram.basis.emplace_back(alpha, std::move(index));
        }
    }
    if (gram.basis.size() > options.max_basis) {
        throw std::invalid_argument("degree-" + std::to_string(degree) + " basis has " +
                                    std::to_string(gram.basis.size()) +
                                    " functions, above the configured cap of " +
                                    std::to_string(options.max_basis));
    }

    const std::size_t size = gram.basis.size();
    gram.matrix = SymMatrix(size);
    for (std::size_t i = 0; i < size; ++i) {
        gram.matrix.set(i, i, 1.0);
        const auto& [alpha, k] = gram.basis[i];
        for (std::size_t j = i + 1; j < size; ++j) {
            const auto& [beta, l] = gram.basis[j];
            if (alpha == beta) continue;  // identity diagonal block, zero stays
            const Matrix block = spec.cross_between(alpha, beta);
            const double normalizer = std::sqrt(static_cast<double>(factorial(k)) *
                                                static_cast<double>(factorial(l)));
            gram.matrix.set(i, j, cross_moment_general(k, l, block) / normalizer);
        }
    }
    return gram;
}

}  // namespace

DegreeGram degree_gram(const BlockGaussianSpec& spec, int degree, const ChaosOptions& options) {
    if (degree < 1) {
        throw std::invalid_argument("degree_gram: degree must be >= 1");
    }
    if (degree > options.max_degree) {
        throw std::invalid_argument("degree_gram: degree " + std::to_string(degree) +
                                    " is above the configured cap of " +
                                    std::to_string(options.max_degree));
    }
    require_valid_spec(spec);
    return degree_gram_unchecked(spec, degree, options);
}

double sum_norm_sq_exact(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                         const ChaosOptions& options) {
    require_valid_spec(spec);
    require_matching(spec, expansion);
    if (expansion.max_degree() > options.max_degree) {
        throw std::invalid_argument("expansion degree " + std::to_string(expansion.max_degree()) +
                                    " is above the configured cap of " +
                                    std::to_string(options.max_degree));
    }

    double total = 0.0;
    for (int degree : expansion.degrees_present()) {
        const DegreeGram gram = degree_gram_unchecked(spec, degree, options);
        std::vector<double> a(gram.basis.size(), 0.0);
        for (std::size_t i = 0; i < gram.basis.size(); ++i) {
            const auto& [alpha, index] = gram.basis[i];
            const auto& terms = expansion.terms(alpha);
            const auto it = terms.find(index);
            if (it != terms.end()) a[i] = it->second;
        }
        // a^T G a over this degree block
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) continue;
            total += a[i] * a[i];
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                if (a[j] == 0.0) continue;
                total += 2.0 * a[i] * gram.matrix.at(i, j) * a[j];
            }
        }
    }
    return total;
}

std::pair<double, double> degree_rayleigh_extremes(const BlockGaussianSpec& spec, int degree,
                                                   const ChaosOptions& options) {
    const DegreeGram gram = degree_gram(spec, degree, options);
    const std::vector<double> eigenvalues = sym_eigenvalues(gram.matrix);
    return {eigenvalues.back(), eigenvalues.front()};
}

VerifyRecord verify_inequality(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                               double tol, const ChaosOptions& options) {
    const DecouplingConstants constants = theorem3_constants(spec);

    VerifyRecord record;
    record.c_minus = constants.lower;
    record.c_plus = constants.upper;
    record.sum_norm_sq = total_norm_sq(expansion);
    record.combined_norm_sq = sum_norm_sq_exact(spec, expansion, options);
    record.ratio =
        record.sum_norm_sq > 0.0 ? record.combined_norm_sq / record.sum_norm_sq : 1.0;
    record.margin_lower = record.combined_norm_sq - record.c_minus * record.sum_norm_sq;
    record.margin_upper = record.c_plus * record.sum_norm_sq - record.combined_norm_sq;
    const double scale = std::max({1.0, std::abs(record.combined_norm_sq),
                                   std::abs(record.c_minus) * record.sum_norm_sq,
                                   record.c_plus * record.sum_norm_sq});
    record.pass =
        record.margin_lower >= -tol * scale && record.margin_upper >= -tol * scale;
    return record;
}

McReport mc_verify(const BlockGaussianSpec& spec, const ChaosExpansion& expansion,
                   std::int64_t samples, std::uint64_t seed, const ChaosOptions& options) {
    require_matching(spec, expansion);

    McReport report;
    report.samples = samples;
    report.exact_combined = sum_norm_sq_exact(spec, expansion, options);
    const int n = spec.vector_count();
    for (int alpha = 0; alpha < n; ++alpha) {
        report.exact_per_vector.push_back(norm_sq(expansion, alpha));
    }

    // Precompute per-term normalizers 1/sqrt(k!).
    struct Term {
        const MultiIndex* index;
        double weight;
    };
    std::vector<std::vector<Term>> terms(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) {
        for (const auto& [index, coeff] : expansion.terms(alpha)) {
            terms[static_cast<std::size_t>(alpha)].push_back(
                {&index, coeff / std::sqrt(static_cast<double>(factorial(index)))});
        }
    }

    const JointCovariance joint = assemble(spec);
    const Matrix draws = sample(spec, samples, seed);

    std::vector<double> sum_sq(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sum_quad(static_cast<std::size_t>(n), 0.0);
    double combined_sq = 0.0;
    double combined_quad = 0.0;

    std::vector<double> point;
    for (std::int64_t row = 0; row < samples; ++row) {
        double combined = 0.0;
        for (int alpha = 0; alpha < n; ++alpha) {
            const int d = spec.dims[static_cast<std::size_t>(alpha)];
            point.assign(static_cast<std::size_t>(d), 0.0);
            const int offset = joint.offsets[static_cast<std::size_t>(alpha)];
            for (int i = 0; i < d; ++i) {
                point[static_cast<std::size_t>(i)] =
                    draws(static_cast<std::size_t>(row), static_cast<std::size_t>(offset + i));
            }
            double value = 0.0;
            for (const Term& term : terms[static_cast<std::size_t>(alpha)]) {
                value += term.weight * wick_monomial(point, *term.index);
            }
            const double sq = value * value;
            sum_sq[static_cast<std::size_t>(alpha)] += sq;
            sum_quad[static_cast<std::size_t>(alpha)] += sq * sq;
            combined += value;
        }
        const double sq = combined * combined;
        combined_sq += sq;
        combined_quad += sq * sq;
    }

    const auto estimate = [samples](double sum, double quad) {
        McEstimate e;
        if (samples == 0) return e;
        const double count = static_cast<double>(samples);
        e.value = sum / count;
        const double variance = std::max(quad / count - e.value * e.value, 0.0);
        e.std_error = std::sqrt(variance / count);
        return e;
    };

    double worst = 0.0;
    bool consistent = true;
    const auto check = [&](const McEstimate& est, double exact) {
        const double diff = std::abs(est.value - exact);
        if (est.std_error == 0.0) {
            if (diff > 0.0) {
                consistent = false;
                worst = std::numeric_limits<double>::infinity();
            }
            return;
        }
        worst = std::max(worst, diff / est.std_error);
        if (diff > 5.0 * est.std_error) consistent = false;
    };

    for (int alpha = 0; alpha < n; ++alpha) {
        const McEstimate est = estimate(sum_sq[static_cast<std::size_t>(alpha)],
                                        sum_quad[static_cast<std::size_t>(alpha)]);
        report.per_vector_norm_sq.push_back(est);
        if (samples > 0) check(est, report.exact_per_vector[static_cast<std::size_t>(alpha)]);
    }
    report.combined_norm_sq = estimate(combined_sq, combined_quad);
    if (samples > 0) check(report.combined_norm_sq, report.exact_combined);

    report.worst_sigma = worst;
    report.consistent = samples > 0 ? consistent : true;
    return report;
}

ChaosExpansion random_expansion(const BlockGaussianSpec& spec, int degree_max, int terms,
                                std::uint64_t seed) {
    if (degree_max < 1) {
        throw std::invalid_argument("random_expansion: degree_max must be >= 1");
    }
    if (terms < 1) {
        throw std::invalid_argument("random_expansion: terms must be >= 1");
    }

    ChaosExpansion expansion(spec.dims);
    Rng rng(seed);
    for (int alpha = 0; alpha < spec.vector_count(); ++alpha) {
        std::vector<MultiIndex> pool;
        for (int degree = 1; degree <= degree_max; ++degree) {
            for (MultiIndex& index :
                 enumerate_degree(spec.dims[static_cast<std::size_t>(alpha)], degree)) {
                pool.push_back(std::move(index));
            }
        }
        for (int t = 0; t < terms; ++t) {
            const std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
            expansion.add(alpha, pool[pick], rng.normal());
        }
    }
    return expansion;
}

}  // namespace decoupling
