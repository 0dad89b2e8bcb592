#include "decoupling/gauss_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "decoupling/rng.hpp"

namespace decoupling {

namespace {

constexpr double kPsdTolerance = 1e-9;
constexpr std::int64_t kSampleChunk = 1024;

void check_structure(const BlockGaussianSpec& spec) {
    if (spec.dims.empty()) {
        throw std::invalid_argument("spec must declare at least one vector");
    }
    for (std::size_t a = 0; a < spec.dims.size(); ++a) {
        if (spec.dims[a] < 1) {
            throw std::invalid_argument("dims[" + std::to_string(a) + "] must be >= 1");
        }
    }
    for (const auto& [key, block] : spec.cross) {
        const auto [a, b] = key;
        if (a < 0 || b <= a || b >= spec.vector_count()) {
            throw std::invalid_argument("cross pair (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") is out of order or range");
        }
        if (block.rows() != static_cast<std::size_t>(spec.dims[a]) ||
            block.cols() != static_cast<std::size_t>(spec.dims[b])) {
            throw std::invalid_argument("cross block (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") has shape " +
                                        std::to_string(block.rows()) + "x" +
                                        std::to_string(block.cols()) + ", expected " +
                                        std::to_string(spec.dims[a]) + "x" +
                                        std::to_string(spec.dims[b]));
        }
    }
}

}  // namespace

int BlockGaussianSpec::total_dimension() const {
    return std::accumulate(dims.begin(), dims.end(), 0);
}

Matrix BlockGaussianSpec::cross_between(int a, int b) const {
    if (a == b) {
        throw std::invalid_argument("cross_between: vectors must be distinct");
    }
    if (a < 0 || b < 0 || a >= vector_count() || b >= vector_count()) {
        throw std::invalid_argument("cross_between: vector index out of range");
    }
    const bool flipped = a > b;
    const auto it = cross.find(flipped ? std::make_pair(b, a) : std::make_pair(a, b));
    if (it == cross.end()) {
        return Matrix(static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]),
                      static_cast<std::size_t>(dims[static_cast<std::size_t>(b)]));
    }
    return flipped ? it->second.transposed() : it->second;
}

JointCovariance assemble(const BlockGaussianSpec& spec) {
    check_structure(spec);

    JointCovariance joint;
    joint.offsets.resize(spec.dims.size());
    int offset = 0;
    for (std::size_t a = 0; a < spec.dims.size(); ++a) {
        joint.offsets[a] = offset;
        offset += spec.dims[a];
    }

    joint.matrix = SymMatrix(static_cast<std::size_t>(offset));
    for (int i = 0; i < offset; ++i) {
        joint.matrix.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), 1.0);
    }
    for (const auto& [key, block] : spec.cross) {
        const auto [a, b] = key;
        const std::size_t row0 = static_cast<std::size_t>(joint.offsets[a]);
        const std::size_t col0 = static_cast<std::size_t>(joint.offsets[b]);
        for (std::size_t i = 0; i < block.rows(); ++i) {
            for (std::size_t j = 0; j < block.cols(); ++j) {
                joint.matrix.set(row0 + i, col0 + j, block(i, j));
            }
        }
    }
    return joint;
}

ValidationReport validate(const BlockGaussianSpec& spec) {
    ValidationReport report;

    try {
        check_structure(spec);
    } catch (const std::invalid_argument& err) {
        report.issues.push_back(err.what());
        return report;
    }

    const JointCovariance joint = assemble(spec);
    report.symmetry_residual = 0.0;  // mirrored by construction

    for (int i = 0; i < joint.order(); ++i) {
        for (int j = 0; j < joint.order(); ++j) {
            report.max_abs_entry = std::max(
                report.max_abs_entry,
                std::abs(joint.matrix.at(static_cast<std::size_t>(i),
                                         static_cast<std::size_t>(j))));
        }
    }

    const int n = spec.vector_count();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const std::vector<double> sv = singular_values(spec.cross_between(a, b));
            report.pair_max_singular[{a, b}] = sv.empty() ? 0.0 : sv.front();
        }
    }

    const std::vector<double> eigenvalues = sym_eigenvalues(joint.matrix);
    report.min_eigenvalue = eigenvalues.back();

    if (report.max_abs_entry > 1.0 + 1e-12) {
        report.issues.push_back("correlation entry exceeds 1 in magnitude: " +
                                std::to_string(report.max_abs_entry));
    }
    if (report.min_eigenvalue < -kPsdTolerance) {
        report.issues.push_back("joint matrix is not PSD: min eigenvalue " +
                                std::to_string(report.min_eigenvalue));
    }
    report.valid = report.issues.empty();
    return report;
}

Matrix sample(const BlockGaussianSpec& spec, std::int64_t count, std::uint64_t seed) {
    check_structure(spec);
    if (count < 0) {
        throw std::invalid_argument("sample: count must be nonnegative");
    }

    const JointCovariance joint = assemble(spec);
    const Matrix factor = cholesky_psd(joint.matrix, kPsdTolerance);
    const std::size_t dim = static_cast<std::size_t>(joint.order());

    Matrix draws(static_cast<std::size_t>(count), dim);
    std::vector<double> z(dim);
    for (std::int64_t chunk = 0; chunk * kSampleChunk < count; ++chunk) {
        Rng rng(seed + static_cast<std::uint64_t>(chunk));
        const std::int64_t lo = chunk * kSampleChunk;
        const std::int64_t hi = std::min(count, lo + kSampleChunk);
        for (std::int64_t row = lo; row < hi; ++row) {
            for (std::size_t i = 0; i < dim; ++i) z[i] = rng.normal();
            for (std::size_t i = 0; i < dim; ++i) {
                double sum = 0.0;
                for (std::size_t k = 0; k <= i; ++k) {
                    sum += factor(i, k) * z[k];
                }
                draws(static_cast<std::size_t>(row), i) = sum;
            }
        }
    }
    return draws;
}

BlockGaussianSpec random_spec(std::span<const int> dims, std::uint64_t seed) {
    if (dims.empty()) {
        throw std::invalid_argument("random_spec: dims must be nonempty");
    }
    BlockGaussianSpec spec;
    spec.dims.assign(dims.begin(), dims.end());
    check_structure(spec);

    const int n = spec.vector_count();
    if (n == 1) return spec;

    Rng rng(seed);
    BlockGaussianSpec raw = spec;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            Matrix block(static_cast<std::size_t>(spec.dims[static_cast<std::size_t>(a)]),
                         static_cast<std::size_t>(spec.dims[static_cast<std::size_t>(b)]));
            for (std::size_t i = 0; i < block.rows(); ++i) {
                for (std::size_t j = 0; j < block.cols(); ++j) {
                    block(i, j) = rng.uniform_symmetric();
                }
            }
            raw.cross[{a, b}] = std::move(block);
        }
    }

    const auto scaled = [&](double t) {
        BlockGaussianSpec s = spec;
        for (const auto& [key, block] : raw.cross) {
            Matrix scaled_block = block;
            for (std::size_t i = 0; i < block.rows(); ++i) {
                for (std::size_t j = 0; j < block.cols(); ++j) {
                    scaled_block(i, j) = t * block(i, j);
                }
            }
            s.cross[key] = std::move(scaled_block);
        }
        return s;
    };
    const auto psd_with_margin = [&](double t) {
        return sym_eigenvalues(assemble(scaled(t)).matrix).back() >= 1e-6;
    };

    double best = 0.0;
    if (psd_with_margin(1.0)) {
        best = 1.0;
    } else {
        double lo = 0.0;
        double hi = 1.0;
        for (int iter = 0; iter < 40; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (psd_with_margin(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        best = lo;
    }
    return scaled(best);
}

}  // namespace decoupling
