#include "decoupling/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace decoupling {

namespace {

void check_entries(std::span<const int> entries) {
    for (int e : entries) {
        if (e < 0) {
            throw std::invalid_argument("MultiIndex entries must be nonnegative");
        }
    }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    check_entries(entries_);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries) {
    check_entries(entries_);
}

MultiIndex MultiIndex::zeros(int dimension) {
    if (dimension < 0) {
        throw std::invalid_argument("MultiIndex dimension must be nonnegative");
    }
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

int MultiIndex::degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

std::uint64_t factorial(const MultiIndex& index) {
    // 20! is the largest factorial representable in 64 bits.
    static constexpr int kMaxEntry = 20;
    std::uint64_t result = 1;
    for (int e : index.entries()) {
        if (e > kMaxEntry) {
            throw std::domain_error("multi-index factorial exceeds 64-bit range");
        }
        for (int i = 2; i <= e; ++i) {
            result *= static_cast<std::uint64_t>(i);
        }
    }
    return result;
}

double power(std::span<const double> base, const MultiIndex& index) {
    if (static_cast<int>(base.size()) != index.dimension()) {
        throw std::invalid_argument("power: base length must match index dimension");
    }
    double result = 1.0;
    for (int i = 0; i < index.dimension(); ++i) {
        for (int p = 0; p < index[i]; ++p) {
            result *= base[static_cast<std::size_t>(i)];
        }
    }
    return result;
}

bool padded_equal(const MultiIndex& a, const MultiIndex& b) {
    const MultiIndex& shorter = a.dimension() <= b.dimension() ? a : b;
    const MultiIndex& longer = a.dimension() <= b.dimension() ? b : a;
    for (int i = 0; i < shorter.dimension(); ++i) {
        if (shorter[i] != longer[i]) return false;
    }
    for (int i = shorter.dimension(); i < longer.dimension(); ++i) {
        if (longer[i] != 0) return false;
    }
    return true;
}

namespace {

void enumerate_rec(int dimension, int remaining, std::vector<int>& prefix,
                   std::vector<MultiIndex>& out) {
    if (dimension == 1) {
        prefix.push_back(remaining);
        out.push_back(MultiIndex(prefix));
        prefix.pop_back();
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_rec(dimension - 1, remaining - k, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_degree(int dimension, int degree) {
    if (dimension < 1) {
        throw std::domain_error("enumerate_degree: dimension must be >= 1");
    }
    if (degree < 0) {
        throw std::domain_error("enumerate_degree: degree must be >= 0");
    }
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(dimension));
    enumerate_rec(dimension, degree, prefix, out);
    return out;
}

}  // namespace decoupling
