#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace decoupling {

/// Vector of nonnegative integer exponents indexing a Wick monomial.
///
/// Equality (operator==) is strict elementwise comparison; use padded_equal()
/// for the convention under which trailing zeros do not matter.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    static MultiIndex zeros(int dimension);

    int dimension() const { return static_cast<int>(entries_.size()); }
    int degree() const;
    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    std::span<const int> entries() const { return entries_; }

    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> entries_;
};

/// Product of entry factorials, exact in 64 bits (requires every entry <= 20).
std::uint64_t factorial(const MultiIndex& index);

/// Componentwise power product base^index with the convention 0^0 = 1.
double power(std::span<const double> base, const MultiIndex& index);

/// True iff the two indices agree after zero-padding the shorter one.
bool padded_equal(const MultiIndex& a, const MultiIndex& b);

/// All indices of the given dimension and total degree, in lexicographic
/// descending order, e.g. (d=2, n=3) -> (3,0),(2,1),(1,2),(0,3).
std::vector<MultiIndex> enumerate_degree(int dimension, int degree);

/// Default cap on total degree used by the chaos layer; keeps every factorial
/// prefactor exactly representable and basis sizes at desk scale.
inline constexpr int kDefaultMaxDegree = 8;

}  // namespace decoupling
