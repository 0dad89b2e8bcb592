#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace decoupling {

/// Deterministic random source. The stream is the std::mt19937_64 sequence
/// (fully specified by the C++ standard, identical on every platform); the
/// mappings to uniforms and normals are fixed here so no implementation-
/// defined distribution code is involved.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

    /// Uniform integer in [0, n). Modulo reduction; the bias is below 2^-53
    /// for the desk-scale n used here.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal via the Box-Muller transform; draws are produced in
    /// pairs and the spare is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace decoupling
