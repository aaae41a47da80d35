#pragma once

// Seedable generator used for every random fixture in experiments and tests.
// The algorithm is pinned so that reports are reproducible bit-for-bit:
//   state_{n+1} = state_n + 0x9E3779B97F4A7C15  (splitmix64)
//   output      = finalizer(state_{n+1})
//   uniform01   = (output >> 11) * 2^-53
// Complex normals come from Box-Muller on consecutive uniforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace nct {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    long uniform_int(long lo, long hi_inclusive) {
        const auto span = static_cast<std::uint64_t>(hi_inclusive - lo + 1);
        return lo + static_cast<long>(next_u64() % span);
    }

    // Standard complex normal (unit variance over both components combined).
    std::complex<double> cnormal() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi) * std::numbers::sqrt2 / 2.0,
                r * std::sin(phi) * std::numbers::sqrt2 / 2.0};
    }

    Eigen::VectorXcd signal(long length) {
        Eigen::VectorXcd f(length);
        for (long t = 0; t < length; ++t) f[t] = cnormal();
        return f;
    }

private:
    std::uint64_t state_;
};

}  // namespace nct
