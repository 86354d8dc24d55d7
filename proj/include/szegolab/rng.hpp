#pragma once

#include <cmath>
#include <cstdint>

#include "szegolab/types.hpp"

namespace szegolab {

// SplitMix64: deterministic across platforms, unlike the distributions in
// <random>. Randomized checks must reproduce bit-for-bit from a seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    complexd unit_phase() {
        const double t = uniform(0.0, 2.0 * pi);
        return {std::cos(t), std::sin(t)};
    }

    // Uniform over the disk of radius R (area measure).
    complexd in_disk(double R) { return std::sqrt(uniform()) * R * unit_phase(); }

    complexd in_annulus(double r_in, double r_out) {
        return uniform(r_in, r_out) * unit_phase();
    }

    // Point in the ball of radius R in C^n, radius biased toward the bulk.
    cvector in_ball(int n, double R) {
        cvector z(n);
        double s = 0.0;
        for (auto& c : z) {
            c = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            s += std::norm(c);
        }
        const double scale = R * std::pow(uniform(), 1.0 / (2 * n)) / std::sqrt(s);
        for (auto& c : z) c *= scale;
        return z;
    }

    cvector direction(int n) {
        cvector xi(n);
        for (auto& c : xi) c = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        if (norm2(xi) == 0.0) xi[0] = 1.0;
        return xi;
    }
};

// Derived seed for an independent sub-stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
    return g.next();
}

inline constexpr std::uint64_t default_seed = 0x5EED;

} // namespace szegolab
