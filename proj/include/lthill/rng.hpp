#pragma once

#include <cmath>
#include <cstdint>

namespace lthill {

// Reproducible generator for simulation work: xoshiro256++ seeded through a
// splitmix64 chain. Substreams are keyed by (seed, stream); parallel kernels
// give every replicate its own stream so results do not depend on thread
// scheduling. All variate transforms are implemented here (no
// std::*_distribution) to keep sequences identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        // Two independent splitmix chains, one per key, xored together.
        std::uint64_t a = seed;
        std::uint64_t b = stream + 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < 4; ++i) {
            state_[i] = splitmix(a) ^ rotl(splitmix(b), 32);
        }
        // xoshiro must not start from the all-zero state.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so it
    // is safe under log() and quantile transforms.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unit-rate exponential.
    double exponential() { return -std::log(uniform01()); }

    // Standard normal, Box-Muller without caching (two uniforms per call).
    double normal() {
        const double r = std::sqrt(2.0 * exponential());
        const double theta = 6.283185307179586476925287 * uniform01();
        return r * std::cos(theta);
    }

    // Gamma(shape, scale 1) via Marsaglia-Tsang; the shape < 1 case uses the
    // boosting identity G(a) = G(a+1) U^{1/a}.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix(std::uint64_t& s) {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace lthill
