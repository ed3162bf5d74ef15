#pragma once

#include <cmath>
#include <cstdint>

#include "dirwalk/errors.hpp"

namespace dirwalk {

// Counter-based splittable generator. Output i of stream (seed, index) is the
// SplitMix64 finalizer applied to an independent per-stream key plus i * phi,
// so any (seed, index, i) is addressable in O(1) and distinct indices give
// statistically independent sequences.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : seed_(master_seed), stream_(stream_index) {
        key_ = mix(master_seed + mix(stream_index + kPhi));
    }

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kPhi); }

    // uniform on [0, 1) with 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1); zero is resampled so logs are always finite
    double next_open_double() {
        double u;
        do {
            u = next_double();
        } while (u == 0.0);
        return u;
    }

    // standard normal via the Marsaglia polar method, spare value cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // gamma(shape, 1): Marsaglia-Tsang squeeze for shape >= 1, boosted by
    // gamma_q ~ gamma_{q+1} * U^{1/q} below 1 (needed down to shapes like Q/n).
    double next_gamma(double shape) {
        if (!(shape > 0.0)) throw DomainError("next_gamma: shape must be positive");
        if (shape < 1.0) {
            const double u = next_open_double();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_open_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double next_beta(double p, double q) {
        const double x = next_gamma(p);
        const double y = next_gamma(q);
        return x / (x + y);
    }

  private:
    static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dirwalk
