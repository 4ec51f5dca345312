#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "errors.hpp"

namespace cfpp {

namespace detail {

/// SplitMix64 step; used both to expand seeds and to derive worker streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Seeded random stream. All variates are derived from raw mt19937_64
/// output through fixed arithmetic, so a (seed, stream) pair reproduces
/// the identical sample sequence on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(expand_seed(seed)) {}

    /// Stream for worker `worker` under master seed `seed`. The splitting
    /// rule is two SplitMix64 steps over (seed, worker); streams for
    /// distinct workers are independent for all practical purposes.
    static Rng worker_stream(std::uint64_t seed, std::uint64_t worker) {
        std::uint64_t s = seed;
        std::uint64_t a = detail::splitmix64(s);
        s = a ^ (worker * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        return Rng(detail::splitmix64(s));
    }

    std::uint64_t raw() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Unit-rate exponential.
    double exponential() { return -std::log1p(-uniform()); }

    /// Standard normal (Box-Muller; second variate cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(2.0 * exponential());
        const double phi = 6.283185307179586476925286766559 * uniform();
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

    /// Poisson variate with arbitrary nonnegative mean. Inversion for
    /// moderate means; larger means are split into exact independent
    /// chunks so the inversion never underflows.
    long poisson(double mean) {
        detail::require(mean >= 0.0 && std::isfinite(mean), "poisson: mean must be finite and >= 0");
        long total = 0;
        while (mean > 30.0) {
            total += poisson_inversion(30.0);
            mean -= 30.0;
        }
        return total + poisson_inversion(mean);
    }

private:
    static std::mt19937_64 expand_seed(std::uint64_t seed) {
        std::uint64_t s = seed;
        return std::mt19937_64(detail::splitmix64(s));
    }

    long poisson_inversion(double mean) {
        if (mean <= 0.0) return 0;
        const double u = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        long k = 0;
        while (u > cdf && k < 100000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace cfpp
