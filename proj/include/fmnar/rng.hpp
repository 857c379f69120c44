/**
 * Rng — seeded PRNG with pinned distribution algorithms.
 *
 * Wraps std::mt19937_64 but implements uniform / Bernoulli / Gaussian draws
 * by hand (Box-Muller for the Gaussian) instead of <random>'s distribution
 * classes, whose output differs between libstdc++ and libc++. Every draw is
 * a pure function of the seed, so simulation output is byte-identical across
 * toolchains.
 *
 * child_seed() derives per-replication seeds from a master seed with a
 * splitmix64 finalizer, so replications can run in any order (or in
 * parallel) without sharing a stream.
 */

#ifndef FMNAR_RNG_HPP
#define FMNAR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fmnar {

/** splitmix64 finalizer: one bijective mixing step. */
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/** Independent seed for replication `index` under `master`. */
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51AFD109ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed = 42) : gen_(seed) {}

    /** Uniform double in [0, 1): 53 random bits scaled by 2^-53. */
    double random() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /** Uniform double in [a, b). */
    double uniform(double a, double b) {
        return a + random() * (b - a);
    }

    /** Bernoulli trial: true with probability p. */
    bool bernoulli(double p) {
        return random() < p;
    }

    /** Standard normal via Box-Muller (both draws consumed every call). */
    double gaussian() {
        double u1 = random();
        double u2 = random();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /** Normal with the given mean and standard deviation. */
    double gaussian(double mean, double sd) {
        return mean + sd * gaussian();
    }

    /** Uniform integer in [0, n), n >= 1. Rejection-free via 64-bit modulo
     *  of a fresh draw is biased; use Lemire-style rejection instead. */
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling on the top bits; bias-free and deterministic
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace fmnar

#endif // FMNAR_RNG_HPP
