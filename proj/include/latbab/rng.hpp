#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace latbab {

// Deterministic random streams.  All draws are derived from raw mt19937_64
// output (never std:: distributions, whose results vary across standard
// library implementations), so a given (seed, worker) pair reproduces the
// same sequence everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed ^ 0x9e3779b97f4a7c15ull)) {}

    // Independent stream for worker w of a partitioned Monte Carlo loop.
    static Rng worker_stream(std::uint64_t seed, std::uint64_t worker) {
        return Rng(splitmix64(seed) ^ splitmix64(worker * 0xbf58476d1ce4e5b9ull + 1));
    }

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Integer in [lo, hi] via rejection-free Lemire-style reduction.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(gen_() % span);
    }

    double normal(double sigma = 1.0) {  // Box-Muller
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * sigma;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(6.283185307179586476925286766559 * u2);
        has_spare_ = true;
        return r * std::cos(6.283185307179586476925286766559 * u2) * sigma;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace latbab
