#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace logsphere {

/// splitmix64 round; used to derive well-separated per-restart seeds from a
/// single user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic double-precision stream. The engine (mt19937_64) is fully
/// specified by the standard; the uniform and Gaussian transforms are
/// hand-rolled because std::uniform_real_distribution and
/// std::normal_distribution are implementation-defined and would break
/// bitwise reproducibility across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derive the stream for one restart of one run.
    static Rng for_restart(std::uint64_t seed, std::uint64_t restart) {
        std::uint64_t s = seed;
        (void)splitmix64(s);
        s ^= 0xD6E8FEB86659FD93ull * (restart + 1);
        const std::uint64_t derived = splitmix64(s);
        return Rng(derived);
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two values per trig pair).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // in (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace logsphere
