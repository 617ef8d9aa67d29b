#ifndef MORLGP_RNG_HPP
#define MORLGP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace morlgp {

/// Deterministic random stream. mt19937_64 is fully specified by the standard
/// and the transforms below avoid the implementation-defined distribution
/// classes, so identical seeds give identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform on [0, 1), 53 bits of precision.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer, used to fan a master seed out into independent
/// per-(seed, episode, purpose) streams; serial and parallel schedules see
/// the same streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix_seed(master);
    for (std::uint64_t p : path) s = mix_seed(s ^ mix_seed(p));
    return s;
}

} // namespace morlgp

#endif
