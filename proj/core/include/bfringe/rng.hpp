#ifndef BFRINGE_RNG_HPP
#define BFRINGE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace bfringe {

// Seeded, splittable random number generation. Every stochastic routine in
// the library takes an explicit generator (or a master seed plus a stream
// index), so that any run is reproducible from its recorded seed alone and
// streams can be fanned out across threads without coordination.

/// splitmix64: used for seeding and for deriving substream keys.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ by Blackman and Vigna.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    /// Generator for stream `index` of master seed `master`. Distinct
    /// indices give statistically independent streams.
    static Xoshiro256pp substream(std::uint64_t master, std::uint64_t index) {
        SplitMix64 sm(master);
        std::uint64_t a = sm.next();
        std::uint64_t b = sm.next();
        SplitMix64 mix(a ^ (index * 0xd1342543de82ef95ULL + b));
        Xoshiro256pp g(mix.next());
        return g;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

/// Uniform integer in [0, bound), exact (rejection sampling, no modulo bias).
inline std::uint64_t uniform_below(Xoshiro256pp& rng, std::uint64_t bound) {
    // Lemire's multiply-shift with rejection on the low word.
    std::uint64_t x = rng.next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (lo < threshold) {
            x = rng.next();
            m = static_cast<unsigned __int128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in (0, 1].
inline double uniform01(Xoshiro256pp& rng) {
    return static_cast<double>((rng.next() >> 11) + 1) * 0x1.0p-53;
}

/// Uniform double in [0, 1).
inline double uniform01_left(Xoshiro256pp& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

inline double exponential(Xoshiro256pp& rng, double rate) {
    return -std::log(uniform01(rng)) / rate;
}

/// Standard normal via Marsaglia's polar method.
inline double normal(Xoshiro256pp& rng) {
    for (;;) {
        double u = 2.0 * uniform01_left(rng) - 1.0;
        double v = 2.0 * uniform01_left(rng) - 1.0;
        double q = u * u + v * v;
        if (q > 0.0 && q < 1.0) {
            return u * std::sqrt(-2.0 * std::log(q) / q);
        }
    }
}

/// Gamma(alpha, 1) for alpha >= 1 (Marsaglia-Tsang squeeze).
inline double gamma_draw(Xoshiro256pp& rng, double alpha) {
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal(rng);
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform01(rng);
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

/// Beta(a, b) as a gamma ratio.
inline double beta_draw(Xoshiro256pp& rng, double a, double b) {
    double x = gamma_draw(rng, a);
    double y = gamma_draw(rng, b);
    return x / (x + y);
}

} // namespace bfringe

#endif
