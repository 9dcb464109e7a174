#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

namespace exitlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// FNV-1a 64-bit hash, used for stable config hashes and seed derivation.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Stable child seed from (base seed, stream name, replicate index).
/// Independent of thread scheduling and execution order.
inline std::uint64_t child_seed(std::uint64_t base, std::string_view stream, std::uint64_t index) {
    std::uint64_t s = base ^ fnv1a64(stream) ^ (0x9E3779B97F4A7C15ull * (index + 1));
    return splitmix64(s);
}

/// xoshiro256++ generator (Blackman & Vigna), seeded via splitmix64.
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
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

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1], safe as a log() argument.
    double uniform_pos() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    /// Standard normal via the Marsaglia-Tsang ziggurat (128 layers).
    double normal() {
        const auto hz = static_cast<std::int32_t>((*this)() >> 32);
        const unsigned iz = static_cast<unsigned>(hz) & 127u;
        if (static_cast<std::uint32_t>(hz < 0 ? -hz : hz) < ziggurat().kn[iz])
            return hz * ziggurat().wn[iz];
        return normal_fixup(hz, iz);
    }

    /// Poisson draw. Knuth's product method for small means, recursive
    /// halving for large means.
    std::uint64_t poisson(double mean);

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    struct ZigguratTables {
        std::uint32_t kn[128];
        double wn[128];
        double fn[128];
    };
    static const ZigguratTables& ziggurat();
    double normal_fixup(std::int32_t hz, unsigned iz);

    std::uint64_t s_[4]{};
};

inline const Rng::ZigguratTables& Rng::ziggurat() {
    static const ZigguratTables tables = [] {
        ZigguratTables t{};
        const double m1 = 2147483648.0;
        double dn = 3.442619855899;
        double tn = dn;
        const double vn = 9.91256303526217e-3;
        double q = vn / std::exp(-0.5 * dn * dn);
        t.kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
        t.kn[1] = 0;
        t.wn[0] = q / m1;
        t.wn[127] = dn / m1;
        t.fn[0] = 1.0;
        t.fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            t.kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            t.fn[i] = std::exp(-0.5 * dn * dn);
            t.wn[i] = dn / m1;
        }
        return t;
    }();
    return tables;
}

inline double Rng::normal_fixup(std::int32_t hz, unsigned iz) {
    const auto& t = ziggurat();
    const double r = 3.442619855899;
    for (;;) {
        double x = hz * t.wn[iz];
        if (iz == 0) {
            double xx, yy;
            do {
                xx = -std::log(uniform_pos()) / r;
                yy = -std::log(uniform_pos());
            } while (yy + yy < xx * xx);
            return hz > 0 ? r + xx : -(r + xx);
        }
        if (t.fn[iz] + uniform() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x))
            return x;
        hz = static_cast<std::int32_t>((*this)() >> 32);
        iz = static_cast<unsigned>(hz) & 127u;
        if (static_cast<std::uint32_t>(hz < 0 ? -hz : hz) < t.kn[iz]) return hz * t.wn[iz];
    }
}

inline std::uint64_t Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    // Split recursively: Poisson(m) = Poisson(m/2) + Poisson(m/2).
    const std::uint64_t a = poisson(mean * 0.5);
    return a + poisson(mean - mean * 0.5);
}

}  // namespace exitlab
