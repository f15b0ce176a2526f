#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace spintrend {

// splitmix64 finalizer, used to derive well-separated stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG. std::mt19937_64 output is pinned by the standard, but
// the standard *distributions* are implementation-defined, so every
// transform (uniform, bounded int, normal, shuffle) is done here. Anything
// persisted to disk must stay bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_base_(seed) {}

    // Independent substream, e.g. one per optimization task.
    Rng child(std::uint64_t stream) const {
        return Rng(mix64(seed_base_ ^ mix64(stream + 1)), seed_base_);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n), Lemire's debiased multiply-shift.
    std::uint64_t uniform_index(std::uint64_t n) {
        using u128 = unsigned __int128;
        u128 m = static_cast<u128>(engine_()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<u128>(engine_()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Standard normal via Box-Muller; the paired value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::span<T> v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    Rng(std::uint64_t derived, std::uint64_t base) : engine_(derived), seed_base_(base) {}

    std::mt19937_64 engine_;
    std::uint64_t seed_base_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace spintrend
