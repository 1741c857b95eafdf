#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace yasca {

/// Portable seeded randomness.
///
/// The engine is std::mt19937_64, whose output sequence the standard fixes
/// exactly. The standard distributions and std::shuffle are not portable, so
/// bounded integers, unit reals and shuffles are derived here by fixed
/// formulas: identical seeds give identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound must be > 0. Rejection sampling,
    /// so the result is unbiased.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates, drawing from the back.
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream id (splitmix64 finalizer), for
/// independent per-purpose generators from one user seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace yasca
