#ifndef COLDROUTE_RNG_HPP
#define COLDROUTE_RNG_HPP

#include <cstdint>
#include <random>

namespace coldroute {

// Thin wrapper around mt19937_64 with hand-rolled distributions so that
// seeded runs are bit-identical regardless of the standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi], inclusive. Debiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo >= hi) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    bool coin() { return (engine_() & 1u) != 0; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace coldroute

#endif
