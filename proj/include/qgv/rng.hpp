#pragma once

// Seeded, stream-splittable random numbers.  Identical (seed, stream)
// always replays the identical draw sequence, independent of platform.

#include <cstdint>

namespace qgv {

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// xoshiro256** keyed from (seed, stream) through splitmix64.
class Rng {
  public:
    explicit Rng(RngSpec spec);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

  private:
    std::uint64_t state_[4];
};

}  // namespace qgv
