#ifndef OTD_NUMERICS_RNG_HPP
#define OTD_NUMERICS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace otd {

/// SplitMix64 generator. Chosen over std::mt19937 because its output for a
/// given seed is fixed by these few lines, not by library internals, so runs
/// are reproducible across standard libraries and platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): top 53 bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, 2*pi).
    double next_angle() { return next_double() * 2.0 * std::numbers::pi; }

  private:
    std::uint64_t s_;
};

}  // namespace otd

#endif
