#pragma once

#include <cstdint>

// Every seeded behavior in the project (fold shuffling, cohort generation)
// flows through the splitmix64 generator below, so results are bit-exactly
// reproducible from the documented rules alone:
//
//   next():      state += 0x9E3779B97F4A7C15; z = state;
//                z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
//                z = (z ^ z>>27) * 0x94D049BB133111EB;
//                return z ^ z>>31;
//   next_unit(): (next() >> 11) * 2^-53            -- double in [0,1)
//   next_below(n): next() % n
//
// Substreams for per-record, per-variable draws are derived with mix64 (a
// single splitmix64 step), see substream_seed.

namespace gradebayes {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// One splitmix64 step applied to z.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Plain modulo; the bias for the small n used
  /// here is far below anything observable and the rule stays portable.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

/// Seed of the independent substream used for record `record`, variable
/// slot `slot`: mix64(mix64(seed ^ kGolden*(record+1)) ^ kGolden*(slot+1)).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t record,
                                    std::uint64_t slot) {
  return mix64(mix64(seed ^ (kGolden * (record + 1))) ^
               (kGolden * (slot + 1)));
}

}  // namespace gradebayes
