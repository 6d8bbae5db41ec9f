#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace zonal {

/// Philox4x32-10 counter-based generator. Every (key, counter) pair maps to four
/// independent 32-bit words, so sample i of a stream can be drawn without touching
/// samples 0..i-1.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A named substream of a master seed. Draws are addressed by (index, slot).
class RandomStream {
public:
  RandomStream(std::uint64_t master_seed, std::string_view purpose);
  RandomStream(std::uint64_t master_seed, std::uint64_t purpose_id);

  std::uint64_t master_seed() const { return seed_; }

  /// Uniform in (0, 1), 53-bit resolution, from sample `index`, block `slot`.
  double uniform(std::uint64_t index, std::uint32_t slot, int which) const;

  /// Two independent standard normals for (index, slot) via Box-Muller.
  std::array<double, 2> normal_pair(std::uint64_t index, std::uint32_t slot) const;

  /// A derived stream, e.g. one per experiment cell.
  RandomStream child(std::uint64_t id) const;

private:
  std::uint64_t seed_;
  std::array<std::uint32_t, 2> key_;
};

/// FNV-1a; stable purpose ids for substreams.
std::uint64_t hash_purpose(std::string_view purpose);

inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

}  // namespace zonal
