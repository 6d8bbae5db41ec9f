#include "zonal/random.hpp"

#include <cmath>
#include <numbers>

namespace zonal {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::array<std::uint32_t, 2> make_key(std::uint64_t seed, std::uint64_t purpose) {
  const std::uint64_t k = splitmix64(seed ^ splitmix64(purpose));
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t(hi) << 21) ^ (std::uint64_t(lo) >> 11);
  // (bits + 0.5) / 2^53 is strictly inside (0, 1).
  return (double(bits & ((1ULL << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t hash_purpose(std::string_view purpose) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RandomStream::RandomStream(std::uint64_t master_seed, std::string_view purpose)
    : RandomStream(master_seed, hash_purpose(purpose)) {}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t purpose_id)
    : seed_(master_seed), key_(make_key(master_seed, purpose_id)) {}

RandomStream RandomStream::child(std::uint64_t id) const {
  RandomStream out(*this);
  const std::uint64_t k = splitmix64((std::uint64_t(key_[1]) << 32 | key_[0]) ^ splitmix64(id + 1));
  out.key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return out;
}

double RandomStream::uniform(std::uint64_t index, std::uint32_t slot, int which) const {
  const auto w = philox4x32({static_cast<std::uint32_t>(index),
                             static_cast<std::uint32_t>(index >> 32), slot, 0u},
                            key_);
  return which == 0 ? to_unit(w[0], w[1]) : to_unit(w[2], w[3]);
}

std::array<double, 2> RandomStream::normal_pair(std::uint64_t index, std::uint32_t slot) const {
  const auto w = philox4x32({static_cast<std::uint32_t>(index),
                             static_cast<std::uint32_t>(index >> 32), slot, 0u},
                            key_);
  const double u1 = to_unit(w[0], w[1]);
  const double u2 = to_unit(w[2], w[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace zonal
