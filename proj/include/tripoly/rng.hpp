#pragma once

#include <cstdint>
#include <random>

namespace tripoly {

/// splitmix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seedable, splittable random stream.
///
/// A stream is identified by a 64-bit key derived from the root seed and the
/// path of `split` calls that produced it, so substreams never depend on how
/// many values any other stream consumed.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) ^ mix64(stream + 0xD1B54A32D192ED03ULL))), engine_(key_) {}

  RandomStream split(std::uint64_t stream) const { return RandomStream(key_, stream); }

  std::uint64_t key() const { return key_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exp(rate) by inverse CDF; rate > 0.
  double exponential(double rate);

  /// Density proportional to exp(-rate x) on [lo, hi] by inverse CDF. The rate may
  /// be zero or negative when hi is finite; hi may be +infinity when rate > 0.
  double truncated_exponential(double rate, double lo, double hi);

private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

} // namespace tripoly
