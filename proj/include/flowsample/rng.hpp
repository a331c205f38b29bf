#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace flowsample {

/// Seedable random stream. Independent streams are derived with split(),
/// which mixes the parent seed and a stream number through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Child stream; the parent is left untouched.
  Rng split(std::uint64_t stream) const;

  bool coin();
  std::size_t uniform_index(std::size_t n);
  /// Uniform on (0, 1], so its log is always finite.
  double uniform_open01();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace flowsample
