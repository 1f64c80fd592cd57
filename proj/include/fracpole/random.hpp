#ifndef FRACPOLE_RANDOM_HPP
#define FRACPOLE_RANDOM_HPP

#include <array>
#include <cstdint>
#include <optional>

namespace fracpole {

/**
 * xoshiro256** (Blackman and Vigna), state seeded by four successive
 * splitmix64 outputs of the 64-bit seed. Output streams are identical on
 * every platform for a given seed.
 */
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next() noexcept;

  /// (next() >> 11) * 2^-53, in [0, 1).
  double uniform() noexcept;

  /// ((next() >> 11) + 1) * 2^-53, in (0, 1].
  double uniform_open() noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

/**
 * Standard normal samples by the basic Box-Muller transform: each pair
 * draws u1 = uniform_open(), then u2 = uniform(), and yields
 * r cos(2 pi u2) followed by r sin(2 pi u2), r = sqrt(-2 log u1).
 */
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next();

  /// Underlying engine; interleaving draws here shifts the Gaussian stream.
  Xoshiro256& engine() noexcept { return engine_; }

 private:
  Xoshiro256 engine_;
  std::optional<double> spare_;
};

}  // namespace fracpole

#endif  // FRACPOLE_RANDOM_HPP
