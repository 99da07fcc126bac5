#pragma once

#include <array>
#include <bit>
#include <boost/random/normal_distribution.hpp>
#include <cstdint>
#include <limits>

namespace qpiston::rng {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Stream derived from (seed, stream): the generator state is a pure
/// function of the pair, so draw k of stream i never depends on how other
/// streams were scheduled. xoshiro256++ behind a SplitMix64 key schedule.
/// Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Standard normal draw (ziggurat). The ziggurat keeps no cached variate,
  /// so a fresh distribution per call leaves the stream fully determined by
  /// the engine state.
  double normal() {
    boost::random::normal_distribution<double> standard(0.0, 1.0);
    return standard(*this);
  }

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Seed for grid point / sub-task `index` derived from a parent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace qpiston::rng
