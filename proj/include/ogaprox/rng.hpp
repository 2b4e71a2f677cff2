#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace ogaprox {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// Every stream is identified by a 64-bit key; draws walk a 128-bit counter.
/// Distributions below are written out explicitly instead of using
/// <random> distributions so that sequences are identical across standard
/// libraries.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  using result_type = std::uint32_t;

  explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  /// Raw block function, exposed for known-answer tests.
  static Counter block(Counter ctr, Key key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Standard normal via Box-Muller (cached second variate).
  double normal();
  /// Uniform integer in [0, n) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()() { return next_u32(); }

 private:
  void refill();

  Key key_{};
  Counter counter_{};
  Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stable 64-bit hash of a label, used to derive per-experiment streams.
std::uint64_t stream_id(std::string_view label, std::uint64_t index = 0);

}  // namespace ogaprox
