#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace gdstar {

/// Deterministic random stream.
///
/// Only the raw 64-bit output of std::mt19937_64 is used (its sequence is
/// fixed by the standard); uniform and Gaussian variates are derived here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined. Equal seeds therefore give bit-identical streams
/// on every conforming platform.
class Rng {
 public:
  static constexpr std::string_view algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  /// Standard normal via Box-Muller.
  double normal();

  /// Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_normal();

  /// Independent stream derived from this stream's seed and a stream id.
  Rng fork(std::uint64_t stream) const { return Rng(mix(seed_, stream)); }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace gdstar
