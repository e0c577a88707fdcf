#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace trunca {

/// Seeded 64-bit random stream. Streams with the same seed but different
/// stream indices are independent; the same (seed, stream) pair always
/// reproduces the same sequence. Not safe for concurrent use: give each
/// worker its own stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x7275u};
    engine_.seed(seq);
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// A fresh stream derived from this stream's seed.
  RngStream split(std::uint64_t stream) const { return RngStream(seed_, stream); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit-rate exponential.
  double exponential() { return -std::log(uniform()); }

  double normal() { return normal_(engine_); }

  /// Gamma(shape, rate 1).
  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace trunca
