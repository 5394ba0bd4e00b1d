#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coach {

/// Seeded random stream with distribution sampling implemented on top of
/// the raw 64-bit engine output. The standard distributions are
/// implementation-defined, so sampling through them would break the
/// bitwise reproducibility contracts; these samplers are portable.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Mixes a base seed with stream identifiers so independent workers
  /// (per motion, per tree) get decorrelated, reproducible streams.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0) {
    std::uint64_t s = splitmix(seed ^ splitmix(a + 0x9e3779b97f4a7c15ULL));
    s = splitmix(s ^ splitmix(b + 0xbf58476d1ce4e5b9ULL));
    s = splitmix(s ^ splitmix(c + 0x94d049bb133111ebULL));
    return Rng(s);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform index in [0, n). Rejection sampling keeps it unbiased.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % bound);
  }

  /// Fair sign in {-1, +1}.
  double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

  /// Exponential with rate lambda (mean 1/lambda), inverse-CDF sampling.
  double exponential(double lambda) {
    const double u = uniform01();             // [0, 1)
    return -std::log1p(-u) / lambda;          // -log(1-u), safe at u=0
  }

  /// Normal(mean, stddev) via Box-Muller; consumes two uniforms per draw
  /// so the stream position does not depend on cached state.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform01();      // (0, 1]
    const double u2 = uniform01();
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + stddev * z;
  }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

} // namespace coach
