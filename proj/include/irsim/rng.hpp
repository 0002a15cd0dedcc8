#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace irsim {

/// SplitMix64 finalizer; used to fold labels into derived stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Derives an independent sub-seed from a root seed and up to three labels.
/// Every consumer of randomness gets its own stream keyed by purpose so that
/// trials and purposes can be evaluated in any order (or concurrently) without
/// changing results.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
  std::uint64_t x = root;
  x = mix64(x + 0x9e3779b97f4a7c15ULL + a);
  x = mix64(x + 0x9e3779b97f4a7c15ULL + b);
  x = mix64(x + 0x9e3779b97f4a7c15ULL + c);
  return x;
}

enum class Stream : std::uint64_t {
  topology = 1,
  channels = 2,
  random_allocation = 3,
};

/// Deterministic random source. Gaussian and uniform variates are produced
/// from the raw mt19937_64 output directly (Box-Muller, bit-shift uniforms)
/// rather than through std distributions, whose algorithms the standard
/// leaves unspecified.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t root, Stream purpose, std::uint64_t extra = 0) {
    return RngStream(derive_seed(root, static_cast<std::uint64_t>(purpose), extra));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). Modulo bias is below n / 2^64.
  int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  /// Standard normal via Box-Muller; pairs are cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Circularly-symmetric complex Gaussian with E|x|^2 = variance.
  std::complex<double> complex_gaussian(double variance) {
    const double s = std::sqrt(variance / 2.0);
    return {s * gaussian(), s * gaussian()};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace irsim
