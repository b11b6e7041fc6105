#ifndef AVRA_RNG_HPP
#define AVRA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace avra {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based deterministic generator: the k-th output is a pure
/// function of (seed, k), so streams can be replayed or repositioned.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() {
    ++counter_;
    return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  // Uniform index in [0, n) via 128-bit multiply-shift.
  long uniform_index(long n) {
    if (n <= 0) throw std::invalid_argument("uniform_index: n must be positive");
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next()) * static_cast<std::uint64_t>(n);
    return static_cast<long>(wide >> 64);
  }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; two draws per call, no caching, so the
  // counter position stays a pure function of the call count.
  double normal() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// FNV-1a 64-bit, used for config and dataset fingerprints.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace avra

#endif
