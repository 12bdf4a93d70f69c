#pragma once
// Deterministic random numbers.  All sampling in the library goes through this
// wrapper with explicitly coded distributions (std:: distributions are not
// reproducible across standard libraries).  Reports that quote random results
// include kRngAlgorithm so published numbers can be tied to the generator.

#include <cstdint>
#include <random>

namespace mubwig {

inline constexpr const char* kRngAlgorithm = "mt19937_64+boxmuller/v1";

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(mix(seed)) {}

  // Independent substream: lets parallel consumers (one per basis, per net,
  // ...) draw identical values regardless of scheduling.
  static Rng derive(uint64_t seed, uint64_t stream) {
    return Rng(mix(seed) ^ mix(stream * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
  }

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; caches the paired draw.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586477 * u2);
    have_spare_ = true;
    return r * std::cos(6.283185307179586477 * u2);
  }

  // Uniform integer in [0, n), rejection sampled (no modulo bias).
  uint32_t below(uint32_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return static_cast<uint32_t>(v % n);
  }

 private:
  static uint64_t mix(uint64_t v) {  // SplitMix64 finalizer
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
  }

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mubwig
