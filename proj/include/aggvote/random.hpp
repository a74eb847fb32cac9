#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace aggvote {

// Identifies one reproducible random stream. The derived stream is a pure
// function of (master_seed, replicate_index), so replicate r of a run is
// the same no matter which worker executes it or in which order.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
};

// splitmix64 finalizer; decorrelates nearby seeds.
std::uint64_t mix64(std::uint64_t x);

// Combines a seed with a stream tag into a fresh engine seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

// Deterministic random stream. The engine is mt19937_64 (bit-exact across
// platforms); uniforms take the top 53 bits, normals come from the
// Box-Muller transform of two uniforms, and bounded integers use rejection
// sampling. Owned by exactly one worker at a time.
class RandomStream {
 public:
  explicit RandomStream(SeedSpec spec)
      : engine_(mix_seed(mix64(spec.master_seed), spec.replicate_index)) {}
  explicit RandomStream(std::uint64_t raw_seed) : engine_(raw_seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_in(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Standard normal via Box-Muller; the second draw of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Unbiased integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<std::size_t>(x % n);
  }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo) + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aggvote
