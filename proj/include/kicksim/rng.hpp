#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kicksim {

/// splitmix64 finalizer. Used to derive well-separated stream seeds from a
/// master seed plus an index, so per-atom streams are independent of worker
/// scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `index` in domain `tag` of a master seed.
/// Domains keep atom streams and scan-node streams from colliding.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index) {
  std::uint64_t s = splitmix64(master ^ (tag * 0xD6E8FEB86659FD93ull));
  return splitmix64(s + index * 0x9E3779B97F4A7C15ull);
}

inline constexpr std::uint64_t kAtomStreamTag = 1;
inline constexpr std::uint64_t kScanNodeTag = 2;

/// One random stream. The engine is std::mt19937_64 (bit-exact by the
/// standard); the distributions are implemented here rather than with
/// std:: distribution objects, whose draw sequences are
/// implementation-defined and would break cross-toolchain reproducibility.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Marsaglia's polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Poisson count by Knuth's inversion. Splits large means in half so the
  /// product of uniforms never underflows.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) return poisson(mean / 2.0) + poisson(mean - mean / 2.0);
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace kicksim
