#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace opk {

/// Finalizer of the splitmix64 generator.  Used as a bit mixer when
/// deriving independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream-splitting rule: substream k of a master seed is the mix of the
/// master seed with the golden-ratio multiple of (k+1).  Substreams are
/// statistically independent and fully determined by (seed, k), so
/// parallel consumers never share generator state.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
}

/// Deterministic stream of standard normal deviates.
///
/// Uniforms come straight from mt19937_64 (whose output sequence is pinned
/// by the standard) and are turned into normals with Box-Muller, so the
/// sequence does not depend on the standard library's unspecified
/// std::normal_distribution algorithm.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in (0, 1].
  double uniform() {
    const std::uint64_t bits = engine_() >> 11;  // 53 random bits
    return static_cast<double>(bits + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace opk
