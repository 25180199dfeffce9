#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ffrl {

// splitmix64 step, used to derive independent stream seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for stream `stream_id` of environment/worker `index` under `root`.
// Mixing through splitmix64 keeps per-env streams decorrelated even for
// consecutive indices.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream_id,
                                 std::uint64_t index) {
  std::uint64_t s = root ^ (0xd1b54a32d192ed03ULL * (stream_id + 1));
  splitmix64(s);
  s ^= 0x8bb84b93962eacc9ULL * (index + 1);
  return splitmix64(s);
}

// Deterministic random stream. std::mt19937_64 is specified bit-exactly by
// the standard; the uniform/normal transforms below are hand-rolled so draws
// do not depend on the standard library's distribution implementations.
class RngStream {
 public:
  RngStream() : engine_(0) {}
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1].
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; one spare value is cached so each pair of
  // engine draws yields two variates.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ffrl
