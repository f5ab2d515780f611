#pragma once

#include <cstdint>
#include <random>

namespace sidlab {

// splitmix64 finalizer; used to derive independent per-trial / per-start
// seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Portable draws over mt19937_64 (std distributions differ across
/// standard libraries, which would break byte-identical reports).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
      return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  template <typename Container> void shuffle(Container &c) {
    for (std::size_t i = c.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, std::int64_t(i) - 1));
      std::swap(c[i - 1], c[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

} // namespace sidlab
