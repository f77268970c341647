#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "iccsi/matrix.hpp"

namespace iccsi {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic generator: std::mt19937_64 seeded through SplitMix64, with
/// rejection sampling for bounded integers so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Stream for item `index` of a run seeded with `master`. Streams for
  /// different indices are independent of iteration order.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  Elem element(const Field& f) { return static_cast<Elem>(below(f.q())); }
  Elem nonzero_element(const Field& f) { return static_cast<Elem>(1 + below(f.q() - 1)); }

  Matrix matrix(const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (auto& x : m.row_span(r)) x = element(f);
    return m;
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace iccsi
