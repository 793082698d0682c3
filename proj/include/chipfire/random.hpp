#pragma once

#include <cstdint>
#include <random>

namespace chipfire {

/// Seedable generator with portable bounded draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; bounded integers use rejection rather than
/// std::uniform_int_distribution so results agree across standard
/// libraries. `substream(seed, index)` derives independent per-task
/// generators so parallel sweeps do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed) ^ mix(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [0, bound) for 128-bit bounds.
  unsigned __int128 below128(unsigned __int128 bound) {
    if (bound <= UINT64_MAX) return below(static_cast<std::uint64_t>(bound));
    const unsigned __int128 top = ~static_cast<unsigned __int128>(0);
    const unsigned __int128 limit = top - (top % bound);
    for (;;) {
      const unsigned __int128 x =
          (static_cast<unsigned __int128>(engine_()) << 64) | engine_();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform in [lo, hi]; requires lo <= hi.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace chipfire
