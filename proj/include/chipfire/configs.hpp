#pragma once

#include <cstdint>
#include <vector>

#include "chipfire/engine.hpp"
#include "chipfire/random.hpp"

namespace chipfire {

/// Chip configurations with a fixed total and per-vertex caps.
struct ConfigSpace {
  std::uint64_t total = 0;
  std::vector<Chips> caps;

  std::uint64_t cap_sum() const;
  bool feasible() const { return total <= cap_sum(); }
};

/// 2deg(v) - 1 for every vertex: every configuration on the cycle of a
/// non-stabilizing game lies inside this box.
std::vector<Chips> abundance_caps(const Graph& g);
/// max(0, multiplier * deg(v) + offset) per vertex.
std::vector<Chips> degree_caps(const Graph& g, int multiplier, int offset);

/// Number of configurations in the space (exact; throws InputError on
/// 128-bit overflow).
unsigned __int128 count_configs(const ConfigSpace& space);

/// Lexicographic walk over every capped composition of `total`.
class ConfigEnumerator {
 public:
  explicit ConfigEnumerator(ConfigSpace space);

  /// True when the total exceeds the cap sum (the walk is empty).
  bool infeasible() const { return !space_.feasible(); }
  /// Writes the next configuration; false once exhausted.
  bool next(ChipConfig& out);

 private:
  void fill_smallest(std::size_t from, std::uint64_t amount);

  ConfigSpace space_;
  std::vector<Chips> current_;
  std::vector<std::uint64_t> suffix_caps_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<ChipConfig> enumerate_configs(const ConfigSpace& space);

/// Draws configurations uniformly from a space. Counts of completions are
/// tabulated once so every draw is exact (no rejection loop).
class ConfigSampler {
 public:
  explicit ConfigSampler(ConfigSpace space);

  const ConfigSpace& space() const { return space_; }
  ChipConfig draw(Rng& rng) const;

 private:
  ConfigSpace space_;
  // ways_[k][s]: fillings of positions k.. summing to s
  std::vector<std::vector<unsigned __int128>> ways_;
};

/// `count` uniform draws from `seed`; empty if the space is infeasible.
std::vector<ChipConfig> sample_configs(const ConfigSpace& space, std::size_t count, std::uint64_t seed);

}  // namespace chipfire
