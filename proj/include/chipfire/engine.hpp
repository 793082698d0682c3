#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/graph.hpp"

namespace chipfire {

using Chips = std::uint32_t;

/// Per-vertex chip counts. Comparison is exact element-wise equality.
class ChipConfig {
 public:
  ChipConfig() = default;
  explicit ChipConfig(std::vector<Chips> chips) : chips_(std::move(chips)) {}
  ChipConfig(std::initializer_list<Chips> chips) : chips_(chips) {}

  /// Parses the comma-separated text form, e.g. "2,2,0".
  static ChipConfig parse(std::string_view text);

  std::size_t size() const { return chips_.size(); }
  Chips operator[](Vertex v) const { return chips_[static_cast<std::size_t>(v)]; }
  Chips& operator[](Vertex v) { return chips_[static_cast<std::size_t>(v)]; }
  const std::vector<Chips>& values() const { return chips_; }
  auto begin() const { return chips_.begin(); }
  auto end() const { return chips_.end(); }

  void swap(ChipConfig& other) noexcept { chips_.swap(other.chips_); }

  std::uint64_t total() const;
  std::string to_string() const;

  bool operator==(const ChipConfig&) const = default;
  auto operator<=>(const ChipConfig&) const = default;

 private:
  std::vector<Chips> chips_;
};

struct ChipConfigHash {
  std::size_t operator()(const ChipConfig& c) const;
};

/// Throws InputError unless `sigma` has one entry per vertex of `g`.
void check_config(const Graph& g, const ChipConfig& sigma);

/// True iff vertex v holds at least deg(v) chips.
bool fires(const Graph& g, const ChipConfig& sigma, Vertex v);

/// One round of parallel firing: every vertex with at least deg(v) chips
/// sends one chip to each neighbor, all at once.
ChipConfig step(const Graph& g, const ChipConfig& sigma);

/// Eventual cycle of a game. Rounds are numbered from the first
/// configuration on the cycle: cycle[t] is the configuration t rounds after
/// the transient, and fired(t, v) is the firing indicator on that round.
struct CycleSummary {
  ChipConfig initial;
  std::size_t transient = 0;
  std::size_t period = 0;
  std::vector<ChipConfig> cycle;
  std::vector<std::uint8_t> firing;  // period x vertices, row-major
  int vertices = 0;
  std::uint64_t graph_fingerprint = 0;

  bool fired(std::size_t t, Vertex v) const {
    return firing[(t % period) * static_cast<std::size_t>(vertices) +
                  static_cast<std::size_t>(v)] != 0;
  }
  /// Firings of v over one full cycle.
  std::size_t fire_count(Vertex v) const;
  bool stable() const { return period == 1; }
};

/// Throws InputError if `s` was not computed on `g`.
void check_summary(const CycleSummary& s, const Graph& g);

struct CycleOptions {
  std::uint64_t max_rounds = 1'000'000;
  /// Use constant-memory cycle finding (Brent) instead of the seen-map.
  bool low_memory = false;
};

/// Runs the game until a configuration recurs and summarizes the cycle.
/// Throws BudgetExceeded if no recurrence shows up within max_rounds.
CycleSummary find_cycle(const Graph& g, const ChipConfig& sigma, const CycleOptions& options = {});

}  // namespace chipfire
