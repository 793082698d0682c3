#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/analysis.hpp"
#include "chipfire/configs.hpp"
#include "chipfire/parallel.hpp"
#include "chipfire/report.hpp"

namespace chipfire {

struct SweepOptions {
  CycleOptions cycle;
  int workers = 1;
};

/// Invariants every simulated game must satisfy: chip conservation along
/// the cycle, equal firing counts per vertex, no clumpy firing sequence,
/// no abundant vertex on a non-stabilizing cycle, the all-or-nothing rule
/// and chip bounds for stable games, and complement duality (same period,
/// negated firing matrix, starting on its cycle) whenever the complement
/// of the first cycle configuration exists.
struct GameCheck {
  std::vector<std::string> violations;
  bool complement_checked = false;
};

GameCheck check_game_invariants(const Graph& g, const CycleSummary& s, const CycleOptions& options);

/// find_cycle plus the invariant battery, recorded into `report`. Returns
/// nullopt (and flags the report incomplete) when the round budget runs out.
std::optional<CycleSummary> simulate_in_sweep(const Graph& g, const ChipConfig& sigma,
                                              const CycleOptions& options, VerificationReport& report);

/// Connected graphs on 2..n_max vertices, one per isomorphism class.
std::vector<Graph> small_graphs(int n_max);

enum class RangeClaim { kTheorem1, kConjecture1, kStabilization };

std::string claim_name(RangeClaim claim);

struct RangeOptions {
  SweepOptions sweep;
  /// Sampled games per graph for the high stabilization range.
  std::size_t high_samples = 2000;
  std::uint64_t seed = 1;
};

/// Exhaustive sweep of a chip-count range on each graph.
///
/// theorem1 / conjecture1: every configuration with caps 2deg(v)-1 and
/// 2|E|-|V| < |sigma| < 2|E|; the period must avoid {3, 4}, respectively
/// equal 2. stabilization: every configuration with |sigma| < |E| (no caps
/// needed, the range is finite) must reach a fixed point with no firing;
/// sampled configurations with |sigma| > 3|E|-|V| and caps 3deg(v) must
/// reach a fixed point where every vertex fires.
VerificationReport verify_range(RangeClaim claim, const std::vector<Graph>& graphs,
                                const RangeOptions& options);

struct RandomGameOptions {
  int n_min = 6;
  int n_max = 8;
  std::size_t games = 10'000;
  std::uint64_t seed = 1;
  SweepOptions sweep;
};

/// Random connected graph, random in-range total, uniform capped
/// configuration per game; asserts period 2.
VerificationReport sample_conjecture1(const RandomGameOptions& options);

/// Every capped configuration of every total on each graph; compliant
/// games are passed through check_assignment_lemmas.
VerificationReport verify_assignment_sweep(const std::vector<Graph>& graphs, const SweepOptions& options);

struct StaircaseRow {
  std::uint64_t total = 0;
  std::size_t samples = 0;
  Rational activity_min{0};
  Rational activity_max{0};
  double activity_mean = 0;
  std::map<std::size_t, std::size_t> periods;
  std::size_t over_budget = 0;
};

struct StaircaseTable {
  int vertices = 0;
  std::vector<StaircaseRow> rows;
  std::vector<Failure> invariant_failures;

  static constexpr const char* kHeader = "total,mean_chips,activity_min,activity_max,activity_mean,periods";
  std::string to_csv() const;
};

/// Activity against chip density: for each total 0..4|E|, draws uniform
/// configurations with no per-vertex cap and runs each to its cycle.
StaircaseTable staircase(const Graph& g, std::size_t samples_per_total, std::uint64_t seed,
                         std::uint64_t transient_cap, int workers);

}  // namespace chipfire
