#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/analysis.hpp"
#include "chipfire/report.hpp"
#include "chipfire/sweep.hpp"

namespace chipfire {

/// Side size a when g is K_{a,a} labeled as generate("complete_bipartite",
/// {a, a}) does: L = 0..a-1, R = a..2a-1. Throws InputError otherwise.
int side_size(const Graph& g);

/// Each side sorted by chip count, largest first; ties keep the smaller
/// vertex index first. Index i here is the 0-based position, so L_order[i]
/// is the vertex the math calls L_{i+1}.
struct SortedSides {
  int a = 0;
  std::vector<Vertex> L_order;
  std::vector<Vertex> R_order;
  std::vector<Chips> sigma_L;
  std::vector<Chips> sigma_R;
  std::uint64_t total_L = 0;
  std::uint64_t total_R = 0;
};

SortedSides sorted_sides(const Graph& g, const ChipConfig& sigma);

struct ConjugateConfig {
  int j = 0;
  ChipConfig config;
};

/// c^j sigma: positions 1..j of each side shift by j - a, the rest by j.
/// Throws InputError when an entry would go negative or j is out of 1..a.
ConjugateConfig conjugate(const SortedSides& ss, int j);
std::optional<ConjugateConfig> try_conjugate(const SortedSides& ss, int j);

struct SideStats {
  Chips l_L = 0;  // min chips on L
  int r_L = 0;    // vertices of L holding at least a chips
  Chips l_R = 0;
  int r_R = 0;
};

SideStats side_stats(const SortedSides& ss);

/// u[t][v]: firings of v in rounds 0..t-1, for t = 0..horizon. alpha_L and
/// alpha_R are the per-round side sums. With a paired conjugate, u_conj and
/// z = u_conj - u are filled as well.
struct FireCountTable {
  std::size_t horizon = 0;
  std::vector<std::vector<std::int64_t>> u;
  std::vector<std::int64_t> alpha_L;
  std::vector<std::int64_t> alpha_R;
  std::vector<std::vector<std::int64_t>> u_conj;
  std::vector<std::vector<std::int64_t>> z;
};

FireCountTable fire_counts(const Graph& g, const ChipConfig& sigma, std::size_t horizon,
                           const std::optional<ConjugateConfig>& paired = std::nullopt);

/// Confinement on the cycle when 0 < A < 1, z-bounds for every defined
/// conjugate up to the horizon, activity equality for every defined
/// conjugate, u_{2t} growth where its hypothesis holds on a side, and the
/// sorted-chip bound sigma(L_i) < 2a - i on the lighter side of every cycle
/// configuration with 2a^2 - 2a < |sigma| < 2a^2. The default horizon is
/// t0 + 4T.
VerificationReport check_bipartite_lemmas(const Graph& g, const ChipConfig& sigma,
                                          std::optional<std::size_t> horizon = std::nullopt,
                                          const CycleOptions& options = {});
/// Same, reusing an already computed summary of sigma.
VerificationReport check_bipartite_lemmas(const Graph& g, const CycleSummary& s,
                                          std::optional<std::size_t> horizon,
                                          const CycleOptions& options);

/// Every configuration of K_{a,a} with caps 2a - 1, all totals, through
/// the invariant battery and check_bipartite_lemmas.
VerificationReport bipartite_lemma_sweep(int a, const SweepOptions& options);

enum class SweepMode { kExhaustive, kSample };

struct Theorem2Options {
  SweepMode mode = SweepMode::kExhaustive;
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  /// Per-vertex cap in sample mode; 0 means 3a, which lets transients
  /// start above the abundance box.
  Chips cap = 0;
  SweepOptions sweep;
};

/// Every game with 2a^2 - 2a < |sigma| < 2a^2 must reach period 2. Games
/// with |sigma| > 2a^2 - a are also tallied separately.
VerificationReport verify_theorem2(int a, const Theorem2Options& options);

}  // namespace chipfire
