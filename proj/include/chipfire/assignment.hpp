#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chipfire/analysis.hpp"
#include "chipfire/report.hpp"

namespace chipfire {

/// S_t: vertices whose first firing on the cycle is round t.
struct FirstFirePartition {
  std::size_t period = 0;
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::size_t> class_of;
};

/// Throws InputError if some vertex never fires on the cycle.
FirstFirePartition first_fire_partition(const CycleSummary& s);

/// Edges grouped by the partition classes of their endpoints.
class EdgeClasses {
 public:
  EdgeClasses(const FirstFirePartition& p, const Graph& g);

  std::size_t period() const { return period_; }
  /// Edges with both endpoints in S_t.
  const std::vector<EdgeId>& internal(std::size_t t) const { return internal_[t % period_]; }
  /// Edges between S_t and S_t' (t != t' mod T). Symmetric.
  const std::vector<EdgeId>& cross(std::size_t t, std::size_t t2) const;
  /// Restriction of cross(t, t2) to edges at v.
  std::vector<EdgeId> cross_at(Vertex v, std::size_t t, std::size_t t2) const;
  std::vector<EdgeId> internal_at(Vertex v, std::size_t t) const;

  /// Classes (t, t') of the endpoints of e, ordered as (class of e.u, class of e.v).
  std::pair<std::size_t, std::size_t> classes_of(EdgeId e) const { return edge_class_[e]; }
  bool is_internal(EdgeId e) const { return edge_class_[e].first == edge_class_[e].second; }
  /// Cross edge whose endpoint classes are adjacent mod T.
  bool is_consecutive(EdgeId e) const;

  const FirstFirePartition& partition() const { return partition_; }

 private:
  std::size_t period_;
  FirstFirePartition partition_;
  Graph graph_;
  std::vector<std::vector<EdgeId>> internal_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<EdgeId>> cross_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_class_;
};

inline constexpr EdgeId kUnassigned = static_cast<EdgeId>(-1);

struct AssignedChip {
  EdgeId edge = kUnassigned;
  /// Vertex that assigned the chip (and held it at that moment).
  Vertex home = -1;
  /// Round of the construction on which it was assigned (0..T).
  std::size_t round = 0;
};

/// Every chip of a cycle configuration tied to one incident edge.
/// `start[c]` is where chip c sits on cycle round 0.
struct ChipAssignment {
  std::size_t period = 0;
  std::uint64_t total_chips = 0;
  std::vector<AssignedChip> chips;
  std::vector<Vertex> start;
};

/// Thrown when the construction or chip tracking runs into a contradiction
/// with the argument it implements.
class AssignmentFailure : public Falsification {
 public:
  AssignmentFailure(std::size_t round, Vertex vertex, const std::string& detail)
      : Falsification("round " + std::to_string(round) + ", vertex " + std::to_string(vertex) +
                      ": " + detail),
        round_(round),
        vertex_(vertex) {}

  std::size_t round() const { return round_; }
  Vertex vertex() const { return vertex_; }

 private:
  std::size_t round_;
  Vertex vertex_;
};

/// Inductive valid-assignment construction for a compliant game.
///
/// Round 0: each v in S_0 ties one chip to each edge of E_{0,1}(v).
/// Round t = 1..T (S_T = S_0): each u in S_t keeps the chips it holds that
/// are already tied to its edges, ties a fresh chip to each incident edge
/// nobody has claimed yet, then spreads its leftover chips over distinct
/// edges of E_{t-1,t}(u) in ascending EdgeId order. Between rounds chips
/// move with the game; a firing vertex sends a chip tied to each edge (or
/// an untied chip while the edge is unclaimed). When both endpoints fire
/// and only one holds a tied chip, the chip goes out and comes straight
/// back. Throws InputError if the game is not compliant and
/// AssignmentFailure on any contradiction.
ChipAssignment build_assignment(const Graph& g, const CycleSummary& s);

/// (T+1) x chips table: locations[t][c] is the vertex holding chip c on
/// cycle round t.
struct ChipTrack {
  std::vector<std::vector<Vertex>> locations;

  std::size_t rounds() const { return locations.size(); }
  /// Chips tied to e held by v on round t.
  int held(const ChipAssignment& a, Vertex v, EdgeId e, std::size_t t) const;
};

/// Replays one period from `a.start`, moving only tied chips across their
/// own edges. Throws AssignmentFailure if a firing vertex has no chip for
/// one of its edges, or if per-vertex chip counts drift from the cycle.
ChipTrack track_chips(const Graph& g, const CycleSummary& s, const ChipAssignment& a);

/// Quotas per edge class: internal edges carry exactly one chip from each
/// endpoint, cross edges between consecutive classes carry one or two, all
/// other cross edges exactly one; every chip is tied to an edge.
bool verify_valid(const ChipAssignment& a, const EdgeClasses& c, const Graph& g);

struct HeavyLean {
  EdgeId edge;
  std::size_t back_class;  // t for an edge of E_{t,t+1}
  bool leans_back = false;     // the S_t endpoint sometimes holds both chips
  bool leans_forward = false;  // the S_{t+1} endpoint sometimes holds both
};

struct EdgeWeightClass {
  std::vector<EdgeId> heavy;
  std::vector<EdgeId> light;
  std::vector<EdgeId> empty;
  std::vector<HeavyLean> lean;  // heavy consecutive cross edges only
};

std::vector<int> chips_per_edge(const ChipAssignment& a, const Graph& g);

EdgeWeightClass classify_edges(const ChipAssignment& a, const EdgeClasses& c, const ChipTrack& tr,
                               const Graph& g);

/// Incident edges of v none of whose tied chips v holds on round t.
int deprived_count(const Graph& g, const ChipAssignment& a, const ChipTrack& tr, Vertex v,
                   std::size_t round);

/// Builds, tracks and classifies the assignment of a compliant game and
/// checks the heavy-edge lean, deprivation count, light-edge lower bound
/// and chip-count bound. Construction contradictions become failures.
/// Throws InputError if the game is not compliant.
VerificationReport check_assignment_lemmas(const Graph& g, const CycleSummary& s);

/// JSON dump: {"period", "chips": [{chip_id, edge, locations}]}.
Json assignment_json(const Graph& g, const ChipAssignment& a, const ChipTrack& tr);

}  // namespace chipfire
