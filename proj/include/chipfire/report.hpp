#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chipfire/engine.hpp"

namespace chipfire {

using Json = nlohmann::ordered_json;

/// One counterexample: the game and what went wrong.
struct Failure {
  Json graph;  // {"n": .., "edges": [[u, v], ..]}
  ChipConfig sigma;
  std::size_t transient = 0;
  std::size_t period = 0;
  std::string detail;

  Json to_json() const;
};

Json graph_json(const Graph& g);
Failure make_failure(const Graph& g, const ChipConfig& sigma, std::string detail);
Failure make_failure(const Graph& g, const CycleSummary& s, std::string detail);

/// Outcome of a claim sweep. Counts and failures merge additively, so
/// reports from independent shards combine in task order.
struct VerificationReport {
  static constexpr std::size_t kMaxRecordedFailures = 50;

  std::string claim;
  Json parameters = Json::object();
  /// Extra top-level fields emitted before the counters (e.g. a, range).
  Json header = Json::object();
  std::uint64_t games_checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<Failure> failures;
  std::map<std::string, std::uint64_t> tallies;
  bool incomplete = false;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  bool passed() const { return failure_count == 0 && !incomplete; }

  void add_failure(Failure f);
  void merge(const VerificationReport& other);

  /// Timing is excluded unless requested so that repeated runs compare
  /// byte-for-byte.
  Json to_json(bool with_timing = false) const;
};

}  // namespace chipfire
