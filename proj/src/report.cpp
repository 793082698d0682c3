#include "chipfire/report.hpp"

namespace chipfire {

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Json{{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

Failure make_failure(const Graph& g, const ChipConfig& sigma, std::string detail) {
  return Failure{graph_json(g), sigma, 0, 0, std::move(detail)};
}

Failure make_failure(const Graph& g, const CycleSummary& s, std::string detail) {
  return Failure{graph_json(g), s.initial, s.transient, s.period, std::move(detail)};
}

Json Failure::to_json() const {
  return Json{{"graph", graph},
              {"sigma", sigma.values()},
              {"t0", transient},
              {"T", period},
              {"detail", detail}};
}

void VerificationReport::add_failure(Failure f) {
  ++failure_count;
  if (failures.size() < kMaxRecordedFailures) failures.push_back(std::move(f));
}

void VerificationReport::merge(const VerificationReport& other) {
  games_checked += other.games_checked;
  failure_count += other.failure_count;
  for (const Failure& f : other.failures) {
    if (failures.size() < kMaxRecordedFailures) failures.push_back(f);
  }
  for (const auto& [key, count] : other.tallies) tallies[key] += count;
  incomplete = incomplete || other.incomplete;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

Json VerificationReport::to_json(bool with_timing) const {
  Json out;
  out["claim"] = claim;
  for (const auto& [key, value] : header.items()) out[key] = value;
  out["parameters"] = parameters;
  out["games_checked"] = games_checked;
  for (const auto& [key, count] : tallies) out[key] = count;
  out["failure_count"] = failure_count;
  Json list = Json::array();
  for (const Failure& f : failures) list.push_back(f.to_json());
  out["failures"] = std::move(list);
  out["incomplete"] = incomplete;
  if (!notes.empty()) out["notes"] = notes;
  out["pass"] = passed();
  if (with_timing) out["elapsed_ms"] = elapsed_ms;
  return out;
}

}  // namespace chipfire
