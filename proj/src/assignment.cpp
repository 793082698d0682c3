#include "chipfire/assignment.hpp"

#include <algorithm>

namespace chipfire {

FirstFirePartition first_fire_partition(const CycleSummary& s) {
  FirstFirePartition p;
  p.period = s.period;
  p.classes.resize(s.period);
  p.class_of.assign(s.vertices, 0);
  for (Vertex v = 0; v < s.vertices; ++v) {
    std::size_t t = 0;
    while (t < s.period && !s.fired(t, v)) ++t;
    if (t == s.period) {
      throw InputError("vertex " + std::to_string(v) +
                       " never fires on the cycle; first-fire partition undefined");
    }
    p.class_of[v] = t;
    p.classes[t].push_back(v);
  }
  return p;
}

EdgeClasses::EdgeClasses(const FirstFirePartition& p, const Graph& g)
    : period_(p.period), partition_(p), graph_(g), internal_(p.period) {
  if (p.class_of.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw InputError("partition does not match graph");
  }
  edge_class_.reserve(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const std::size_t a = p.class_of[e.u];
    const std::size_t b = p.class_of[e.v];
    edge_class_.emplace_back(a, b);
    if (a == b) {
      internal_[a].push_back(id);
    } else {
      cross_[{std::min(a, b), std::max(a, b)}].push_back(id);
    }
  }
}

const std::vector<EdgeId>& EdgeClasses::cross(std::size_t t, std::size_t t2) const {
  static const std::vector<EdgeId> kNone;
  t %= period_;
  t2 %= period_;
  const auto it = cross_.find({std::min(t, t2), std::max(t, t2)});
  return it == cross_.end() ? kNone : it->second;
}

std::vector<EdgeId> EdgeClasses::cross_at(Vertex v, std::size_t t, std::size_t t2) const {
  t %= period_;
  t2 %= period_;
  std::vector<EdgeId> out;
  if (t == t2) return out;
  const std::size_t mine = partition_.class_of[v];
  if (mine != t && mine != t2) return out;
  const std::size_t other = mine == t ? t2 : t;
  for (EdgeId e : graph_.incident_edges(v)) {
    const Vertex w = graph_.edge(e).other(v);
    if (partition_.class_of[w] == other) out.push_back(e);
  }
  return out;
}

std::vector<EdgeId> EdgeClasses::internal_at(Vertex v, std::size_t t) const {
  std::vector<EdgeId> out;
  t %= period_;
  if (partition_.class_of[v] != t) return out;
  for (EdgeId e : graph_.incident_edges(v)) {
    if (is_internal(e)) out.push_back(e);
  }
  return out;
}

bool EdgeClasses::is_consecutive(EdgeId e) const {
  const auto [a, b] = edge_class_[e];
  if (a == b) return false;
  return (a + 1) % period_ == b || (b + 1) % period_ == a;
}

namespace {

// Chips in flight during construction or replay. Untied chips are only
// counted; tied chips have identities and locations.
struct ChipState {
  explicit ChipState(const Graph& g) : graph(g), at(g.num_vertices()), untied(g.num_vertices(), 0) {}

  // Lowest-id chip tied to e held by v, or -1.
  int tied_at(Vertex v, EdgeId e) const {
    int best = -1;
    for (int c : at[v]) {
      if (chips[c].edge == e && (best < 0 || c < best)) best = c;
    }
    return best;
  }

  int held(Vertex v, EdgeId e) const {
    return static_cast<int>(std::count_if(at[v].begin(), at[v].end(),
                                          [&](int c) { return chips[c].edge == e; }));
  }

  void tie(Vertex v, EdgeId e, std::size_t round) {
    const int id = static_cast<int>(chips.size());
    chips.push_back(AssignedChip{e, v, round});
    location.push_back(v);
    at[v].push_back(id);
    --untied[v];
    ++claimed[e];
  }

  void move(int chip, Vertex to) {
    auto& from = at[location[chip]];
    from.erase(std::find(from.begin(), from.end(), chip));
    at[to].push_back(chip);
    location[chip] = to;
  }

  std::size_t count_at(Vertex v) const { return at[v].size() + untied[v]; }

  // One round of firing. `allow_untied` lets a vertex send an untied chip
  // across an edge nobody has claimed yet.
  void fire_round(const CycleSummary& s, std::size_t t, bool allow_untied) {
    struct Move {
      int chip;  // -1 for an untied chip
      Vertex from;
      Vertex to;
    };
    std::vector<Move> moves;
    std::vector<std::uint64_t> untied_out(graph.num_vertices(), 0);
    for (EdgeId id = 0; id < graph.num_edges(); ++id) {
      const Edge& e = graph.edge(id);
      const bool fu = s.fired(t, e.u);
      const bool fv = s.fired(t, e.v);
      if (!fu && !fv) continue;
      const int cu = tied_at(e.u, id);
      const int cv = tied_at(e.v, id);
      if (fu && fv) {
        if (cu >= 0 && cv >= 0) {
          moves.push_back({cu, e.u, e.v});
          moves.push_back({cv, e.v, e.u});
        } else if (cu < 0 && cv < 0 && (claimed[id] > 0 || !allow_untied)) {
          throw AssignmentFailure(t, e.u, "both ends of edge (" + std::to_string(e.u) + "," +
                                              std::to_string(e.v) +
                                              ") fire but neither holds a chip tied to it");
        }
        // Otherwise the one tied chip goes out and comes straight back, or
        // two untied chips cross; either way nothing moves.
        continue;
      }
      const Vertex from = fu ? e.u : e.v;
      const Vertex to = fu ? e.v : e.u;
      const int chip = fu ? cu : cv;
      if (chip >= 0) {
        moves.push_back({chip, from, to});
      } else if (allow_untied && claimed[id] == 0) {
        moves.push_back({-1, from, to});
        ++untied_out[from];
      } else {
        throw AssignmentFailure(t, from, "fires but holds no chip tied to edge (" +
                                             std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      }
    }
    for (Vertex v = 0; v < graph.num_vertices(); ++v) {
      if (untied_out[v] > untied[v]) {
        throw AssignmentFailure(t, v, "fires more untied chips than it holds");
      }
    }
    for (const Move& m : moves) {
      if (m.chip < 0) {
        --untied[m.from];
        ++untied[m.to];
      } else {
        move(m.chip, m.to);
      }
    }
  }

  void check_counts(const ChipConfig& expected, std::size_t t) const {
    for (Vertex v = 0; v < graph.num_vertices(); ++v) {
      if (count_at(v) != expected[v]) {
        throw AssignmentFailure(t, v, "tracked chips " + std::to_string(count_at(v)) +
                                          " differ from configuration value " +
                                          std::to_string(expected[v]));
      }
    }
  }

  const Graph& graph;
  std::vector<AssignedChip> chips;
  std::vector<Vertex> location;
  std::vector<std::vector<int>> at;
  std::vector<std::uint64_t> untied;
  std::vector<int> claimed = std::vector<int>(graph.num_edges(), 0);
};

}  // namespace

ChipAssignment build_assignment(const Graph& g, const CycleSummary& s) {
  check_summary(s, g);
  if (!is_compliant(s, g)) {
    throw InputError("game is not compliant (T=" + std::to_string(s.period) +
                     "); a valid assignment is only constructed for compliant games");
  }
  const std::size_t T = s.period;
  const FirstFirePartition p = first_fire_partition(s);
  const EdgeClasses classes(p, g);

  ChipState state(g);
  for (Vertex v = 0; v < g.num_vertices(); ++v) state.untied[v] = s.cycle[0][v];

  for (Vertex v : p.classes[0]) {
    for (EdgeId e : classes.cross_at(v, 0, 1)) {
      if (state.untied[v] == 0) throw AssignmentFailure(0, v, "lacks a chip for an edge to S_1");
      state.tie(v, e, 0);
    }
  }

  for (std::size_t t = 0; t < T; ++t) {
    state.fire_round(s, t, /*allow_untied=*/true);
    const std::size_t round = t + 1;
    state.check_counts(s.cycle[round % T], round);

    const std::vector<int> claimed_before = state.claimed;
    for (Vertex u : p.classes[round % T]) {
      for (EdgeId e : g.incident_edges(u)) {
        if (claimed_before[e] > 0) {
          if (state.held(u, e) == 0) {
            throw AssignmentFailure(round, u, "holds none of the chips already tied to edge (" +
                                                  std::to_string(g.edge(e).u) + "," +
                                                  std::to_string(g.edge(e).v) + ")");
          }
          continue;
        }
        if (state.untied[u] == 0) {
          throw AssignmentFailure(round, u, "lacks an untied chip for an unclaimed incident edge");
        }
        state.tie(u, e, round);
      }
      const std::vector<EdgeId> back = classes.cross_at(u, round - 1, round);
      const std::uint64_t leftover = state.untied[u];
      if (leftover > back.size()) {
        throw AssignmentFailure(round, u, std::to_string(leftover) + " leftover chips but only " +
                                              std::to_string(back.size()) +
                                              " distinct edges to the previous class");
      }
      for (std::uint64_t k = 0; k < leftover; ++k) state.tie(u, back[k], round);
    }
  }

  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (state.untied[v] != 0) {
      throw AssignmentFailure(T, v, std::to_string(state.untied[v]) + " chips left untied");
    }
  }

  ChipAssignment a;
  a.period = T;
  a.total_chips = s.cycle[0].total();
  a.chips = std::move(state.chips);
  a.start = std::move(state.location);
  return a;
}

int ChipTrack::held(const ChipAssignment& a, Vertex v, EdgeId e, std::size_t t) const {
  const auto& row = locations.at(t);
  int count = 0;
  for (std::size_t c = 0; c < a.chips.size(); ++c) {
    if (a.chips[c].edge == e && row[c] == v) ++count;
  }
  return count;
}

ChipTrack track_chips(const Graph& g, const CycleSummary& s, const ChipAssignment& a) {
  check_summary(s, g);
  if (a.period != s.period || a.start.size() != a.chips.size()) {
    throw InputError("assignment does not belong to this cycle");
  }
  ChipState state(g);
  for (std::size_t c = 0; c < a.chips.size(); ++c) {
    const AssignedChip& chip = a.chips[c];
    if (chip.edge >= g.num_edges()) throw AssignmentFailure(0, a.start[c], "chip without an edge");
    const Edge& e = g.edge(chip.edge);
    if (a.start[c] != e.u && a.start[c] != e.v) {
      throw AssignmentFailure(0, a.start[c], "chip held away from its edge");
    }
    state.chips.push_back(chip);
    state.location.push_back(a.start[c]);
    state.at[a.start[c]].push_back(static_cast<int>(c));
    ++state.claimed[chip.edge];
  }
  state.check_counts(s.cycle[0], 0);

  ChipTrack tr;
  tr.locations.push_back(state.location);
  for (std::size_t t = 0; t < s.period; ++t) {
    state.fire_round(s, t, /*allow_untied=*/false);
    state.check_counts(s.cycle[(t + 1) % s.period], t + 1);
    tr.locations.push_back(state.location);
  }
  return tr;
}

std::vector<int> chips_per_edge(const ChipAssignment& a, const Graph& g) {
  std::vector<int> count(g.num_edges(), 0);
  for (const AssignedChip& c : a.chips) {
    if (c.edge < g.num_edges()) ++count[c.edge];
  }
  return count;
}

bool verify_valid(const ChipAssignment& a, const EdgeClasses& c, const Graph& g) {
  if (a.chips.size() != a.total_chips) return false;
  std::vector<int> count(g.num_edges(), 0);
  std::vector<int> from_u(g.num_edges(), 0);
  std::vector<int> from_v(g.num_edges(), 0);
  for (const AssignedChip& chip : a.chips) {
    if (chip.edge >= g.num_edges()) return false;
    const Edge& e = g.edge(chip.edge);
    if (chip.home == e.u) {
      ++from_u[chip.edge];
    } else if (chip.home == e.v) {
      ++from_v[chip.edge];
    } else {
      return false;
    }
    ++count[chip.edge];
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (c.is_internal(e)) {
      if (from_u[e] != 1 || from_v[e] != 1) return false;
    } else if (c.is_consecutive(e)) {
      if (count[e] < 1 || count[e] > 2) return false;
    } else if (count[e] != 1) {
      return false;
    }
  }
  return true;
}

EdgeWeightClass classify_edges(const ChipAssignment& a, const EdgeClasses& c, const ChipTrack& tr,
                               const Graph& g) {
  EdgeWeightClass out;
  const std::vector<int> count = chips_per_edge(a, g);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (count[e] == 0) {
      out.empty.push_back(e);
      continue;
    }
    if (count[e] == 1) {
      out.light.push_back(e);
      continue;
    }
    out.heavy.push_back(e);
    if (!c.is_consecutive(e)) continue;
    const auto [cu, cv] = c.classes_of(e);
    const bool u_is_back = (cu + 1) % c.period() == cv;
    const Vertex back = u_is_back ? g.edge(e).u : g.edge(e).v;
    const Vertex forward = g.edge(e).other(back);
    HeavyLean lean{e, u_is_back ? cu : cv};
    for (std::size_t t = 0; t < tr.rounds(); ++t) {
      lean.leans_back = lean.leans_back || tr.held(a, back, e, t) == count[e];
      lean.leans_forward = lean.leans_forward || tr.held(a, forward, e, t) == count[e];
    }
    out.lean.push_back(lean);
  }
  return out;
}

int deprived_count(const Graph& g, const ChipAssignment& a, const ChipTrack& tr, Vertex v,
                   std::size_t round) {
  if (round >= tr.rounds()) {
    throw InputError("round " + std::to_string(round) + " outside tracked range 0.." +
                     std::to_string(tr.rounds() - 1));
  }
  int deprived = 0;
  for (EdgeId e : g.incident_edges(v)) {
    if (tr.held(a, v, e, round) == 0) ++deprived;
  }
  return deprived;
}

VerificationReport check_assignment_lemmas(const Graph& g, const CycleSummary& s) {
  check_summary(s, g);
  if (!is_compliant(s, g)) {
    throw InputError("game is not compliant (T=" + std::to_string(s.period) + ")");
  }
  VerificationReport report;
  report.claim = "assignment_lemmas";
  report.games_checked = 1;

  ChipAssignment a;
  ChipTrack tr;
  try {
    a = build_assignment(g, s);
    tr = track_chips(g, s, a);
  } catch (const AssignmentFailure& err) {
    report.add_failure(make_failure(g, s, std::string("construction: ") + err.what()));
    return report;
  }

  const FirstFirePartition p = first_fire_partition(s);
  const EdgeClasses classes(p, g);
  if (!verify_valid(a, classes, g)) {
    report.add_failure(make_failure(g, s, "constructed assignment violates the edge quotas"));
  }

  const EdgeWeightClass weights = classify_edges(a, classes, tr, g);
  for (const HeavyLean& lean : weights.lean) {
    if (lean.leans_back || !lean.leans_forward) {
      const Edge& e = g.edge(lean.edge);
      report.add_failure(make_failure(
          g, s, "heavy edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") between S_" +
                    std::to_string(lean.back_class) + " and the next class " +
                    (lean.leans_back ? "leans backward" : "never leans forward")));
    }
  }

  const std::vector<int> count = chips_per_edge(a, g);
  const std::size_t T = s.period;
  std::uint64_t light_back_total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const std::size_t t = p.class_of[v];
    const std::size_t before = (t + T - 1) % T;
    const auto back = classes.cross_at(v, before, t);
    const auto light_back = static_cast<int>(
        std::count_if(back.begin(), back.end(), [&](EdgeId e) { return count[e] == 1; }));
    light_back_total += static_cast<std::uint64_t>(light_back);
    const int deprived = deprived_count(g, a, tr, v, before);
    if (deprived != light_back) {
      report.add_failure(make_failure(
          g, s, "vertex " + std::to_string(v) + " in S_" + std::to_string(t) + " is deprived of " +
                    std::to_string(deprived) + " edges on round " + std::to_string(before) +
                    " but has " + std::to_string(light_back) + " light edges to the previous class"));
    }
    if (light_back < 1) {
      report.add_failure(make_failure(g, s, "vertex " + std::to_string(v) +
                                                " has no light edge to the previous class"));
    }
  }

  const auto n = static_cast<std::uint64_t>(g.num_vertices());
  const auto m = static_cast<std::uint64_t>(g.num_edges());
  if (weights.light.size() < n || light_back_total < n) {
    report.add_failure(make_failure(g, s, "only " + std::to_string(weights.light.size()) +
                                              " light edges for " + std::to_string(n) +
                                              " vertices"));
  }
  if (a.total_chips + n > 2 * m) {
    report.add_failure(make_failure(g, s, "compliant game holds " + std::to_string(a.total_chips) +
                                              " chips, above 2|E|-|V|"));
  }
  report.tallies["light_edges"] = weights.light.size();
  report.tallies["heavy_edges"] = weights.heavy.size();
  return report;
}

Json assignment_json(const Graph& g, const ChipAssignment& a, const ChipTrack& tr) {
  Json chips = Json::array();
  for (std::size_t c = 0; c < a.chips.size(); ++c) {
    Json locations = Json::array();
    for (std::size_t t = 0; t < tr.rounds(); ++t) locations.push_back(tr.locations[t][c]);
    const Edge& e = g.edge(a.chips[c].edge);
    chips.push_back(Json{{"chip_id", c},
                         {"edge", {e.u, e.v}},
                         {"assigned_by", a.chips[c].home},
                         {"assigned_round", a.chips[c].round},
                         {"locations", std::move(locations)}});
  }
  return Json{{"period", a.period}, {"total_chips", a.total_chips}, {"chips", std::move(chips)}};
}

}  // namespace chipfire
