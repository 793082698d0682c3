#include "chipfire/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>

#include "chipfire/assignment.hpp"

namespace chipfire {

int resolve_workers(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw InputError("worker count must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv("CHIPFIRE_THREADS"); env && *env) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1 || value > 4096) {
      throw InputError(std::string("CHIPFIRE_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(value);
  }
  return 1;
}

GameCheck check_game_invariants(const Graph& g, const CycleSummary& s, const CycleOptions& options) {
  GameCheck out;
  auto violate = [&](std::string what) { out.violations.push_back(std::move(what)); };
  const std::size_t T = s.period;
  const int n = g.num_vertices();

  const std::uint64_t total = s.initial.total();
  for (std::size_t t = 0; t < T; ++t) {
    if (s.cycle[t].total() != total) {
      violate("chip total changed: " + std::to_string(total) + " -> " +
              std::to_string(s.cycle[t].total()) + " on cycle round " + std::to_string(t));
      break;
    }
  }
  if (step(g, s.cycle[T - 1]) != s.cycle[0]) violate("cycle does not close after T rounds");

  const std::size_t firings = s.fire_count(0);
  for (Vertex v = 1; v < n; ++v) {
    if (s.fire_count(v) != firings) {
      violate("vertices 0 and " + std::to_string(v) + " fire " + std::to_string(firings) + " vs " +
              std::to_string(s.fire_count(v)) + " times per cycle");
      break;
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    const FiringSequence w = firing_sequence(s, v);
    if (is_clumpy(w)) violate("clumpy firing sequence " + w.word + " at vertex " + std::to_string(v));
  }

  const auto m2 = 2 * static_cast<std::uint64_t>(g.num_edges());
  if (s.stable()) {
    if (firings != 0 && firings != 1) violate("stable game with a vertex firing more than once");
    bool all = true;
    bool none = true;
    for (Vertex v = 0; v < n; ++v) {
      all = all && s.fired(0, v);
      none = none && !s.fired(0, v);
    }
    if (!all && !none) violate("stable game where only some vertices fire");
    if (total + n > m2 && total < m2) {
      violate("stable game with 2|E|-|V| < |sigma| < 2|E|");
    }
  } else {
    for (std::size_t t = 0; t < T; ++t) {
      const auto abundant = abundant_vertices(g, s.cycle[t]);
      if (!abundant.empty()) {
        violate("abundant vertex " + std::to_string(abundant.front()) +
                " on a non-stabilizing cycle, round " + std::to_string(t));
        break;
      }
    }
  }

  if (auto c = try_complement(g, s.cycle[0])) {
    out.complement_checked = true;
    const CycleSummary sc = find_cycle(g, *c, options);
    if (sc.transient != 0) violate("complement game has transient " + std::to_string(sc.transient));
    if (sc.period != T) {
      violate("complement period " + std::to_string(sc.period) + " != " + std::to_string(T));
    } else {
      for (std::size_t t = 0; t < T && out.violations.empty(); ++t) {
        for (Vertex v = 0; v < n; ++v) {
          if (sc.fired(t, v) == s.fired(t, v)) {
            violate("complement firing not negated at round " + std::to_string(t) + ", vertex " +
                    std::to_string(v));
            break;
          }
        }
      }
    }
  }
  return out;
}

std::optional<CycleSummary> simulate_in_sweep(const Graph& g, const ChipConfig& sigma,
                                              const CycleOptions& options, VerificationReport& report) {
  try {
    CycleSummary s = find_cycle(g, sigma, options);
    ++report.games_checked;
    const GameCheck check = check_game_invariants(g, s, options);
    if (check.complement_checked) ++report.tallies["complement_checked"];
    for (const std::string& v : check.violations) {
      ++report.tallies["invariant_violations"];
      report.add_failure(make_failure(g, s, "invariant: " + v));
    }
    return s;
  } catch (const BudgetExceeded& err) {
    report.incomplete = true;
    ++report.tallies["over_budget"];
    if (report.notes.size() < 10) {
      report.notes.push_back("budget exceeded for sigma=" + sigma.to_string() + ": " + err.what());
    }
    return std::nullopt;
  }
}

std::vector<Graph> small_graphs(int n_max) {
  std::vector<Graph> out;
  for (int n = 2; n <= n_max; ++n) {
    for (Graph& g : enumerate_connected(n, true, std::max(n_max, kDefaultEnumerationLimit))) {
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::string claim_name(RangeClaim claim) {
  switch (claim) {
    case RangeClaim::kTheorem1: return "theorem1";
    case RangeClaim::kConjecture1: return "conjecture1";
    case RangeClaim::kStabilization: return "stabilization";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

VerificationReport merge_all(std::string claim, Json parameters, const std::vector<VerificationReport>& parts) {
  VerificationReport out;
  out.claim = std::move(claim);
  out.parameters = std::move(parameters);
  for (const auto& p : parts) out.merge(p);
  return out;
}

auto worker_failure(const std::string& claim) {
  return [claim](std::size_t index, const std::string& message) {
    VerificationReport r;
    r.claim = claim;
    r.incomplete = true;
    ++r.tallies["worker_errors"];
    r.notes.push_back("task " + std::to_string(index) + " failed: " + message);
    return r;
  };
}

struct RangeTask {
  std::size_t graph;
  std::uint64_t total;  // exhaustive tasks
  bool high = false;    // sampled high stabilization range
};

Json graphs_json(const std::vector<Graph>& graphs) {
  Json sizes = Json::array();
  for (const Graph& g : graphs) sizes.push_back({g.num_vertices(), g.num_edges()});
  return sizes;
}

}  // namespace

VerificationReport verify_range(RangeClaim claim, const std::vector<Graph>& graphs,
                                const RangeOptions& options) {
  if (graphs.empty()) throw InputError("verify_range needs at least one graph");
  const auto start = Clock::now();
  const std::string name = claim_name(claim);

  std::vector<RangeTask> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const auto n = static_cast<std::uint64_t>(g.num_vertices());
    const auto m = static_cast<std::uint64_t>(g.num_edges());
    if (claim == RangeClaim::kStabilization) {
      for (std::uint64_t total = 0; total < m; ++total) tasks.push_back({gi, total});
      if (options.high_samples > 0) tasks.push_back({gi, 0, true});
    } else {
      for (std::uint64_t total = 2 * m - n + 1; total < 2 * m; ++total) tasks.push_back({gi, total});
    }
  }

  auto run = [&](std::size_t index) {
    const RangeTask& task = tasks[index];
    const Graph& g = graphs[task.graph];
    const auto n = static_cast<std::uint64_t>(g.num_vertices());
    const auto m = static_cast<std::uint64_t>(g.num_edges());
    VerificationReport r;
    r.claim = name;

    auto judge = [&](const CycleSummary& s) {
      switch (claim) {
        case RangeClaim::kTheorem1:
          if (s.period == 3 || s.period == 4) {
            r.add_failure(make_failure(g, s, "period " + std::to_string(s.period) +
                                                 " with 2|E|-|V| < |sigma| < 2|E|"));
          }
          ++r.tallies["period_" + std::to_string(s.period)];
          break;
        case RangeClaim::kConjecture1:
          if (s.period != 2) {
            r.add_failure(make_failure(g, s, "period " + std::to_string(s.period) + " != 2"));
          }
          break;
        case RangeClaim::kStabilization: {
          const Rational expected = task.high ? Rational(1) : Rational(0);
          if (!s.stable() || activity(s) != expected) {
            r.add_failure(make_failure(g, s, std::string(task.high ? "high" : "low") +
                                                 " range game has T=" + std::to_string(s.period) +
                                                 ", activity " + to_string(activity(s))));
          }
          ++r.tallies[task.high ? "high_range_games" : "low_range_games"];
          break;
        }
      }
    };

    if (task.high) {
      // Sampled: chips above the abundance box are allowed here.
      const std::vector<Chips> caps = degree_caps(g, 3, 0);
      const std::uint64_t lo = 3 * m - n + 1;
      const std::uint64_t hi = 6 * m;
      Rng rng = Rng::substream(options.seed, index);
      for (std::size_t k = 0; k < options.high_samples; ++k) {
        const auto total = static_cast<std::uint64_t>(
            rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
        const ChipConfig sigma = ConfigSampler(ConfigSpace{total, caps}).draw(rng);
        if (auto s = simulate_in_sweep(g, sigma, options.sweep.cycle, r)) judge(*s);
      }
      return r;
    }

    ConfigSpace space{task.total, abundance_caps(g)};
    if (claim == RangeClaim::kStabilization) {
      space.caps.assign(g.num_vertices(), static_cast<Chips>(task.total));
    }
    ConfigEnumerator it(space);
    ChipConfig sigma;
    while (it.next(sigma)) {
      if (auto s = simulate_in_sweep(g, sigma, options.sweep.cycle, r)) judge(*s);
    }
    return r;
  };

  auto parts = run_parallel<VerificationReport>(tasks.size(), options.sweep.workers, run, worker_failure(name));

  Json params{{"graphs", graphs.size()},
              {"graph_sizes", graphs_json(graphs)},
              {"max_rounds", options.sweep.cycle.max_rounds}};
  if (claim == RangeClaim::kStabilization) {
    params["low_range"] = "|sigma| < |E|, exhaustive, uncapped";
    params["high_range"] = "|sigma| > 3|E|-|V|, sampled, caps 3deg(v)";
    params["high_samples_per_graph"] = options.high_samples;
    params["seed"] = options.seed;
  } else {
    params["range"] = "2|E|-|V| < |sigma| < 2|E|";
    params["caps"] = "2deg(v)-1 (contains every non-stabilizing cycle)";
    params["mode"] = "exhaustive";
  }
  VerificationReport report = merge_all(name, std::move(params), parts);
  report.elapsed_ms = ms_since(start);
  return report;
}

VerificationReport sample_conjecture1(const RandomGameOptions& options) {
  if (options.n_min < 2 || options.n_max < options.n_min) {
    throw InputError("sampled graphs need 2 <= n_min <= n_max");
  }
  const auto start = Clock::now();
  constexpr std::size_t kChunk = 100;
  const std::size_t tasks = (options.games + kChunk - 1) / kChunk;
  auto run = [&](std::size_t index) {
    VerificationReport r;
    r.claim = "conjecture1";
    const std::size_t first = index * kChunk;
    const std::size_t last = std::min(options.games, first + kChunk);
    for (std::size_t game = first; game < last; ++game) {
      Rng rng = Rng::substream(options.seed, game);
      const auto n = rng.between(options.n_min, options.n_max);
      const auto m = rng.between(n - 1, n * (n - 1) / 2);
      const long long params[] = {n, m, static_cast<long long>(rng.next() >> 1)};
      const Graph g = generate("random_connected", params);
      const auto total = static_cast<std::uint64_t>(rng.between(2 * m - n + 1, 2 * m - 1));
      const ChipConfig sigma = ConfigSampler(ConfigSpace{total, abundance_caps(g)}).draw(rng);
      if (auto s = simulate_in_sweep(g, sigma, options.sweep.cycle, r)) {
        if (s->period != 2) r.add_failure(make_failure(g, *s, "period " + std::to_string(s->period) + " != 2"));
      }
    }
    return r;
  };
  auto parts = run_parallel<VerificationReport>(tasks, options.sweep.workers, run, worker_failure("conjecture1"));
  Json params{{"mode", "sample"},
              {"graphs", "random_connected"},
              {"n_range", {options.n_min, options.n_max}},
              {"games", options.games},
              {"seed", options.seed},
              {"range", "2|E|-|V| < |sigma| < 2|E|"},
              {"caps", "2deg(v)-1"},
              {"max_rounds", options.sweep.cycle.max_rounds}};
  VerificationReport report = merge_all("conjecture1", std::move(params), parts);
  report.elapsed_ms = ms_since(start);
  return report;
}

VerificationReport verify_assignment_sweep(const std::vector<Graph>& graphs, const SweepOptions& options) {
  if (graphs.empty()) throw InputError("assignment sweep needs at least one graph");
  const auto start = Clock::now();
  std::vector<std::pair<std::size_t, std::uint64_t>> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto caps = abundance_caps(graphs[gi]);
    const std::uint64_t top = ConfigSpace{0, caps}.cap_sum();
    for (std::uint64_t total = 0; total <= top; ++total) tasks.emplace_back(gi, total);
  }
  auto run = [&](std::size_t index) {
    const auto [gi, total] = tasks[index];
    const Graph& g = graphs[gi];
    VerificationReport r;
    r.claim = "lemmas";
    ConfigEnumerator it(ConfigSpace{total, abundance_caps(g)});
    ChipConfig sigma;
    while (it.next(sigma)) {
      auto s = simulate_in_sweep(g, sigma, options.cycle, r);
      if (!s || !is_compliant(*s, g)) continue;
      ++r.tallies["compliant_games"];
      ++r.tallies["compliant_T" + std::to_string(s->period)];
      const bool multi = s->fire_count(0) > 1;
      if (multi) ++r.tallies["compliant_multi_fire"];
      VerificationReport lemmas = check_assignment_lemmas(g, *s);
      lemmas.games_checked = 0;
      if (!lemmas.passed()) ++r.tallies[multi ? "failing_multi_fire_games" : "failing_single_fire_games"];
      r.merge(lemmas);
    }
    return r;
  };
  auto parts = run_parallel<VerificationReport>(tasks.size(), options.workers, run, worker_failure("lemmas"));
  Json params{{"graphs", graphs.size()},
              {"graph_sizes", graphs_json(graphs)},
              {"configs", "every total, caps 2deg(v)-1"},
              {"max_rounds", options.cycle.max_rounds}};
  VerificationReport report = merge_all("lemmas", std::move(params), parts);
  report.elapsed_ms = ms_since(start);
  return report;
}

std::string StaircaseTable::to_csv() const {
  std::string out = std::string(kHeader) + "\n";
  char buf[64];
  for (const StaircaseRow& row : rows) {
    out += std::to_string(row.total) + ",";
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(row.total) / vertices);
    out += buf;
    out += "," + to_string(row.activity_min) + "," + to_string(row.activity_max) + ",";
    std::snprintf(buf, sizeof buf, "%.6f", row.activity_mean);
    out += buf;
    out += ",";
    bool first = true;
    for (const auto& [period, count] : row.periods) {
      if (!first) out += ';';
      out += std::to_string(period) + ":" + std::to_string(count);
      first = false;
    }
    if (row.over_budget) out += std::string(first ? "" : ";") + "over_budget:" + std::to_string(row.over_budget);
    out += "\n";
  }
  return out;
}

StaircaseTable staircase(const Graph& g, std::size_t samples_per_total, std::uint64_t seed,
                         std::uint64_t transient_cap, int workers) {
  if (samples_per_total < 1) throw InputError("staircase needs at least one sample per total");
  const std::uint64_t top = 4 * static_cast<std::uint64_t>(g.num_edges());
  const CycleOptions cycle{transient_cap, false};
  struct Part {
    StaircaseRow row;
    std::vector<Failure> failures;
  };
  auto run = [&](std::size_t index) {
    Part part;
    StaircaseRow& row = part.row;
    row.total = index;
    const ConfigSampler sampler(ConfigSpace{index, std::vector<Chips>(g.num_vertices(), static_cast<Chips>(index))});
    Rng rng = Rng::substream(seed, index);
    bool any = false;
    long double sum = 0;
    for (std::size_t k = 0; k < samples_per_total; ++k) {
      const ChipConfig sigma = sampler.draw(rng);
      VerificationReport scratch;
      auto s = simulate_in_sweep(g, sigma, cycle, scratch);
      for (const Failure& f : scratch.failures) part.failures.push_back(f);
      if (!s) {
        ++row.over_budget;
        continue;
      }
      const Rational a = activity(*s);
      row.activity_min = any ? std::min(row.activity_min, a) : a;
      row.activity_max = any ? std::max(row.activity_max, a) : a;
      any = true;
      sum += static_cast<long double>(a.numerator()) / a.denominator();
      ++row.periods[s->period];
      ++row.samples;
    }
    row.activity_mean = row.samples ? static_cast<double>(sum / row.samples) : 0.0;
    return part;
  };
  auto on_error = [](std::size_t index, const std::string& message) {
    Part part;
    part.row.total = index;
    part.failures.push_back(Failure{Json::object(), {}, 0, 0, "task failed: " + message});
    return part;
  };
  auto parts = run_parallel<Part>(top + 1, workers, run, on_error);
  StaircaseTable table;
  table.vertices = g.num_vertices();
  for (Part& p : parts) {
    table.rows.push_back(std::move(p.row));
    for (Failure& f : p.failures) table.invariant_failures.push_back(std::move(f));
  }
  return table;
}

}  // namespace chipfire
