#include "chipfire/bipartite.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace chipfire {

int side_size(const Graph& g) {
  const int n = g.num_vertices();
  const int a = n / 2;
  const auto expected = static_cast<std::size_t>(a) * static_cast<std::size_t>(a);
  bool ok = n >= 2 && n % 2 == 0 && g.num_edges() == expected;
  for (std::size_t e = 0; ok && e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    ok = (edge.u < a) != (edge.v < a);
  }
  if (!ok) throw InputError("graph is not K_{a,a} with sides 0..a-1 and a..2a-1");
  return a;
}

namespace {

void sort_side(const ChipConfig& sigma, Vertex first, int a, std::vector<Vertex>& order,
               std::vector<Chips>& values, std::uint64_t& total) {
  order.resize(static_cast<std::size_t>(a));
  std::iota(order.begin(), order.end(), first);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return sigma[x] > sigma[y]; });
  values.clear();
  total = 0;
  for (Vertex v : order) {
    values.push_back(sigma[v]);
    total += sigma[v];
  }
}

}  // namespace

SortedSides sorted_sides(const Graph& g, const ChipConfig& sigma) {
  check_config(g, sigma);
  SortedSides ss;
  ss.a = side_size(g);
  sort_side(sigma, 0, ss.a, ss.L_order, ss.sigma_L, ss.total_L);
  sort_side(sigma, ss.a, ss.a, ss.R_order, ss.sigma_R, ss.total_R);
  return ss;
}

std::optional<ConjugateConfig> try_conjugate(const SortedSides& ss, int j) {
  if (j < 1 || j > ss.a) return std::nullopt;
  std::vector<Chips> out(2 * static_cast<std::size_t>(ss.a), 0);
  auto fill = [&](const std::vector<Vertex>& order, const std::vector<Chips>& values) {
    for (int i = 0; i < ss.a; ++i) {
      const std::int64_t shift = i < j ? j - ss.a : j;
      const std::int64_t value = static_cast<std::int64_t>(values[i]) + shift;
      if (value < 0) return false;
      out[static_cast<std::size_t>(order[i])] = static_cast<Chips>(value);
    }
    return true;
  };
  if (!fill(ss.L_order, ss.sigma_L) || !fill(ss.R_order, ss.sigma_R)) return std::nullopt;
  return ConjugateConfig{j, ChipConfig(std::move(out))};
}

ConjugateConfig conjugate(const SortedSides& ss, int j) {
  if (j < 1 || j > ss.a) {
    throw InputError("conjugate index " + std::to_string(j) + " outside 1.." + std::to_string(ss.a));
  }
  auto c = try_conjugate(ss, j);
  if (!c) throw InputError("conjugate " + std::to_string(j) + " has a negative entry");
  return *std::move(c);
}

SideStats side_stats(const SortedSides& ss) {
  const auto a = static_cast<Chips>(ss.a);
  auto fired = [&](const std::vector<Chips>& side) {
    return static_cast<int>(std::count_if(side.begin(), side.end(), [&](Chips c) { return c >= a; }));
  };
  SideStats out;
  out.l_L = ss.sigma_L.empty() ? 0 : *std::min_element(ss.sigma_L.begin(), ss.sigma_L.end());
  out.l_R = ss.sigma_R.empty() ? 0 : *std::min_element(ss.sigma_R.begin(), ss.sigma_R.end());
  out.r_L = fired(ss.sigma_L);
  out.r_R = fired(ss.sigma_R);
  return out;
}

namespace {

std::vector<std::vector<std::int64_t>> cumulative_firings(const Graph& g, ChipConfig sigma,
                                                          std::size_t horizon) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<std::int64_t>> u(horizon + 1, std::vector<std::int64_t>(n, 0));
  for (std::size_t t = 0; t < horizon; ++t) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) u[t + 1][v] = u[t][v] + (fires(g, sigma, v) ? 1 : 0);
    sigma = step(g, sigma);
  }
  return u;
}

}  // namespace

FireCountTable fire_counts(const Graph& g, const ChipConfig& sigma, std::size_t horizon,
                           const std::optional<ConjugateConfig>& paired) {
  check_config(g, sigma);
  const int a = side_size(g);
  FireCountTable tab;
  tab.horizon = horizon;
  tab.u = cumulative_firings(g, sigma, horizon);
  for (const auto& row : tab.u) {
    tab.alpha_L.push_back(std::accumulate(row.begin(), row.begin() + a, std::int64_t{0}));
    tab.alpha_R.push_back(std::accumulate(row.begin() + a, row.end(), std::int64_t{0}));
  }
  if (paired) {
    if (paired->config.size() != sigma.size()) {
      throw InputError("paired conjugate has " + std::to_string(paired->config.size()) +
                       " entries, graph has " + std::to_string(sigma.size()) + " vertices");
    }
    tab.u_conj = cumulative_firings(g, paired->config, horizon);
    tab.z = tab.u_conj;
    for (std::size_t t = 0; t <= horizon; ++t) {
      for (std::size_t v = 0; v < sigma.size(); ++v) tab.z[t][v] -= tab.u[t][v];
    }
  }
  return tab;
}

namespace {

std::string vertex_name(int a, Vertex v) {
  return (v < a ? "L" : "R") + std::to_string(v < a ? v : v - a);
}

}  // namespace

VerificationReport check_bipartite_lemmas(const Graph& g, const CycleSummary& s,
                                          std::optional<std::size_t> horizon,
                                          const CycleOptions& options) {
  const int a = side_size(g);
  VerificationReport r;
  r.claim = "bipartite_lemmas";
  r.games_checked = 1;
  auto fail = [&](const std::string& detail) { r.add_failure(make_failure(g, s, detail)); };

  const std::size_t H = std::max<std::size_t>(2, horizon.value_or(s.transient + 4 * s.period));
  const Rational A = activity(s);
  const auto bound = static_cast<Chips>(a);

  if (A > Rational(0) && A < Rational(1)) {
    ++r.tallies["confinement_checked"];
    for (std::size_t t = 0; t < s.period; ++t) {
      const ChipConfig& c = s.cycle[t];
      for (int side = 0; side < 2; ++side) {
        const auto first = c.begin() + side * a;
        const auto [lo, hi] = std::minmax_element(first, first + a);
        if (*hi - *lo >= bound) {
          fail("confinement: side " + std::string(side ? "R" : "L") + " spread " +
               std::to_string(*hi - *lo) + " >= " + std::to_string(a) + " on cycle round " +
               std::to_string(t));
        }
      }
    }
  }

  const SortedSides ss = sorted_sides(g, s.initial);
  std::vector<int> position(2 * static_cast<std::size_t>(a));
  for (int i = 0; i < a; ++i) {
    position[ss.L_order[i]] = i + 1;
    position[ss.R_order[i]] = i + 1;
  }
  const auto u = cumulative_firings(g, s.initial, H);

  for (int j = 1; j <= a; ++j) {
    const auto conj = try_conjugate(ss, j);
    if (!conj) {
      ++r.tallies["undefined_conjugates"];
      continue;
    }
    ++r.tallies["conjugates_checked"];
    const auto uc = cumulative_firings(g, conj->config, H);
    bool z_ok = true;
    for (std::size_t t = 1; t <= H && z_ok; ++t) {
      for (Vertex v = 0; v < 2 * a; ++v) {
        const std::int64_t z = uc[t][v] - u[t][v];
        const bool low = position[v] <= j;
        if (low ? (z < -1 || z > 0) : (z < 0 || z > 1)) {
          fail("z-bound: z_" + std::to_string(t) + "^" + std::to_string(j) + "(" + vertex_name(a, v) +
               ", sorted index " + std::to_string(position[v]) + ") = " + std::to_string(z));
          z_ok = false;
          break;
        }
      }
    }
    const CycleSummary sc = find_cycle(g, conj->config, options);
    const Rational Ac = activity(sc);
    if (Ac != A) {
      fail("activity: A(sigma) = " + to_string(A) + " but A(c^" + std::to_string(j) + " sigma) = " +
           to_string(Ac) + " for c^j sigma = " + conj->config.to_string());
    }
  }

  for (int side = 0; side < 2; ++side) {
    const Vertex first = side * a;
    bool hypothesis = true;
    for (Vertex v = first; v < first + a; ++v) hypothesis = hypothesis && u[2][v] >= 1;
    if (!hypothesis) continue;
    ++r.tallies["growth_checked"];
    for (std::size_t t = 1; 2 * t <= H; ++t) {
      for (Vertex v = first; v < first + a; ++v) {
        if (u[2 * t][v] < static_cast<std::int64_t>(t)) {
          fail("growth: u_" + std::to_string(2 * t) + "(" + vertex_name(a, v) + ") = " +
               std::to_string(u[2 * t][v]) + " < " + std::to_string(t));
          t = H;
          break;
        }
      }
    }
  }

  const std::uint64_t total = s.initial.total();
  const auto aa = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(a);
  if (total > 2 * aa - 2 * static_cast<std::uint64_t>(a) && total < 2 * aa) {
    ++r.tallies["sorted_bound_checked"];
    for (std::size_t t = 0; t < s.period; ++t) {
      const SortedSides cs = sorted_sides(g, s.cycle[t]);
      for (int side = 0; side < 2; ++side) {
        const auto& values = side ? cs.sigma_R : cs.sigma_L;
        const std::uint64_t own = side ? cs.total_R : cs.total_L;
        const std::uint64_t other = side ? cs.total_L : cs.total_R;
        if (own > other) continue;
        for (int i = 1; i <= a; ++i) {
          if (values[i - 1] >= static_cast<Chips>(2 * a - i)) {
            fail("sorted bound: cycle round " + std::to_string(t) + ", side " + (side ? "R" : "L") +
                 ", index " + std::to_string(i) + " holds " + std::to_string(values[i - 1]) +
                 " >= " + std::to_string(2 * a - i));
            break;
          }
        }
      }
    }
  }
  return r;
}

VerificationReport check_bipartite_lemmas(const Graph& g, const ChipConfig& sigma,
                                          std::optional<std::size_t> horizon, const CycleOptions& options) {
  side_size(g);
  return check_bipartite_lemmas(g, find_cycle(g, sigma, options), horizon, options);
}

namespace {

using Clock = std::chrono::steady_clock;

Graph complete_bipartite(int a) {
  if (a < 1) throw InputError("side size must be at least 1");
  const long long params[] = {a, a};
  return generate("complete_bipartite", params);
}

auto task_error(const std::string& claim) {
  return [claim](std::size_t index, const std::string& message) {
    VerificationReport r;
    r.claim = claim;
    r.incomplete = true;
    ++r.tallies["worker_errors"];
    r.notes.push_back("task " + std::to_string(index) + " failed: " + message);
    return r;
  };
}

}  // namespace

VerificationReport bipartite_lemma_sweep(int a, const SweepOptions& options) {
  const auto start = Clock::now();
  const Graph g = complete_bipartite(a);
  const auto caps = abundance_caps(g);
  const std::uint64_t top = ConfigSpace{0, caps}.cap_sum();
  auto run = [&](std::size_t total) {
    VerificationReport r;
    r.claim = "bipartite_lemmas";
    ConfigEnumerator it(ConfigSpace{total, caps});
    ChipConfig sigma;
    while (it.next(sigma)) {
      auto s = simulate_in_sweep(g, sigma, options.cycle, r);
      if (!s) continue;
      VerificationReport lemmas = check_bipartite_lemmas(g, *s, std::nullopt, options.cycle);
      lemmas.games_checked = 0;
      r.merge(lemmas);
    }
    return r;
  };
  auto parts = run_parallel<VerificationReport>(top + 1, options.workers, run, task_error("bipartite_lemmas"));
  VerificationReport report;
  report.claim = "bipartite_lemmas";
  report.header = Json{{"a", a}};
  report.parameters = Json{{"configs", "every total, caps 2a-1"},
                           {"horizon", "t0 + 4T"},
                           {"max_rounds", options.cycle.max_rounds}};
  for (const auto& p : parts) report.merge(p);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

VerificationReport verify_theorem2(int a, const Theorem2Options& options) {
  if (a < 2) throw InputError("theorem2 needs a >= 2");
  const auto start = Clock::now();
  const Graph g = complete_bipartite(a);
  const auto ua = static_cast<std::uint64_t>(a);
  const std::uint64_t lo = 2 * ua * ua - 2 * ua + 1;
  const std::uint64_t hi = 2 * ua * ua - 1;
  const std::uint64_t statement_lo = 2 * ua * ua - ua + 1;
  const bool exhaustive = options.mode == SweepMode::kExhaustive;
  const Chips cap = exhaustive ? static_cast<Chips>(2 * a - 1)
                               : (options.cap ? options.cap : static_cast<Chips>(3 * a));
  const std::vector<Chips> caps(2 * ua, cap);
  if (2 * ua * cap < hi) throw InputError("cap " + std::to_string(cap) + " cannot reach the range");

  auto judge = [&](const ChipConfig& sigma, VerificationReport& r) {
    const SortedSides ss = sorted_sides(g, sigma);
    for (int j = 1; j <= a; ++j) {
      if (!try_conjugate(ss, j)) ++r.tallies["undefined_conjugates"];
    }
    auto s = simulate_in_sweep(g, sigma, options.sweep.cycle, r);
    if (!s) return;
    const bool statement = sigma.total() >= statement_lo;
    ++r.tallies[statement ? "statement_range_games" : "proof_only_range_games"];
    if (s->period != 2) {
      r.add_failure(make_failure(g, *s, "period " + std::to_string(s->period) + " != 2" +
                                            (statement ? "" : " (outside the statement range)")));
    }
  };

  std::vector<VerificationReport> parts;
  if (exhaustive) {
    parts = run_parallel<VerificationReport>(
        hi - lo + 1, options.sweep.workers,
        [&](std::size_t index) {
          VerificationReport r;
          r.claim = "theorem2";
          ConfigEnumerator it(ConfigSpace{lo + index, caps});
          ChipConfig sigma;
          while (it.next(sigma)) judge(sigma, r);
          return r;
        },
        task_error("theorem2"));
  } else {
    std::vector<ConfigSampler> samplers;
    for (std::uint64_t total = lo; total <= hi; ++total) samplers.emplace_back(ConfigSpace{total, caps});
    constexpr std::size_t kChunk = 1000;
    const std::size_t tasks = (options.samples + kChunk - 1) / kChunk;
    parts = run_parallel<VerificationReport>(
        tasks, options.sweep.workers,
        [&](std::size_t index) {
          VerificationReport r;
          r.claim = "theorem2";
          Rng rng = Rng::substream(options.seed, index);
          const std::size_t count = std::min(kChunk, options.samples - index * kChunk);
          for (std::size_t k = 0; k < count; ++k) {
            const auto& sampler = samplers[rng.below(samplers.size())];
            judge(sampler.draw(rng), r);
          }
          return r;
        },
        task_error("theorem2"));
  }

  VerificationReport report;
  report.claim = "theorem2";
  report.header = Json{{"a", a},
                       {"range", {lo, hi}},
                       {"statement_range", {statement_lo, hi}},
                       {"mode", exhaustive ? "exhaustive" : "sample"}};
  report.parameters = Json{{"cap", cap}, {"max_rounds", options.sweep.cycle.max_rounds}};
  if (!exhaustive) {
    report.parameters["samples"] = options.samples;
    report.parameters["seed"] = options.seed;
  }
  report.tallies["undefined_conjugates"] = 0;
  for (const auto& p : parts) report.merge(p);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace chipfire
