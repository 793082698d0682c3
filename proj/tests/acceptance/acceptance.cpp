// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "chipfire/assignment.hpp"
#include "chipfire/bipartite.hpp"
#include "chipfire/sweep.hpp"

using namespace chipfire;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;
};

std::uint64_t invariant_games = 0;
std::uint64_t invariant_violations = 0;
std::vector<std::string> invariant_examples;

void absorb(const VerificationReport& r) {
  invariant_games += r.games_checked;
  const auto it = r.tallies.find("invariant_violations");
  if (it == r.tallies.end()) return;
  invariant_violations += it->second;
  for (const Failure& f : r.failures) {
    if (f.detail.rfind("invariant: ", 0) == 0 && invariant_examples.size() < 10) {
      invariant_examples.push_back(f.to_json().dump());
    }
  }
}

std::uint64_t tally(const VerificationReport& r, const std::string& key) {
  const auto it = r.tallies.find(key);
  return it == r.tallies.end() ? 0 : it->second;
}

// Non-invariant failures are the claim's own counterexamples.
void require_clean(Outcome& out, const VerificationReport& r, const std::string& label) {
  const std::uint64_t own = r.failure_count - tally(r, "invariant_violations");
  if (own > 0 || r.incomplete) {
    out.pass = false;
    out.details.push_back(label + ": " + std::to_string(own) + " counterexamples" +
                          (r.incomplete ? ", incomplete" : ""));
    for (const Failure& f : r.failures) {
      if (f.detail.rfind("invariant: ", 0) != 0) out.details.push_back("  " + f.to_json().dump());
    }
    for (const std::string& note : r.notes) out.details.push_back("  note: " + note);
  }
}

std::string seconds(Clock::time_point start) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << std::chrono::duration<double>(Clock::now() - start).count() << "s";
  return s.str();
}

Graph named(std::string_view kind, std::initializer_list<long long> params) {
  const std::vector<long long> p(params);
  return generate(kind, p);
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> requested;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0) requested = std::atoi(argv[i + 1]);
  }
  const int workers = resolve_workers(requested);
  SweepOptions sweep;
  sweep.workers = workers;
  const std::vector<Graph> graphs = small_graphs(5);
  RangeOptions range;
  range.sweep = sweep;

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  criteria.emplace_back("theorem1 sweep, connected graphs on <= 5 vertices, periods 3 and 4 absent", [&] {
    Outcome out;
    const VerificationReport r = verify_range(RangeClaim::kTheorem1, graphs, range);
    absorb(r);
    require_clean(out, r, "theorem1");
    out.summary = std::to_string(r.games_checked) + " games on " + std::to_string(graphs.size()) + " graphs";
    return out;
  });

  criteria.emplace_back("conjecture1, exhaustive <= 5 vertices and 10000 random games on 6-8 vertices", [&] {
    Outcome out;
    const VerificationReport ex = verify_range(RangeClaim::kConjecture1, graphs, range);
    RandomGameOptions opts;
    opts.games = 10'000;
    opts.seed = 2024;
    opts.sweep = sweep;
    const VerificationReport sampled = sample_conjecture1(opts);
    absorb(ex);
    absorb(sampled);
    require_clean(out, ex, "exhaustive");
    require_clean(out, sampled, "sampled");
    out.summary = std::to_string(ex.games_checked) + " exhaustive + " + std::to_string(sampled.games_checked) +
                  " sampled games, all T=2 required";
    return out;
  });

  criteria.emplace_back("theorem2, K_{2,2} and K_{3,3} exhaustive, K_{4,4} 100000 samples", [&] {
    Outcome out;
    std::uint64_t games = 0;
    for (int a : {2, 3}) {
      Theorem2Options opts;
      opts.sweep = sweep;
      const auto start = Clock::now();
      const VerificationReport r = verify_theorem2(a, opts);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      absorb(r);
      require_clean(out, r, "K_{" + std::to_string(a) + "," + std::to_string(a) + "}");
      games += r.games_checked;
      if (a == 3 && secs >= 30.0) {
        out.pass = false;
        out.details.push_back("K_{3,3} exhaustive took " + std::to_string(secs) + "s (limit 30s)");
      }
    }
    Theorem2Options opts;
    opts.mode = SweepMode::kSample;
    opts.samples = 100'000;
    opts.seed = 44;
    opts.sweep = sweep;
    const VerificationReport r = verify_theorem2(4, opts);
    absorb(r);
    require_clean(out, r, "K_{4,4}");
    games += r.games_checked;
    out.summary = std::to_string(games) + " games";
    return out;
  });

  criteria.emplace_back("stabilization, low range exhaustive and high range sampled on <= 5 vertices", [&] {
    Outcome out;
    RangeOptions opts = range;
    opts.seed = 7;
    const VerificationReport r = verify_range(RangeClaim::kStabilization, graphs, opts);
    absorb(r);
    require_clean(out, r, "stabilization");
    out.summary = std::to_string(tally(r, "low_range_games")) + " low-range + " +
                  std::to_string(tally(r, "high_range_games")) + " high-range games";
    return out;
  });

  // Criterion 5 aggregates the battery over every other sweep, so it runs last.
  std::function<Outcome()> battery = [&] {
    Outcome out;
    out.pass = invariant_violations == 0;
    out.summary = std::to_string(invariant_games) + " simulated games, " + std::to_string(invariant_violations) +
                  " violations";
    out.details = invariant_examples;
    return out;
  };

  criteria.emplace_back("assignment certification for compliant games on <= 5 vertices", [&] {
    Outcome out;
    const Graph c4 = named("cycle", {4});
    const CycleSummary worked = find_cycle(c4, ChipConfig{2, 1, 1, 0});
    const VerificationReport example = check_assignment_lemmas(c4, worked);
    if (worked.period != 4 || !example.passed()) {
      out.pass = false;
      out.details.push_back("C_4 (2,1,1,0) worked example did not certify");
    }
    const VerificationReport r = verify_assignment_sweep(graphs, sweep);
    absorb(r);
    if (!r.passed()) {
      out.pass = false;
      const std::uint64_t multi = tally(r, "compliant_multi_fire");
      out.details.push_back(std::to_string(tally(r, "failing_single_fire_games")) + " of " +
                            std::to_string(tally(r, "compliant_games") - multi) +
                            " single-firing games fail; " + std::to_string(tally(r, "failing_multi_fire_games")) +
                            " of " + std::to_string(multi) + " games firing several times per period fail");
      for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) {
        out.details.push_back("  " + r.failures[i].to_json().dump());
      }
    }
    out.summary = std::to_string(tally(r, "compliant_games")) + " compliant games, " +
                  std::to_string(r.failure_count) + " failed checks";
    return out;
  });

  criteria.emplace_back("bipartite lemma battery on every capped K_{2,2} and K_{3,3} game", [&] {
    Outcome out;
    std::uint64_t games = 0;
    for (int a : {2, 3}) {
      const VerificationReport r = bipartite_lemma_sweep(a, sweep);
      absorb(r);
      require_clean(out, r, "K_{" + std::to_string(a) + "," + std::to_string(a) + "}");
      games += r.games_checked;
    }
    out.summary = std::to_string(games) + " games";
    return out;
  });

  criteria.emplace_back("staircase on K_{4,4} and K_6, 50 samples per total: stairs 0, 1/2 and 1 exact", [&] {
    Outcome out;
    std::size_t checked = 0;
    for (const Graph& g : {named("complete_bipartite", {4, 4}), named("complete", {6})}) {
      const StaircaseTable table = staircase(g, 50, 8, 1'000'000, workers);
      for (const Failure& f : table.invariant_failures) {
        ++invariant_violations;
        if (invariant_examples.size() < 10) invariant_examples.push_back(f.to_json().dump());
      }
      const auto n = static_cast<std::uint64_t>(g.num_vertices());
      const auto m = static_cast<std::uint64_t>(g.num_edges());
      for (const StaircaseRow& row : table.rows) {
        invariant_games += row.samples;
        std::optional<Rational> expected;
        if (row.total < m) expected = Rational(0);
        if (row.total > 3 * m - n) expected = Rational(1);
        if (row.total > 2 * m - n && row.total < 2 * m) expected = Rational(1, 2);
        if (!expected) continue;
        ++checked;
        if (row.samples < 50 || row.over_budget || row.activity_min != *expected ||
            row.activity_max != *expected) {
          out.pass = false;
          out.details.push_back("n=" + std::to_string(n) + " total " + std::to_string(row.total) + ": activity " +
                                to_string(row.activity_min) + ".." + to_string(row.activity_max) +
                                ", expected " + to_string(*expected) + " over " + std::to_string(row.samples) +
                                " samples");
        }
      }
    }
    out.summary = std::to_string(checked) + " stair rows checked";
    return out;
  });

  criteria.emplace_back("determinism, reports byte-identical at 1 and 8 workers", [&] {
    Outcome out;
    auto compare = [&](const std::string& label, const std::function<std::string(int)>& produce) {
      if (produce(1) != produce(8)) {
        out.pass = false;
        out.details.push_back(label + " differs between 1 and 8 workers");
      }
    };
    compare("verify theorem1", [&](int w) {
      RangeOptions o;
      o.sweep.workers = w;
      return verify_range(RangeClaim::kTheorem1, graphs, o).to_json().dump();
    });
    compare("verify stabilization", [&](int w) {
      RangeOptions o;
      o.sweep.workers = w;
      o.seed = 99;
      return verify_range(RangeClaim::kStabilization, graphs, o).to_json().dump();
    });
    compare("verify conjecture1 sample", [&](int w) {
      RandomGameOptions o;
      o.games = 2000;
      o.seed = 5;
      o.sweep.workers = w;
      return sample_conjecture1(o).to_json().dump();
    });
    compare("verify theorem2 sample", [&](int w) {
      Theorem2Options o;
      o.mode = SweepMode::kSample;
      o.samples = 20'000;
      o.seed = 6;
      o.sweep.workers = w;
      return verify_theorem2(4, o).to_json().dump();
    });
    compare("verify lemmas", [&](int w) {
      SweepOptions o;
      o.workers = w;
      return verify_assignment_sweep(small_graphs(4), o).to_json().dump();
    });
    compare("staircase K_{4,4}", [&](int w) {
      return staircase(named("complete_bipartite", {4, 4}), 50, 8, 1'000'000, w).to_csv();
    });
    out.summary = "6 report kinds compared";
    return out;
  });

  criteria.insert(criteria.begin() + 4, {"invariant battery on every simulated game", battery});

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    // The battery line is printed in position 5 but evaluated after the rest.
    if (i == 4) continue;
    const auto start = Clock::now();
    Outcome out = criteria[i].second();
    all = all && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << out.summary << ", " << seconds(start) << ")\n";
    for (const std::string& d : out.details) std::cout << "    " << d << '\n';
    std::cout.flush();
  }
  const Outcome out = battery();
  all = all && out.pass;
  std::cout << (out.pass ? "PASS" : "FAIL") << " criterion 5: " << criteria[4].first << " (" << out.summary
            << ")\n";
  for (const std::string& d : out.details) std::cout << "    " << d << '\n';
  return all ? 0 : 1;
}
