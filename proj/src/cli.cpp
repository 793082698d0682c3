#include "chipfire/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chipfire/assignment.hpp"
#include "chipfire/bipartite.hpp"
#include "chipfire/sweep.hpp"

namespace chipfire::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A path to a graph file, or kind:p1,p2,... for a generated family.
Graph load_graph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_graph(read_file(spec));
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("cannot read '" + spec + "'");
  std::vector<long long> params;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    try {
      std::size_t used = 0;
      params.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("bad graph parameter '" + item + "' in '" + spec + "'");
    }
  }
  return generate(spec.substr(0, colon), params);
}

ChipConfig load_config(const Graph& g, const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '@') {
    body = read_file(body.substr(1));
    body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }),
               body.end());
  }
  ChipConfig sigma = ChipConfig::parse(body);
  check_config(g, sigma);
  return sigma;
}

int report_exit(const VerificationReport& report) {
  if (report.failure_count > 0) return kFalsified;
  if (report.incomplete) return kBudget;
  return kOk;
}

struct Common {
  std::optional<int> threads;
  std::uint64_t max_rounds = CycleOptions{}.max_rounds;
  bool low_memory = false;

  CycleOptions cycle() const { return CycleOptions{max_rounds, low_memory}; }
  SweepOptions sweep() const { return SweepOptions{cycle(), resolve_workers(threads)}; }
};

void add_cycle_flags(CLI::App* cmd, Common& common) {
  cmd->add_option("--max-rounds", common.max_rounds, "Round budget for cycle detection")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--low-memory", common.low_memory, "Constant-memory cycle detection");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel chip-firing games: simulation, analysis and claim verification", "chipfire"};
  app.require_subcommand(1, 1);
  Common common;

  std::string graph_spec;
  std::string config_text;
  std::size_t rounds = 10;

  auto* simulate = app.add_subcommand("simulate", "Print the configuration after each round");
  simulate->add_option("--graph", graph_spec, "Graph file or kind:params")->required();
  simulate->add_option("--config", config_text, "Comma list or @file")->required();
  simulate->add_option("--rounds", rounds, "Rounds to run");

  auto* period = app.add_subcommand("period", "Print transient, period and activity");
  period->add_option("--graph", graph_spec)->required();
  period->add_option("--config", config_text)->required();
  add_cycle_flags(period, common);

  auto* assign = app.add_subcommand("assign", "Dump the chip assignment of a compliant game");
  assign->add_option("--graph", graph_spec)->required();
  assign->add_option("--config", config_text)->required();
  add_cycle_flags(assign, common);

  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  std::uint64_t transient_cap = 100'000;
  auto* stair = app.add_subcommand("staircase", "Activity against chip density as CSV");
  stair->add_option("--graph", graph_spec)->required();
  stair->add_option("--samples", samples, "Samples per total")->default_val(50);
  stair->add_option("--seed", seed);
  stair->add_option("--out", out_path, "CSV path (stdout if omitted)");
  stair->add_option("--transient-cap", transient_cap, "Round budget per sample")->check(CLI::PositiveNumber);
  stair->add_option("--threads", common.threads)->check(CLI::PositiveNumber);

  int n = 0;
  bool dedup = false;
  auto* enumerate = app.add_subcommand("enumerate", "List connected graphs on n vertices");
  enumerate->add_option("--n", n)->required();
  enumerate->add_flag("--dedup", dedup, "One graph per isomorphism class");

  std::string claim;
  int n_max = 0;
  int n_min = 6;
  int a = 0;
  std::string mode = "exhaustive";
  unsigned cap = 0;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Check a claim and print a JSON report");
  verify->add_option("--claim", claim)
      ->required()
      ->check(CLI::IsMember({"theorem1", "conjecture1", "theorem2", "stabilization", "lemmas", "bipartite"}));
  auto* n_max_opt = verify->add_option("--n-max", n_max, "Largest vertex count to sweep");
  auto* graph_opt = verify->add_option("--graph", graph_spec, "Single graph file or kind:params");
  n_max_opt->excludes(graph_opt);
  verify->add_option("--n-min", n_min, "Smallest random graph (conjecture1 sample mode)");
  verify->add_option("--a", a, "Side size of K_{a,a}");
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sample"}));
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples, "Sampled games");
  verify->add_option("--cap", cap, "Per-vertex cap for theorem2 sampling (default 3a)");
  verify->add_option("--threads", common.threads)->check(CLI::PositiveNumber);
  verify->add_flag("--timing", timing, "Include elapsed_ms");
  add_cycle_flags(verify, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (simulate->parsed()) {
      const Graph g = load_graph(graph_spec);
      ChipConfig sigma = load_config(g, config_text);
      for (std::size_t t = 0; t <= rounds; ++t) {
        out << t << ' ' << sigma.to_string() << '\n';
        if (t < rounds) sigma = step(g, sigma);
      }
      return kOk;
    }
    if (period->parsed()) {
      const Graph g = load_graph(graph_spec);
      const CycleSummary s = find_cycle(g, load_config(g, config_text), common.cycle());
      out << "t0=" << s.transient << " T=" << s.period << " activity=" << to_string(activity(s)) << '\n';
      return kOk;
    }
    if (assign->parsed()) {
      const Graph g = load_graph(graph_spec);
      const CycleSummary s = find_cycle(g, load_config(g, config_text), common.cycle());
      if (!is_compliant(s, g)) {
        throw InputError("game is not compliant (T=" + std::to_string(s.period) +
                         "); assignments exist only for compliant games");
      }
      const ChipAssignment assignment = build_assignment(g, s);
      out << assignment_json(g, assignment, track_chips(g, s, assignment)).dump(2) << '\n';
      return kOk;
    }
    if (stair->parsed()) {
      const Graph g = load_graph(graph_spec);
      const StaircaseTable table = staircase(g, samples, seed, transient_cap, resolve_workers(common.threads));
      if (out_path.empty()) {
        out << table.to_csv();
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw InputError("cannot write '" + out_path + "'");
        file << table.to_csv();
      }
      for (const Failure& f : table.invariant_failures) err << "error: " << f.to_json().dump() << '\n';
      return table.invariant_failures.empty() ? kOk : kFalsified;
    }
    if (enumerate->parsed()) {
      bool first = true;
      for_each_connected(n, dedup, [&](const Graph& g) {
        if (!first) out << '\n';
        out << g.to_text();
        first = false;
      });
      return kOk;
    }

    VerificationReport report;
    if (claim == "theorem2" || claim == "bipartite") {
      if (a < 2) throw InputError("--claim " + claim + " needs --a >= 2");
      if (claim == "bipartite") {
        report = bipartite_lemma_sweep(a, common.sweep());
      } else {
        Theorem2Options options;
        options.mode = mode == "sample" ? SweepMode::kSample : SweepMode::kExhaustive;
        if (samples) options.samples = samples;
        options.seed = seed;
        options.cap = static_cast<Chips>(cap);
        options.sweep = common.sweep();
        report = verify_theorem2(a, options);
      }
    } else if (claim == "conjecture1" && mode == "sample") {
      RandomGameOptions options;
      options.n_min = n_min;
      if (n_max) options.n_max = n_max;
      if (samples) options.games = samples;
      options.seed = seed;
      options.sweep = common.sweep();
      report = sample_conjecture1(options);
    } else {
      if (mode == "sample" && claim != "stabilization") {
        throw InputError("--mode sample is available for conjecture1 and theorem2 only");
      }
      std::vector<Graph> graphs;
      if (!graph_spec.empty()) {
        graphs.push_back(load_graph(graph_spec));
      } else {
        graphs = small_graphs(n_max ? n_max : 5);
      }
      if (claim == "lemmas") {
        report = verify_assignment_sweep(graphs, common.sweep());
      } else {
        RangeOptions options;
        options.sweep = common.sweep();
        options.seed = seed;
        if (samples) options.high_samples = samples;
        const RangeClaim which = claim == "theorem1"      ? RangeClaim::kTheorem1
                                 : claim == "conjecture1" ? RangeClaim::kConjecture1
                                                          : RangeClaim::kStabilization;
        report = verify_range(which, graphs, options);
      }
    }
    out << report.to_json(timing).dump(2) << '\n';
    return report_exit(report);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Falsification& e) {
    err << "error: " << e.what() << '\n';
    return kFalsified;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace chipfire::cli
