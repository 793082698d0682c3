#include "chipfire/engine.hpp"

#include <charconv>
#include <numeric>
#include <unordered_map>

namespace chipfire {

ChipConfig ChipConfig::parse(std::string_view text) {
  std::vector<Chips> chips;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t' || item.back() == '\r' ||
                             item.back() == '\n')) {
      item.remove_suffix(1);
    }
    Chips value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("invalid chip count '" + std::string(item) + "' in config '" +
                       std::string(text) + "'");
    }
    chips.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return ChipConfig(std::move(chips));
}

std::uint64_t ChipConfig::total() const {
  return std::accumulate(chips_.begin(), chips_.end(), std::uint64_t{0});
}

std::string ChipConfig::to_string() const {
  std::string out;
  for (std::size_t v = 0; v < chips_.size(); ++v) {
    if (v) out += ',';
    out += std::to_string(chips_[v]);
  }
  return out;
}

std::size_t ChipConfigHash::operator()(const ChipConfig& c) const {
  // FNV-1a over the packed counts; buckets still compare full vectors.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Chips x : c) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (x >> shift) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

void check_config(const Graph& g, const ChipConfig& sigma) {
  if (sigma.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw InputError("config length " + std::to_string(sigma.size()) +
                     " != " + std::to_string(g.num_vertices()) + " vertices");
  }
}

bool fires(const Graph& g, const ChipConfig& sigma, Vertex v) {
  check_config(g, sigma);
  return sigma[v] >= static_cast<Chips>(g.degree(v));
}

namespace {

// Hot path for sweeps: no validation.
void step_into(const Graph& g, const ChipConfig& sigma, ChipConfig& out, std::vector<std::uint8_t>& fired) {
  const int n = g.num_vertices();
  const auto& deg = g.degrees();
  out = sigma;
  for (Vertex v = 0; v < n; ++v) fired[v] = sigma[v] >= static_cast<Chips>(deg[v]);
  for (Vertex v = 0; v < n; ++v) {
    if (!fired[v]) continue;
    out[v] -= static_cast<Chips>(deg[v]);
    for (Vertex w : g.neighbors(v)) ++out[w];
  }
}

CycleSummary summarize(const Graph& g, const ChipConfig& initial, std::size_t transient,
                       const ChipConfig& entry, std::size_t period) {
  CycleSummary s;
  s.initial = initial;
  s.transient = transient;
  s.period = period;
  s.vertices = g.num_vertices();
  s.graph_fingerprint = g.fingerprint();
  s.cycle.reserve(period);
  s.firing.resize(period * static_cast<std::size_t>(s.vertices));
  std::vector<std::uint8_t> fired(s.vertices);
  ChipConfig current = entry;
  ChipConfig next;
  for (std::size_t t = 0; t < period; ++t) {
    s.cycle.push_back(current);
    step_into(g, current, next, fired);
    std::copy(fired.begin(), fired.end(), s.firing.begin() + t * s.vertices);
    current.swap(next);
  }
  return s;
}

[[noreturn]] void over_budget(std::uint64_t rounds) {
  throw BudgetExceeded("no recurrence within " + std::to_string(rounds) +
                           " rounds simulated; raise max_rounds",
                       rounds);
}

CycleSummary find_cycle_map(const Graph& g, const ChipConfig& sigma, std::uint64_t max_rounds) {
  std::unordered_map<ChipConfig, std::size_t, ChipConfigHash> seen;
  std::vector<std::uint8_t> fired(g.num_vertices());
  ChipConfig current = sigma;
  ChipConfig next;
  seen.emplace(current, 0);
  for (std::uint64_t round = 1; round <= max_rounds; ++round) {
    step_into(g, current, next, fired);
    current.swap(next);
    auto [it, inserted] = seen.emplace(current, round);
    if (!inserted) {
      const std::size_t t0 = it->second;
      return summarize(g, sigma, t0, current, round - t0);
    }
  }
  over_budget(max_rounds);
}

// Brent: find the period with a teleporting tortoise at powers of two, then
// walk two pointers one period apart from the start to find the transient.
CycleSummary find_cycle_brent(const Graph& g, const ChipConfig& sigma, std::uint64_t max_rounds) {
  std::vector<std::uint8_t> fired(g.num_vertices());
  ChipConfig scratch;
  auto advance = [&](ChipConfig& c) {
    step_into(g, c, scratch, fired);
    c.swap(scratch);
  };
  std::uint64_t rounds = 1;
  std::size_t power = 1;
  std::size_t period = 1;
  ChipConfig tortoise = sigma;
  ChipConfig hare = sigma;
  advance(hare);
  while (tortoise != hare) {
    if (power == period) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
    advance(hare);
    ++period;
    if (++rounds > max_rounds) over_budget(max_rounds);
  }
  tortoise = sigma;
  hare = sigma;
  for (std::size_t k = 0; k < period; ++k) advance(hare);
  std::size_t transient = 0;
  while (tortoise != hare) {
    advance(tortoise);
    advance(hare);
    ++transient;
    if (transient > max_rounds) over_budget(max_rounds);
  }
  return summarize(g, sigma, transient, tortoise, period);
}

}  // namespace

ChipConfig step(const Graph& g, const ChipConfig& sigma) {
  check_config(g, sigma);
  ChipConfig out;
  std::vector<std::uint8_t> fired(g.num_vertices());
  step_into(g, sigma, out, fired);
  return out;
}

std::size_t CycleSummary::fire_count(Vertex v) const {
  std::size_t count = 0;
  for (std::size_t t = 0; t < period; ++t) count += fired(t, v);
  return count;
}

void check_summary(const CycleSummary& s, const Graph& g) {
  if (s.graph_fingerprint != g.fingerprint() || s.vertices != g.num_vertices()) {
    throw InputError("cycle summary was computed on a different graph");
  }
}

CycleSummary find_cycle(const Graph& g, const ChipConfig& sigma, const CycleOptions& options) {
  check_config(g, sigma);
  if (options.max_rounds < 1) throw InputError("max_rounds must be at least 1");
  return options.low_memory ? find_cycle_brent(g, sigma, options.max_rounds)
                            : find_cycle_map(g, sigma, options.max_rounds);
}

}  // namespace chipfire
