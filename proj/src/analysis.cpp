#include "chipfire/analysis.hpp"

namespace chipfire {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool FiringSequence::has_factor(char a, char b) const {
  const std::size_t n = word.size();
  for (std::size_t t = 0; t < n; ++t) {
    if (word[t] == a && word[(t + 1) % n] == b) return true;
  }
  return false;
}

FiringSequence firing_sequence(const CycleSummary& s, Vertex v) {
  if (v < 0 || v >= s.vertices) throw InputError("vertex " + std::to_string(v) + " out of range");
  FiringSequence seq;
  seq.word.reserve(s.period);
  for (std::size_t t = 0; t < s.period; ++t) seq.word.push_back(s.fired(t, v) ? '1' : '0');
  return seq;
}

bool is_clumpy(const FiringSequence& w) {
  return !w.word.empty() && w.has_factor('0', '0') && w.has_factor('1', '1');
}

bool is_dense(const CycleSummary& s, const Graph& g, Vertex v) {
  check_summary(s, g);
  const auto neighbors = g.neighbors(v);
  std::vector<std::size_t> rounds;
  for (std::size_t t = 0; t < s.period; ++t) {
    if (s.fired(t, v)) rounds.push_back(t);
  }
  if (rounds.empty()) return true;
  // Consecutive pairs over the periodic extension; the last pair wraps to
  // the first firing of the next period.
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    const std::size_t a = rounds[k];
    const std::size_t b = k + 1 < rounds.size() ? rounds[k + 1] : rounds[0] + s.period;
    for (Vertex u : neighbors) {
      bool found = false;
      for (std::size_t t = a + 1; t <= b && !found; ++t) found = s.fired(t, u);
      if (!found) return false;
    }
  }
  return true;
}

Rational activity(const CycleSummary& s) {
  std::int64_t firings = 0;
  for (std::uint8_t f : s.firing) firings += f;
  return Rational(firings, static_cast<std::int64_t>(s.period) * s.vertices);
}

std::optional<ChipConfig> try_complement(const Graph& g, const ChipConfig& sigma) {
  check_config(g, sigma);
  std::vector<Chips> out(sigma.size());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const Chips top = 2 * static_cast<Chips>(g.degree(v));
    if (sigma[v] >= top) return std::nullopt;
    out[v] = top - 1 - sigma[v];
  }
  return ChipConfig(std::move(out));
}

ChipConfig complement(const Graph& g, const ChipConfig& sigma) {
  auto c = try_complement(g, sigma);
  if (!c) {
    const auto abundant = abundant_vertices(g, sigma);
    throw InputError("complement undefined: vertex " + std::to_string(abundant.front()) +
                     " holds at least 2deg(v) chips");
  }
  return *std::move(c);
}

std::vector<Vertex> abundant_vertices(const Graph& g, const ChipConfig& sigma) {
  check_config(g, sigma);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (sigma[v] >= 2 * static_cast<Chips>(g.degree(v))) out.push_back(v);
  }
  return out;
}

bool is_compliant(const CycleSummary& s, const Graph& g) {
  check_summary(s, g);
  if (s.period < 3) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (firing_sequence(s, v).has_factor('1', '1')) return false;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!is_dense(s, g, v)) return false;
  }
  return true;
}

}  // namespace chipfire
