#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "chipfire/engine.hpp"

namespace chipfire {

/// Exact rational in lowest terms.
using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Cyclic fire/wait word of one vertex over a period, e.g. "1000".
struct FiringSequence {
  std::string word;

  bool fires_at(std::size_t t) const { return word[t % word.size()] == '1'; }
  /// True iff the cyclic word has `a` followed by `b` somewhere.
  bool has_factor(char a, char b) const;
};

FiringSequence firing_sequence(const CycleSummary& s, Vertex v);

/// Both "00" and "11" occur as cyclic factors.
bool is_clumpy(const FiringSequence& w);

/// Between any two consecutive firings of v (wrap-around included), every
/// neighbor fires at least once in the half-open round interval (a, b].
/// A vertex that never fires is vacuously dense.
bool is_dense(const CycleSummary& s, const Graph& g, Vertex v);

/// Fraction of (vertex, round) pairs on the cycle in which the vertex fires.
Rational activity(const CycleSummary& s);

/// sigma_c(v) = 2 deg(v) - 1 - sigma(v). Throws InputError if some vertex
/// holds 2 deg(v) or more chips.
ChipConfig complement(const Graph& g, const ChipConfig& sigma);
std::optional<ChipConfig> try_complement(const Graph& g, const ChipConfig& sigma);

std::vector<Vertex> abundant_vertices(const Graph& g, const ChipConfig& sigma);

/// Period at least 3, no vertex fires on two consecutive rounds, and every
/// firing sequence is dense.
bool is_compliant(const CycleSummary& s, const Graph& g);

}  // namespace chipfire
