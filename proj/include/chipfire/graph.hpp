#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chipfire/errors.hpp"

namespace chipfire {

using Vertex = int;
using EdgeId = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

enum class GraphErrorKind {
  kMalformed,
  kDuplicateEdge,
  kSelfLoop,
  kDisconnected,
  kVertexOutOfRange,
  kInvalidParams,
};

class GraphError : public InputError {
 public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : InputError(what), kind_(kind) {}

  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

/// Immutable simple connected undirected graph on vertices 0..n-1.
///
/// Edges are kept sorted lexicographically, so an EdgeId is stable for a
/// given edge set regardless of the order it was supplied in. Neighbor
/// lists are sorted and `incident_edges(v)[k]` is the edge to
/// `neighbors(v)[k]`.
class Graph {
 public:
  /// Validates and builds; throws GraphError on self-loops, duplicates,
  /// out-of-range endpoints or a disconnected edge set.
  Graph(int n, std::vector<std::pair<Vertex, Vertex>> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  std::span<const Vertex> neighbors(Vertex v) const;
  std::span<const EdgeId> incident_edges(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  const std::vector<int>& degrees() const { return degree_; }

  /// Edge joining u and v, or num_edges() if they are not adjacent.
  EdgeId find_edge(Vertex u, Vertex v) const;

  /// Stable 64-bit identity of (n, edge set); used to tie analysis
  /// results to the graph they were computed on.
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// Serializes in the graph file format ("n m" header, one edge per line).
  std::string to_text() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  void check_vertex(Vertex v) const;

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> incidence_;
  std::vector<int> degree_;
  std::uint64_t fingerprint_;
};

Graph parse_graph(std::string_view text);

/// Named families: complete [n], complete_bipartite [a, b], cycle [n],
/// path [n], random_connected [n, m, seed].
Graph generate(std::string_view kind, std::span<const long long> params);

inline constexpr int kDefaultEnumerationLimit = 6;

/// Canonical adjacency code: the lexicographically smallest upper-triangle
/// bit string over all vertex relabelings. Equal iff isomorphic.
std::uint64_t canonical_code(const Graph& g);

/// Visits every connected simple graph on n labeled vertices, or one
/// representative (in canonical labeling) per isomorphism class when dedup
/// is set. Throws InputError if n is outside [2, max_n].
void for_each_connected(int n, bool dedup,
                        const std::function<void(const Graph&)>& visit,
                        int max_n = kDefaultEnumerationLimit);

std::vector<Graph> enumerate_connected(int n, bool dedup,
                                       int max_n = kDefaultEnumerationLimit);

}  // namespace chipfire
