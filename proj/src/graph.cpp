#include "chipfire/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "chipfire/random.hpp"

namespace chipfire {

namespace {

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

[[noreturn]] void fail(GraphErrorKind kind, const std::string& what) {
  throw GraphError(kind, what);
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<Vertex, Vertex>> edges) : n_(n) {
  if (n < 1) fail(GraphErrorKind::kInvalidParams, "graph needs at least one vertex");

  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      fail(GraphErrorKind::kVertexOutOfRange,
           "edge (" + std::to_string(a) + "," + std::to_string(b) +
               ") has a vertex outside 0.." + std::to_string(n - 1));
    }
    if (a == b) {
      fail(GraphErrorKind::kSelfLoop, "self-loop at vertex " + std::to_string(a));
    }
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    fail(GraphErrorKind::kDuplicateEdge, "duplicate edge (" + std::to_string(dup->u) +
                                             "," + std::to_string(dup->v) + ")");
  }

  degree_.assign(n, 0);
  for (const Edge& e : edges_) {
    ++degree_[e.u];
    ++degree_[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree_[v];
  adjacency_.resize(offsets_[n]);
  incidence_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so appending in edge order leaves each
  // neighbor list sorted.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[fill[e.u]] = e.v;
    incidence_[fill[e.u]++] = id;
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[fill[e.v]] = e.u;
    incidence_[fill[e.v]++] = id;
  }
  for (int v = 0; v < n; ++v) {
    const auto lo = offsets_[v];
    const auto hi = offsets_[v + 1];
    std::vector<std::pair<Vertex, EdgeId>> row;
    for (auto k = lo; k < hi; ++k) row.emplace_back(adjacency_[k], incidence_[k]);
    std::sort(row.begin(), row.end());
    for (auto k = lo; k < hi; ++k) std::tie(adjacency_[k], incidence_[k]) = row[k - lo];
  }

  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) {
    fail(GraphErrorKind::kDisconnected, "graph is disconnected: " + std::to_string(reached) +
                                            " of " + std::to_string(n) +
                                            " vertices reachable from vertex 0");
  }

  fingerprint_ = hash_combine(0xcbf29ce484222325ULL, static_cast<std::uint64_t>(n));
  for (const Edge& e : edges_) {
    fingerprint_ = hash_combine(fingerprint_, (static_cast<std::uint64_t>(e.u) << 32) |
                                                  static_cast<std::uint32_t>(e.v));
  }
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw InputError("vertex " + std::to_string(v) + " out of range for " +
                     std::to_string(n_) + " vertices");
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const {
  check_vertex(v);
  return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

EdgeId Graph::find_edge(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return edges_.size();
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::string Graph::to_text() const {
  std::ostringstream out;
  out << n_ << ' ' << edges_.size() << '\n';
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

std::vector<long long> parse_integers(std::string_view line, std::size_t line_no) {
  std::vector<long long> values;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos == line.size()) break;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    const std::size_t end = static_cast<std::size_t>(ptr - line.data());
    const bool at_boundary =
        end == line.size() || line[end] == ' ' || line[end] == '\t' || line[end] == '\r';
    if (ec != std::errc() || !at_boundary) {
      fail(GraphErrorKind::kMalformed,
           "line " + std::to_string(line_no) + ": expected integers, got '" + std::string(line) + "'");
    }
    values.push_back(value);
    pos = end;
  }
  return values;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<long long>>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    rows.emplace_back(line_no, parse_integers(line, line_no));
  }
  if (rows.empty()) fail(GraphErrorKind::kMalformed, "empty graph file");

  const auto& [header_line, header] = rows.front();
  if (header.size() != 2 || header[0] < 1 || header[1] < 0) {
    fail(GraphErrorKind::kMalformed, "line " + std::to_string(header_line) +
                                         ": header must be 'n m' with n >= 1, m >= 0");
  }
  const long long n = header[0];
  const auto m = static_cast<std::size_t>(header[1]);
  if (rows.size() - 1 != m) {
    fail(GraphErrorKind::kMalformed, "header declares " + std::to_string(m) + " edges but " +
                                         std::to_string(rows.size() - 1) + " edge lines follow");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& [ln, row] = rows[k];
    if (row.size() != 2) {
      fail(GraphErrorKind::kMalformed, "line " + std::to_string(ln) + ": expected 'u v'");
    }
    for (long long x : row) {
      if (x < 0 || x >= n) {
        fail(GraphErrorKind::kVertexOutOfRange, "line " + std::to_string(ln) + ": vertex " +
                                                    std::to_string(x) + " outside 0.." +
                                                    std::to_string(n - 1));
      }
    }
    edges.emplace_back(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

namespace {

void expect_params(std::string_view kind, std::span<const long long> params, std::size_t count) {
  if (params.size() != count) {
    fail(GraphErrorKind::kInvalidParams, std::string(kind) + " takes " + std::to_string(count) +
                                             " parameter(s), got " + std::to_string(params.size()));
  }
}

// Uniform labeled spanning tree on n >= 2 vertices via a random Pruefer code.
std::vector<std::pair<Vertex, Vertex>> random_tree(int n, Rng& rng) {
  if (n == 2) return {{0, 1}};
  std::vector<int> code(n - 2);
  for (int& c : code) c = static_cast<int>(rng.below(n));
  std::vector<int> remaining(n, 1);
  for (int c : code) ++remaining[c];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v) {
    if (remaining[v] == 1) leaves.push(v);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int c : code) {
    const int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, c);
    if (--remaining[c] == 1) leaves.push(c);
  }
  const int a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return edges;
}

}  // namespace

Graph generate(std::string_view kind, std::span<const long long> params) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (kind == "complete") {
    expect_params(kind, params, 1);
    const long long n = params[0];
    if (n < 1 || n > 4096) fail(GraphErrorKind::kInvalidParams, "complete needs 1 <= n <= 4096");
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph(static_cast<int>(n), std::move(edges));
  }
  if (kind == "complete_bipartite") {
    expect_params(kind, params, 2);
    const long long a = params[0];
    const long long b = params[1];
    if (a < 1 || b < 1 || a + b > 4096) {
      fail(GraphErrorKind::kInvalidParams, "complete_bipartite needs a, b >= 1");
    }
    for (int u = 0; u < a; ++u) {
      for (int v = 0; v < b; ++v) edges.emplace_back(u, static_cast<int>(a) + v);
    }
    return Graph(static_cast<int>(a + b), std::move(edges));
  }
  if (kind == "cycle") {
    expect_params(kind, params, 1);
    const long long n = params[0];
    if (n < 3 || n > 1'000'000) fail(GraphErrorKind::kInvalidParams, "cycle needs n >= 3");
    for (int v = 0; v < n; ++v) edges.emplace_back(v, static_cast<int>((v + 1) % n));
    return Graph(static_cast<int>(n), std::move(edges));
  }
  if (kind == "path") {
    expect_params(kind, params, 1);
    const long long n = params[0];
    if (n < 1 || n > 1'000'000) fail(GraphErrorKind::kInvalidParams, "path needs n >= 1");
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(static_cast<int>(n), std::move(edges));
  }
  if (kind == "random_connected") {
    expect_params(kind, params, 3);
    const long long n = params[0];
    const long long m = params[1];
    if (n < 2 || n > 4096) fail(GraphErrorKind::kInvalidParams, "random_connected needs 2 <= n <= 4096");
    if (m < n - 1 || m > n * (n - 1) / 2) {
      fail(GraphErrorKind::kInvalidParams, "random_connected needs n-1 <= m <= n(n-1)/2, got m=" +
                                               std::to_string(m));
    }
    Rng rng(static_cast<std::uint64_t>(params[2]));
    edges = random_tree(static_cast<int>(n), rng);
    std::set<std::pair<Vertex, Vertex>> present;
    for (auto [a, b] : edges) present.emplace(std::min(a, b), std::max(a, b));
    std::vector<std::pair<Vertex, Vertex>> absent;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!present.count({u, v})) absent.emplace_back(u, v);
      }
    }
    // partial Fisher-Yates: first (m - n + 1) entries become a uniform sample
    const auto extra = static_cast<std::size_t>(m - (n - 1));
    for (std::size_t k = 0; k < extra; ++k) {
      const auto pick = k + rng.below(absent.size() - k);
      std::swap(absent[k], absent[pick]);
      edges.push_back(absent[k]);
    }
    return Graph(static_cast<int>(n), std::move(edges));
  }
  fail(GraphErrorKind::kInvalidParams, "unknown graph family '" + std::string(kind) + "'");
}

namespace {

// Bit index of pair (i, j), i < j, in row-major upper-triangle order; the
// first pair is the most significant bit.
struct PairIndex {
  explicit PairIndex(int n) : n(n), index(n * n, -1) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        index[i * n + j] = index[j * n + i] = count++;
      }
    }
  }
  int bit(int i, int j) const { return count - 1 - index[i * n + j]; }

  int n;
  int count = 0;
  std::vector<int> index;
};

std::uint64_t code_under(const std::vector<std::pair<Vertex, Vertex>>& edges,
                         const std::vector<int>& perm, const PairIndex& pairs) {
  std::uint64_t code = 0;
  for (auto [a, b] : edges) code |= std::uint64_t{1} << pairs.bit(perm[a], perm[b]);
  return code;
}

std::uint64_t canonical_of(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                           const PairIndex& pairs) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = UINT64_MAX;
  do {
    best = std::min(best, code_under(edges, perm, pairs));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<std::pair<Vertex, Vertex>> edges_of_code(std::uint64_t code, const PairIndex& pairs) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < pairs.n; ++i) {
    for (int j = i + 1; j < pairs.n; ++j) {
      if (code >> pairs.bit(i, j) & 1) edges.emplace_back(i, j);
    }
  }
  return edges;
}

bool connected_mask(int n, const std::vector<std::uint32_t>& adj_mask) {
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if (frontier >> v & 1) next |= adj_mask[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (std::uint32_t{1} << n) - 1;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  if (g.num_vertices() > 11) throw InputError("canonical_code supports at most 11 vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
  return canonical_of(g.num_vertices(), edges, PairIndex(g.num_vertices()));
}

void for_each_connected(int n, bool dedup, const std::function<void(const Graph&)>& visit,
                        int max_n) {
  if (n < 2 || n > max_n) {
    throw InputError("enumeration needs 2 <= n <= " + std::to_string(max_n) + ", got " +
                     std::to_string(n));
  }
  if (n > 8) throw InputError("exhaustive enumeration is limited to 8 vertices");
  const PairIndex pairs(n);
  std::vector<std::pair<Vertex, Vertex>> all_pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all_pairs.emplace_back(i, j);
  }
  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t subsets = std::uint64_t{1} << all_pairs.size();
  std::vector<std::uint32_t> adj_mask(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    if (std::popcount(mask) < n - 1) continue;
    std::fill(adj_mask.begin(), adj_mask.end(), 0);
    edges.clear();
    for (std::size_t k = 0; k < all_pairs.size(); ++k) {
      if (mask >> k & 1) {
        auto [a, b] = all_pairs[k];
        adj_mask[a] |= 1u << b;
        adj_mask[b] |= 1u << a;
        edges.emplace_back(a, b);
      }
    }
    if (!connected_mask(n, adj_mask)) continue;
    if (!dedup) {
      visit(Graph(n, edges));
      continue;
    }
    const std::uint64_t code = canonical_of(n, edges, pairs);
    if (seen.insert(code).second) visit(Graph(n, edges_of_code(code, pairs)));
  }
}

std::vector<Graph> enumerate_connected(int n, bool dedup, int max_n) {
  std::vector<Graph> out;
  for_each_connected(n, dedup, [&](const Graph& g) { out.push_back(g); }, max_n);
  return out;
}

}  // namespace chipfire
