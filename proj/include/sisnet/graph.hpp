#ifndef SISNET_GRAPH_HPP
#define SISNET_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/matrix.hpp"

namespace sisnet {

using node_t = std::uint32_t;

/// Infection probability beta and recovery probability delta, both in [0,1].
struct EpidemicParams {
  double beta = 0.0;
  double delta = 0.0;

  EpidemicParams() = default;
  EpidemicParams(double b, double d) : beta(b), delta(d) { validate(); }

  void validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0,1]");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in [0,1]");
  }

  friend bool operator==(const EpidemicParams &, const EpidemicParams &) = default;
};

/// Unweighted simple graph on nodes 0..n-1.
///
/// Orientation: adjacent(i, j) means node j can infect node i, so the
/// adjacency matrix acts on infection-probability vectors by a plain
/// matrix-vector product. An undirected graph stores both orientations.
/// Immutable after construction.
class Graph {
public:
  Graph() = default;

  /// Builds a graph from (source, target) pairs: `source` infects `target`.
  /// Undirected graphs add both orientations. Duplicates collapse.
  static Graph from_edges(std::size_t n, bool directed,
                          const std::vector<std::pair<node_t, node_t>> &edges) {
    if (n == 0) throw ParameterError("graph must have at least one node");
    Graph g(n, directed);
    for (const auto &[u, v] : edges) {
      if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
      if (u == v) throw ParameterError("self-loop at node " + std::to_string(u));
      g.bits_[static_cast<std::size_t>(v) * n + u] = 1;
      if (!directed) g.bits_[static_cast<std::size_t>(u) * n + v] = 1;
    }
    g.finalize();
    return g;
  }

  static Graph empty(std::size_t n) { return from_edges(n, false, {}); }

  std::size_t size() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }

  /// True iff node j can infect node i.
  bool adjacent(std::size_t i, std::size_t j) const noexcept { return bits_[i * n_ + j] != 0; }

  /// Nodes that can infect node i, ascending.
  const std::vector<node_t> &in_neighbors(std::size_t i) const noexcept { return in_[i]; }

  std::size_t in_degree(std::size_t i) const noexcept { return in_[i].size(); }

  std::size_t max_in_degree() const noexcept {
    std::size_t d = 0;
    for (const auto &l : in_) d = std::max(d, l.size());
    return d;
  }

  /// Undirected: number of unordered pairs. Directed: number of arcs.
  std::size_t edge_count() const noexcept { return directed_ ? arcs_ : arcs_ / 2; }

  /// Edges as (source, target); undirected graphs list each pair once with source < target.
  std::vector<std::pair<node_t, node_t>> edges() const {
    std::vector<std::pair<node_t, node_t>> out;
    out.reserve(edge_count());
    for (std::size_t src = 0; src < n_; ++src)
      for (std::size_t dst = 0; dst < n_; ++dst) {
        if (!adjacent(dst, src)) continue;
        if (!directed_ && dst < src) continue;
        out.emplace_back(static_cast<node_t>(src), static_cast<node_t>(dst));
      }
    return out;
  }

  Matrix adjacency() const {
    Matrix a(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (node_t j : in_[i]) a(i, j) = 1.0;
    return a;
  }

  /// Same graph with node `perm[i]` playing the role of node `i`.
  Graph relabeled(const std::vector<node_t> &perm) const {
    if (perm.size() != n_) throw DimensionError("permutation size mismatch");
    std::vector<std::pair<node_t, node_t>> e;
    for (auto [u, v] : edges()) e.emplace_back(perm[u], perm[v]);
    return from_edges(n_, directed_, e);
  }

  friend bool operator==(const Graph &a, const Graph &b) noexcept {
    return a.n_ == b.n_ && a.directed_ == b.directed_ && a.bits_ == b.bits_;
  }

private:
  Graph(std::size_t n, bool directed) : n_(n), directed_(directed), bits_(n * n, 0), in_(n) {}

  void finalize() {
    arcs_ = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      in_[i].clear();
      for (std::size_t j = 0; j < n_; ++j)
        if (bits_[i * n_ + j]) in_[i].push_back(static_cast<node_t>(j));
      arcs_ += in_[i].size();
    }
  }

  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<std::uint8_t> bits_;
  std::vector<std::vector<node_t>> in_;
  std::size_t arcs_ = 0;
};

/// Parses the edge-list text format:
///   n m d        (node count, edge count, 0 = undirected / 1 = directed)
///   u v          (m lines, 0-based ids; u infects v)
/// Blank lines are skipped. Duplicate edges collapse silently.
inline Graph load_edge_list(std::istream &in) {
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](std::string &out) {
    while (std::getline(in, out)) {
      ++lineno;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line(line)) throw ParseError(lineno + 1, "missing header 'n m d'");
  long long n = -1, m = -1, d = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m >> d) || (hs >> extra))
      throw ParseError(lineno, "malformed header '" + line + "', expected 'n m d'");
    if (n <= 0 || m < 0 || (d != 0 && d != 1))
      throw ParseError(lineno, "invalid header values '" + line + "'");
  }

  std::vector<std::pair<node_t, node_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!next_line(line)) throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, got " + std::to_string(e));
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) throw ParseError(lineno, "malformed edge line '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "node id out of range in '" + line + "'");
    if (u == v) throw ParseError(lineno, "self-loop in '" + line + "'");
    edges.emplace_back(static_cast<node_t>(u), static_cast<node_t>(v));
  }
  if (next_line(line)) throw ParseError(lineno, "trailing content after " + std::to_string(m) + " edges");
  return Graph::from_edges(static_cast<std::size_t>(n), d == 1, edges);
}

inline Graph load_edge_list(const std::string &text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

inline void write_edge_list(std::ostream &out, const Graph &g) {
  const auto e = g.edges();
  out << g.size() << ' ' << e.size() << ' ' << (g.directed() ? 1 : 0) << '\n';
  for (auto [u, v] : e) out << u << ' ' << v << '\n';
}

} // namespace sisnet

#endif // SISNET_GRAPH_HPP
