#ifndef SISNET_GENERATORS_HPP
#define SISNET_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/random.hpp"

namespace sisnet {

using EdgeList = std::vector<std::pair<node_t, node_t>>;

namespace detail {

template <typename T>
void shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

inline void require_nodes(std::size_t n) {
  if (n == 0) throw ParameterError("n must be positive");
}

} // namespace detail

/// Star with node 0 as hub.
inline Graph gen_star(std::size_t n) {
  detail::require_nodes(n);
  EdgeList e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, static_cast<node_t>(i));
  return Graph::from_edges(n, false, e);
}

inline Graph gen_complete(std::size_t n) {
  detail::require_nodes(n);
  EdgeList e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(static_cast<node_t>(i), static_cast<node_t>(j));
  return Graph::from_edges(n, false, e);
}

/// Ring lattice: each node joined to its k/2 nearest neighbors on each side.
inline Graph gen_ring_lattice(std::size_t n, std::size_t k) {
  detail::require_nodes(n);
  if (k % 2 != 0 || k >= n) throw ParameterError("ring lattice needs even k < n");
  EdgeList e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= k / 2; ++j) e.emplace_back(static_cast<node_t>(u), static_cast<node_t>((u + j) % n));
  return Graph::from_edges(n, false, e);
}

/// Uniform-ish random k-regular simple graph.
///
/// Pairing model in the Steger-Wormald form: stubs are shuffled and paired,
/// clashing pairs (loops, duplicates) are returned to the pool and re-paired;
/// if the pool admits no valid pair the attempt restarts. At most 10000
/// restarts before giving up.
inline Graph gen_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
  detail::require_nodes(n);
  if (k >= n) throw ParameterError("regular graph needs k < n");
  if ((n * k) % 2 != 0) throw ParameterError("regular graph needs n*k even");
  if (k == 0) return Graph::empty(n);

  Rng rng(hash_key({seed, 0x5245ULL, n, k}));
  constexpr int max_restarts = 10000;

  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    std::set<std::pair<node_t, node_t>> edges;
    std::vector<node_t> stubs;
    stubs.reserve(n * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t v = 0; v < n; ++v) stubs.push_back(static_cast<node_t>(v));

    bool failed = false;
    while (!stubs.empty()) {
      detail::shuffle(stubs, rng);
      std::map<node_t, std::size_t> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        node_t a = stubs[i], b = stubs[i + 1];
        if (a > b) std::swap(a, b);
        if (a != b && !edges.count({a, b})) {
          edges.insert({a, b});
        } else {
          ++leftover[a];
          ++leftover[b];
        }
      }
      if (leftover.empty()) break;
      // Some pair among the leftover nodes must still be joinable.
      bool suitable = false;
      for (auto it = leftover.begin(); it != leftover.end() && !suitable; ++it)
        for (auto jt = std::next(it); jt != leftover.end(); ++jt)
          if (!edges.count({it->first, jt->first})) {
            suitable = true;
            break;
          }
      if (!suitable) {
        failed = true;
        break;
      }
      stubs.clear();
      for (auto [v, c] : leftover) stubs.insert(stubs.end(), c, v);
    }
    if (!failed) return Graph::from_edges(n, false, EdgeList(edges.begin(), edges.end()));
  }
  throw ParameterError("regular graph generation failed after 10000 restarts");
}

/// Watts-Strogatz small world: ring lattice of even degree k, then every
/// lattice edge (u, u+j) is rewired to (u, w) with probability p_rewire,
/// w uniform among nodes that are not u and not already adjacent to u.
inline Graph gen_watts_strogatz(std::size_t n, std::size_t k, double p_rewire, std::uint64_t seed) {
  detail::require_nodes(n);
  if (k % 2 != 0 || k >= n) throw ParameterError("Watts-Strogatz needs even k < n");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) throw ParameterError("rewiring probability must lie in [0,1]");

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::size_t> degree(n, 0);
  auto link = [&](std::size_t a, std::size_t b, char on) {
    adj[a][b] = adj[b][a] = on;
    if (on) {
      ++degree[a];
      ++degree[b];
    } else {
      --degree[a];
      --degree[b];
    }
  };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= k / 2; ++j) link(u, (u + j) % n, 1);

  Rng rng(hash_key({seed, 0x5753ULL, n, k}));
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t v = (u + j) % n;
      if (!(rng.uniform() < p_rewire)) continue;
      if (degree[u] >= n - 1) continue;
      std::size_t w;
      do {
        w = rng.below(n);
      } while (w == u || adj[u][w]);
      link(u, v, 0);
      link(u, w, 1);
    }
  }

  EdgeList e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (adj[a][b]) e.emplace_back(static_cast<node_t>(a), static_cast<node_t>(b));
  return Graph::from_edges(n, false, e);
}

/// Barabasi-Albert preferential attachment grown from an m-node clique.
/// Each arrival links to m distinct existing nodes chosen with probability
/// proportional to degree (uniformly while all degrees are zero).
inline Graph gen_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw ParameterError("Barabasi-Albert needs 1 <= m < n");

  EdgeList e;
  std::vector<node_t> endpoints; // node repeated once per incident edge
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      e.emplace_back(static_cast<node_t>(a), static_cast<node_t>(b));
      endpoints.push_back(static_cast<node_t>(a));
      endpoints.push_back(static_cast<node_t>(b));
    }

  Rng rng(hash_key({seed, 0x4241ULL, n, m}));
  std::vector<node_t> targets;
  std::vector<char> chosen(n, 0);
  for (std::size_t v = m; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const node_t t = endpoints.empty() ? static_cast<node_t>(rng.below(v))
                                         : endpoints[rng.below(endpoints.size())];
      if (chosen[t]) continue;
      chosen[t] = 1;
      targets.push_back(t);
    }
    for (node_t t : targets) {
      chosen[t] = 0;
      e.emplace_back(t, static_cast<node_t>(v));
      endpoints.push_back(t);
      endpoints.push_back(static_cast<node_t>(v));
    }
  }
  return Graph::from_edges(n, false, e);
}

/// Gilbert G(n, p): every unordered pair is an edge independently with
/// probability p. With directed = true every ordered pair is drawn instead.
inline Graph gen_gilbert(std::size_t n, double p, std::uint64_t seed, bool directed = false) {
  detail::require_nodes(n);
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("link probability must lie in [0,1]");
  Rng rng(hash_key({seed, 0x4749ULL, n, directed ? 1ULL : 0ULL}));
  EdgeList e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = directed ? 0 : a + 1; b < n; ++b) {
      if (a == b) continue;
      if (rng.uniform() < p) e.emplace_back(static_cast<node_t>(a), static_cast<node_t>(b));
    }
  return Graph::from_edges(n, directed, e);
}

} // namespace sisnet

#endif // SISNET_GENERATORS_HPP
