#ifndef SISNET_SPECTRAL_RADIUS_HPP
#define SISNET_SPECTRAL_RADIUS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/matrix.hpp"

namespace sisnet {

struct PowerIterationOptions {
  double tol = 1e-10;            // relative error on the returned radius
  std::size_t max_iter = 100000; // per strongly connected component
};

namespace detail {

// Strongly connected components of the pattern i -> j for each j in succ(i).
// Iterative Tarjan; returns a component id per node.
template <typename Succ>
std::vector<std::size_t> strong_components(std::size_t n, Succ &&succ, std::size_t &count) {
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<std::size_t> stack;
  std::vector<char> on_stack(n, 0);
  std::size_t next = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    struct Frame {
      std::size_t v;
      std::vector<std::size_t> out;
      std::size_t k;
    };
    std::vector<Frame> dfs;
    auto push = [&](std::size_t v) {
      index[v] = low[v] = next++;
      stack.push_back(v);
      on_stack[v] = 1;
      Frame f{v, {}, 0};
      succ(v, f.out);
      dfs.push_back(std::move(f));
    };
    push(root);
    while (!dfs.empty()) {
      Frame &f = dfs.back();
      if (f.k < f.out.size()) {
        const std::size_t w = f.out[f.k++];
        if (index[w] == unset) {
          push(w);
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      dfs.pop_back();
      if (!dfs.empty()) low[dfs.back().v] = std::min(low[dfs.back().v], low[v]);
    }
  }
  return comp;
}

// Dominant eigenvalue of an irreducible nonnegative operator C of size s
// (s >= 2) by power iteration on C + shift*I, which is primitive. The
// Collatz-Wielandt quotients min_i (Bx)_i/x_i <= rho(B) <= max_i (Bx)_i/x_i
// bracket the answer at every step and provide the stopping rule.
template <typename Apply>
double irreducible_radius(std::size_t s, double shift, Apply &&apply, const PowerIterationOptions &opt) {
  std::vector<double> x(s, 1.0), y(s);
  double estimate = 0.0;
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    apply(x, y);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, ymax = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      y[i] += shift * x[i];
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      ymax = std::max(ymax, y[i]);
    }
    estimate = 0.5 * (lo + hi) - shift;
    const double width = hi - lo;
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * hi;
    if (width <= opt.tol * std::max(hi - shift, 0.0) || width <= floor) return std::max(estimate, 0.0);
    for (std::size_t i = 0; i < s; ++i) x[i] = y[i] / ymax;
  }
  throw NumericError("power iteration did not converge after " + std::to_string(opt.max_iter) + " iterations",
                     estimate);
}

} // namespace detail

/// Spectral radius of a square nonnegative matrix.
///
/// The matrix is split into strongly connected components of its nonzero
/// pattern; rho(A) is the largest radius over the diagonal blocks. Each
/// irreducible block is handled by shifted power iteration from the all-ones
/// vector, so bipartite (periodic) blocks converge and nilpotent parts
/// contribute exactly zero.
inline double spectral_radius(const Matrix &a, const PowerIterationOptions &opt = {}) {
  if (!a.is_nonnegative()) throw ContractError("spectral_radius: matrix must be nonnegative");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;

  std::size_t ncomp = 0;
  const auto comp = detail::strong_components(
      n,
      [&](std::size_t i, std::vector<std::size_t> &out) {
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && a(i, j) > 0.0) out.push_back(j);
      },
      ncomp);

  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(i);

  double rho = 0.0;
  for (const auto &idx : members) {
    if (idx.size() == 1) {
      rho = std::max(rho, a(idx[0], idx[0]));
      continue;
    }
    const std::size_t s = idx.size();
    Matrix c(s);
    double scale = 0.0;
    for (std::size_t r = 0; r < s; ++r) {
      double row = 0.0;
      for (std::size_t q = 0; q < s; ++q) row += (c(r, q) = a(idx[r], idx[q]));
      scale = std::max(scale, row);
    }
    const double shift = std::max(scale, std::numeric_limits<double>::min());
    const double r = detail::irreducible_radius(
        s, shift,
        [&](const std::vector<double> &x, std::vector<double> &y) {
          for (std::size_t i = 0; i < s; ++i) {
            double acc = 0.0;
            const auto row = c.row(i);
            for (std::size_t j = 0; j < s; ++j) acc += row[j] * x[j];
            y[i] = acc;
          }
        },
        opt);
    rho = std::max(rho, r);
  }
  return rho;
}

/// Spectral radius of a graph's adjacency matrix, using its neighbor lists.
inline double spectral_radius(const Graph &g, const PowerIterationOptions &opt = {}) {
  const std::size_t n = g.size();
  std::size_t ncomp = 0;
  const auto comp = detail::strong_components(
      n,
      [&](std::size_t i, std::vector<std::size_t> &out) {
        for (node_t j : g.in_neighbors(i)) out.push_back(j);
      },
      ncomp);

  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(i);

  double rho = 0.0;
  std::vector<std::size_t> local(n);
  for (const auto &idx : members) {
    if (idx.size() == 1) continue; // no self-loops
    const std::size_t s = idx.size();
    for (std::size_t r = 0; r < s; ++r) local[idx[r]] = r;
    const std::size_t id = comp[idx[0]];
    const double r = detail::irreducible_radius(
        s, 1.0,
        [&](const std::vector<double> &x, std::vector<double> &y) {
          for (std::size_t r = 0; r < s; ++r) {
            double acc = 0.0;
            for (node_t j : g.in_neighbors(idx[r]))
              if (comp[j] == id) acc += x[local[j]];
            y[r] = acc;
          }
        },
        opt);
    rho = std::max(rho, r);
  }
  return rho;
}

/// ||M||_2 = sqrt(rho(M^T M)); M^T M is nonnegative whenever M is.
inline double norm_induced_2(const Matrix &m, const PowerIterationOptions &opt = {}) {
  return std::sqrt(spectral_radius(m.transpose() * m, opt));
}

inline double induced_norm(const Matrix &m, NormId id, const PowerIterationOptions &opt = {}) {
  switch (id) {
  case NormId::Induced1: return norm_induced_1(m);
  case NormId::Induced2: return norm_induced_2(m, opt);
  case NormId::InducedInf: return norm_induced_inf(m);
  }
  return 0.0;
}

} // namespace sisnet

#endif // SISNET_SPECTRAL_RADIUS_HPP
