#ifndef SISNET_MEANFIELD_HPP
#define SISNET_MEANFIELD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/matrix.hpp"
#include "sisnet/switching.hpp"

namespace sisnet {

/// Per-node infection probabilities at time index t.
struct ProbabilityState {
  std::vector<double> p;
  std::uint64_t t = 0;

  static ProbabilityState uniform(std::size_t n, double value, std::uint64_t t = 0) {
    return {std::vector<double>(n, value), t};
  }

  std::size_t size() const noexcept { return p.size(); }

  double sup_norm() const noexcept { return max_abs(p); }
};

using Trajectory = std::vector<ProbabilityState>;

namespace detail {
inline constexpr double probability_slack = 1e-12;

inline void require_probabilities(std::span<const double> p, const char *who) {
  for (double v : p)
    if (!(v >= -probability_slack && v <= 1.0 + probability_slack))
      throw ParameterError(std::string(who) + ": probabilities must lie in [0,1]");
}
} // namespace detail

/// One step of the independence-assumption SIS map:
///   p_i' = 1 - p_i*delta - (1 - p_i) * prod_{j in N_i} (1 - p_j*beta)
/// where N_i are the nodes that can infect i. No clamping is applied; the
/// map sends [0,1]^n into itself, and a result outside [0,1] (beyond
/// rounding slack) throws NumericError as an internal consistency failure.
inline ProbabilityState step_nonlinear(const ProbabilityState &s, const Graph &g, const EpidemicParams &params) {
  if (s.size() != g.size()) throw DimensionError("step_nonlinear: state and graph sizes differ");
  ProbabilityState out{std::vector<double>(s.size()), s.t + 1};
  for (std::size_t i = 0; i < s.size(); ++i) {
    double escape = 1.0;
    for (node_t j : g.in_neighbors(i)) escape *= 1.0 - s.p[j] * params.beta;
    const double pi = s.p[i];
    const double v = 1.0 - pi * params.delta - (1.0 - pi) * escape;
    if (!(v >= -detail::probability_slack && v <= 1.0 + detail::probability_slack))
      throw NumericError("step_nonlinear left [0,1]", v);
    out.p[i] = v;
  }
  return out;
}

/// Iterates the nonlinear map for T steps with matrices drawn from `policy`
/// under master seed `seed`; returns T + 1 states starting with p0.
inline Trajectory simulate_trajectory(const SwitchingPolicy &policy, const ProbabilityState &p0,
                                      const EpidemicParams &params, std::size_t horizon, std::uint64_t seed) {
  if (p0.size() != policy.node_count()) throw DimensionError("simulate_trajectory: p0 and policy sizes differ");
  detail::require_probabilities(p0.p, "simulate_trajectory");
  Trajectory traj;
  traj.reserve(horizon + 1);
  traj.push_back(p0);
  for (std::size_t k = 0; k < horizon; ++k) {
    const auto g = policy.matrix_at(seed, traj.back().t);
    traj.push_back(step_nonlinear(traj.back(), *g, params));
  }
  return traj;
}

struct EquilibriumOptions {
  double tol = 1e-10;            // sup-norm residual |F(p) - p|
  std::size_t max_iter = 1000000;
  double damping = 1.0;          // p <- (1-w) p + w F(p); 1 = plain iteration
};

struct EquilibriumResult {
  ProbabilityState state;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Fixed point of the nonlinear map on a static graph by (optionally damped)
/// fixed-point iteration from p0. A non-converged result still carries the
/// last iterate and its residual.
inline EquilibriumResult solve_equilibrium(const Graph &g, const EpidemicParams &params, const ProbabilityState &p0,
                                           const EquilibriumOptions &opt = {}) {
  if (p0.size() != g.size()) throw DimensionError("solve_equilibrium: p0 and graph sizes differ");
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) throw ParameterError("damping must lie in (0,1]");
  detail::require_probabilities(p0.p, "solve_equilibrium");

  EquilibriumResult r{p0, 0, 0.0, false};
  r.state.t = 0;
  for (;;) {
    auto next = step_nonlinear(r.state, g, params);
    double res = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) res = std::max(res, std::abs(next.p[i] - r.state.p[i]));
    r.residual = res;
    if (res <= opt.tol) {
      r.converged = true;
      return r;
    }
    if (r.iterations >= opt.max_iter) return r;
    for (std::size_t i = 0; i < next.size(); ++i)
      r.state.p[i] = (1.0 - opt.damping) * r.state.p[i] + opt.damping * next.p[i];
    ++r.iterations;
  }
}

inline EquilibriumResult solve_equilibrium(const Graph &g, const EpidemicParams &params,
                                           const EquilibriumOptions &opt = {}) {
  return solve_equilibrium(g, params, ProbabilityState::uniform(g.size(), 0.5), opt);
}

/// True iff p is a fixed point (within tol, sup-norm) for every graph in the set.
inline bool check_equilibrium(const ProbabilityState &p, std::span<const Graph> set, const EpidemicParams &params,
                              double tol = 1e-9) {
  for (const auto &g : set) {
    const auto next = step_nonlinear(p, g, params);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (std::abs(next.p[i] - p.p[i]) > tol) return false;
  }
  return true;
}

/// M = (1 - delta) I + beta A, the linearization of the map at the origin.
inline Matrix system_matrix(const Graph &g, const EpidemicParams &params) {
  Matrix m = Matrix::identity(g.size(), 1.0 - params.delta);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (node_t j : g.in_neighbors(i)) m(i, j) += params.beta;
  return m;
}

/// M p. The linear model is not confined to [0,1]; entries may exceed 1.
inline std::vector<double> step_linear(std::span<const double> p, const Matrix &m) {
  if (p.size() != m.size()) throw DimensionError("step_linear: dimension mismatch");
  return multiply(m, p);
}

} // namespace sisnet

#endif // SISNET_MEANFIELD_HPP
