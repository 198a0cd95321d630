#ifndef SISNET_MONTECARLO_HPP
#define SISNET_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/jsr.hpp"
#include "sisnet/random.hpp"
#include "sisnet/switching.hpp"
#include "sisnet/threshold.hpp"

namespace sisnet {

/// Infection flags of every node at time index t.
struct SisState {
  std::vector<std::uint8_t> infected;
  std::uint64_t t = 0;

  std::size_t size() const noexcept { return infected.size(); }
  std::size_t infected_count() const noexcept {
    return static_cast<std::size_t>(std::count(infected.begin(), infected.end(), std::uint8_t{1}));
  }
};

struct McOptions {
  // When false (default) a node that recovers in a step cannot be reinfected
  // in that same step, matching the two disjoint terms of the mean-field map.
  bool allow_reinfection = false;
};

/// One synchronous stochastic SIS step.
///
/// Every (node, step) pair consumes a single uniform u hashed from
/// (seed, t, node). An infected node stays infected iff u < 1 - delta; a
/// susceptible node with m infected in-neighbors becomes infected iff
/// u < 1 - (1 - beta)^m. Sharing u across runs with different beta gives
/// common-random-number coupling.
inline SisState mc_step(const SisState &s, const Graph &g, const EpidemicParams &params, std::uint64_t seed,
                        const McOptions &opt = {}) {
  if (s.size() != g.size()) throw DimensionError("mc_step: state and graph sizes differ");
  SisState out{std::vector<std::uint8_t>(s.size(), 0), s.t + 1};
  const double escape_one = 1.0 - params.beta;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t m = 0;
    for (node_t j : g.in_neighbors(i)) m += s.infected[j];
    const double infect = m == 0 ? 0.0 : 1.0 - std::pow(escape_one, static_cast<double>(m));
    double threshold;
    if (s.infected[i])
      threshold = opt.allow_reinfection ? 1.0 - params.delta + params.delta * infect : 1.0 - params.delta;
    else
      threshold = infect;
    const double u = hashed_uniform({seed, stream::node_step, s.t, i});
    out.infected[i] = u < threshold ? 1 : 0;
  }
  return out;
}

struct EpidemicRun {
  std::vector<double> series;              // infected fraction at t = 0..T
  std::optional<std::uint64_t> died_out_at; // first t with nobody infected
  double final_fraction = 0.0;              // mean over the last max(10, T/10) steps
};

/// Number of trailing steps averaged into final_fraction.
inline std::size_t final_window(std::size_t horizon) noexcept {
  return std::min(horizon + 1, std::max<std::size_t>(10, horizon / 10));
}

/// Stochastic SIS epidemic under a switching policy. The initial infected
/// set is a uniform sample of round(init_fraction * n) nodes. Deterministic
/// given seed; the run stops early once nobody is infected and the series is
/// padded with zeros to length T + 1.
inline EpidemicRun run_epidemic(const SwitchingPolicy &policy, const EpidemicParams &params, double init_fraction,
                                std::size_t horizon, std::uint64_t seed, const McOptions &opt = {}) {
  if (!(init_fraction >= 0.0 && init_fraction <= 1.0)) throw ParameterError("init_fraction must lie in [0,1]");
  if (horizon < 1) throw ParameterError("horizon must be at least 1");
  const std::size_t n = policy.node_count();
  const auto k = static_cast<std::size_t>(std::llround(init_fraction * static_cast<double>(n)));

  SisState s{std::vector<std::uint8_t>(n, 0), 0};
  {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(hash_key({seed, stream::init}));
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(order[i], order[i + rng.below(n - i)]);
      s.infected[order[i]] = 1;
    }
  }

  EpidemicRun run;
  run.series.reserve(horizon + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::size_t count = k;
  run.series.push_back(static_cast<double>(count) * inv_n);
  if (count == 0) run.died_out_at = 0;

  while (s.t < horizon && !run.died_out_at) {
    const auto g = policy.matrix_at(seed, s.t);
    s = mc_step(s, *g, params, seed, opt);
    count = s.infected_count();
    run.series.push_back(static_cast<double>(count) * inv_n);
    if (count == 0) run.died_out_at = s.t;
  }
  run.series.resize(horizon + 1, 0.0);

  const std::size_t w = final_window(horizon);
  double acc = 0.0;
  for (std::size_t i = run.series.size() - w; i < run.series.size(); ++i) acc += run.series[i];
  run.final_fraction = acc / static_cast<double>(w);
  return run;
}

struct SweepConfig {
  std::size_t reps = 20;
  std::size_t horizon = 500;
  std::uint64_t seed = 0;
  double init_fraction = 0.2;
  std::size_t max_depth = 4;
  std::optional<NormId> norm;
  std::size_t gilbert_sample = 4; // draws standing in for a regenerating policy's set
  std::size_t threads = 0;        // 0 = hardware concurrency
  McOptions mc{};
};

struct SweepRow {
  double beta = 0.0;
  double delta = 0.0;
  double jsr_lower = 0.0;
  double jsr_upper = 0.0;
  double product_rho = 0.0;
  double dieout_prob = 0.0;
  double final_frac_mean = 0.0;
  double final_frac_std = 0.0;
  std::size_t reps = 0;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Inconclusive; // from the JSR columns
};

/// Per-replicate seed shared by every grid point (common random numbers).
inline std::uint64_t replicate_seed(std::uint64_t seed, std::size_t rep) noexcept {
  return hash_key({seed, stream::replicate, rep});
}

namespace detail {

// Runs f(i) for i in [0, count) on a small pool; first exception is rethrown.
template <typename F>
void parallel_for(std::size_t count, std::size_t threads, F &&f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Matrices standing for the policy in the spectral columns, in the order
// used by the product comparator.
inline std::vector<Graph> analysis_graphs(const SwitchingPolicy &policy, const SweepConfig &cfg) {
  switch (policy.kind()) {
  case PolicyKind::GilbertRegenerate: return sample_sequence(policy, std::max<std::size_t>(1, cfg.gilbert_sample), cfg.seed);
  case PolicyKind::FixedTrace: {
    std::vector<Graph> out;
    for (auto i : policy.indices()) out.push_back(*policy.graphs()[i]);
    return out;
  }
  default: {
    std::vector<Graph> out;
    for (const auto &g : policy.graphs()) out.push_back(*g);
    return out;
  }
  }
}

inline void fill_spectral_columns(SweepRow &row, const SwitchingPolicy &policy, const std::vector<Graph> &graphs,
                                  const SweepConfig &cfg) {
  const EpidemicParams params{row.beta, row.delta};
  row.product_rho = product_spectral_radius(graphs, params);
  JsrBracket b;
  if (policy.kind() == PolicyKind::Periodic) {
    std::vector<Matrix> period;
    for (const auto &g : graphs) period.push_back(system_matrix(g, params));
    b = jsr_bracket_periodic(period, graphs.size() * std::max<std::size_t>(1, cfg.max_depth),
                             cfg.norm.value_or(NormId::Induced1));
  } else {
    // FixedTrace and sampled sets: distinct members only matter for the JSR
    std::vector<Graph> distinct;
    for (const auto &g : graphs)
      if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
    b = jsr_bracket(build_system_set(distinct, params), cfg.max_depth, cfg.norm);
  }
  row.jsr_lower = b.lower;
  row.jsr_upper = b.upper;
  row.verdict = classify(b);
}

} // namespace detail

/// Parameter sweep: for each (beta, delta) grid point, the JSR columns, the
/// product comparator and die-out statistics over `reps` stochastic runs.
/// Rows come back in grid order regardless of scheduling.
inline std::vector<SweepRow> sweep(const SwitchingPolicy &policy, const std::vector<EpidemicParams> &grid,
                                   const SweepConfig &cfg) {
  if (grid.empty()) throw ParameterError("sweep grid is empty");
  if (cfg.reps < 1) throw ParameterError("reps must be at least 1");

  const auto graphs = detail::analysis_graphs(policy, cfg);
  std::vector<SweepRow> rows(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    rows[g].beta = grid[g].beta;
    rows[g].delta = grid[g].delta;
    rows[g].reps = cfg.reps;
    rows[g].horizon = cfg.horizon;
    rows[g].seed = cfg.seed;
    detail::fill_spectral_columns(rows[g], policy, graphs, cfg);
  }

  std::vector<EpidemicRun> runs(grid.size() * cfg.reps);
  detail::parallel_for(runs.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t g = idx / cfg.reps, r = idx % cfg.reps;
    runs[idx] = run_epidemic(policy, grid[g], cfg.init_fraction, cfg.horizon, replicate_seed(cfg.seed, r), cfg.mc);
  });

  for (std::size_t g = 0; g < grid.size(); ++g) {
    double died = 0.0, mean = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < cfg.reps; ++r) {
      const auto &run = runs[g * cfg.reps + r];
      if (run.died_out_at) died += 1.0;
      const double d = run.final_fraction - mean;
      mean += d / static_cast<double>(r + 1);
      m2 += d * (run.final_fraction - mean);
    }
    rows[g].dieout_prob = died / static_cast<double>(cfg.reps);
    rows[g].final_frac_mean = mean;
    rows[g].final_frac_std = cfg.reps > 1 ? std::sqrt(m2 / static_cast<double>(cfg.reps - 1)) : 0.0;
  }
  return rows;
}

} // namespace sisnet

#endif // SISNET_MONTECARLO_HPP
