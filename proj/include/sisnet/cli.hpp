#ifndef SISNET_CLI_HPP
#define SISNET_CLI_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sisnet/config.hpp"
#include "sisnet/csv.hpp"
#include "sisnet/generators.hpp"
#include "sisnet/jsr.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/montecarlo.hpp"
#include "sisnet/spectral_radius.hpp"
#include "sisnet/switching.hpp"
#include "sisnet/threshold.hpp"

namespace sisnet::cli {

/// Built-in desk-scale scenarios. Names: star-dieout, star-spread, ws-sweep, star-empty,
/// ba-sweep, regular-sweep, gilbert-bound.
inline ExperimentConfig preset(const std::string &name) {
  ExperimentConfig c;
  c.seed = 1;
  c.delta = 0.2;
  auto star3 = GeneratorSpec{"star", 3};
  if (name == "star-dieout" || name == "star-spread") {
    c.generators = {star3};
    c.beta = name == "star-dieout" ? 0.1 : 0.6;
    c.p0 = {0.2, 0.2, 0.2};
    c.mode = "meanfield";
    c.horizon = 500;
    return c;
  }
  if (name == "ws-sweep") {
    for (std::size_t k : {4, 8, 12, 16}) c.generators.push_back({"ws", 100, k, 0, 0.0, 0.5, 100 + k});
    c.beta_range = BetaRange{0.0005, 0.1, 12};
    c.horizon = 200;
    c.reps = 10;
    return c;
  }
  if (name == "star-empty") {
    c.generators = {star3, GeneratorSpec{"empty", 3}};
    c.beta_range = BetaRange{0.05, 0.4, 15};
    c.horizon = 200;
    c.reps = 10;
    return c;
  }
  if (name == "ba-sweep") {
    for (std::size_t m : {2, 4, 6, 8}) c.generators.push_back({"ba", 100, 0, m, 0.0, 0.0, 200 + m});
    c.beta_range = BetaRange{0.0004, 0.05, 12};
    c.horizon = 200;
    c.reps = 10;
    return c;
  }
  if (name == "regular-sweep") {
    for (std::uint64_t s = 1; s <= 4; ++s) c.generators.push_back({"regular", 200, 8, 0, 0.0, 0.0, s});
    c.beta_range = BetaRange{0.005, 0.1, 20};
    c.horizon = 500;
    c.reps = 20;
    return c;
  }
  if (name == "gilbert-bound") {
    // (n - 1) p matches the 1000-node, P = 0.004 setting
    c.policy = PolicyKind::GilbertRegenerate;
    c.gilbert_n = 200;
    c.gilbert_p = 0.004 * 999.0 / 199.0;
    c.pairs = {{0.01, 0.95}, {0.01, 0.54}, {0.01, 0.04}, {0.3, 0.7}, {0.5, 0.5}, {0.8, 0.2}, {0.99, 0.01}};
    c.delta = 0.2;
    c.horizon = 200;
    c.reps = 10;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

struct GenArgs {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  double p = 0.0;
  double rewire = 0.0;
  std::uint64_t seed = 0;
};

/// Writes the generated graph as an edge list to `file` and a one-line
/// summary (n, m, rho) to `log`.
inline Graph cmd_gen(const GenArgs &a, std::ostream &file, std::ostream &log) {
  const Graph g = generate(GeneratorSpec{a.name, a.n, a.k, a.m, a.p, a.rewire, a.seed});
  write_edge_list(file, g);
  log << "n=" << g.size() << " m=" << g.edge_count() << " rho=" << format_number(spectral_radius(g)) << '\n';
  return g;
}

/// Threshold analysis of the configured policy at the configured beta.
inline nlohmann::json cmd_threshold(const ExperimentConfig &c) {
  validate(c);
  if (!c.beta) throw ConfigError("threshold needs epidemic.beta");
  const EpidemicParams params{*c.beta, c.delta};

  if (c.policy == PolicyKind::GilbertRegenerate) {
    const auto b = gilbert_spread_bound(c.gilbert_n, c.gilbert_p, params);
    ThresholdVerdict v{Verdict::Inconclusive, "gilbert_bound", b.raw, 0.0, b.raw, 1, NormId::Induced1};
    auto j = to_json(v);
    j["spread_probability_bound"] = b.clamped;
    return j;
  }

  const auto graphs = build_graphs(c);
  if (graphs.size() == 1) {
    auto j = to_json(threshold_static(graphs.front(), params));
    j["product_rho"] = product_spectral_radius(graphs, params);
    return j;
  }
  if (c.policy == PolicyKind::Periodic) {
    auto v = threshold_periodic(graphs, params);
    std::vector<Matrix> period;
    for (const auto &g : graphs) period.push_back(system_matrix(g, params));
    const auto b = jsr_bracket_periodic(period, graphs.size() * c.max_depth, c.norm.value_or(NormId::Induced1));
    v.lower = b.lower;
    v.upper = b.upper;
    v.depth = b.depth;
    v.norm = b.norm;
    auto j = to_json(v);
    j["product_rho"] = v.value;
    return j;
  }
  std::vector<Graph> set = graphs;
  if (c.policy == PolicyKind::FixedTrace) {
    set.clear();
    for (auto i : c.indices)
      if (std::find(set.begin(), set.end(), graphs.at(i)) == set.end()) set.push_back(graphs.at(i));
  }
  auto j = to_json(threshold_dynamic(set, params, c.max_depth, c.norm));
  j["product_rho"] = product_spectral_radius(graphs, params);
  return j;
}

struct SimulateSummary {
  double final_sup_norm = 0.0;           // meanfield
  std::vector<std::optional<std::uint64_t>> died_out_at; // mc, per run
};

inline SimulateSummary cmd_simulate(const ExperimentConfig &c, std::ostream &csv, std::ostream &log) {
  validate(c);
  if (!c.beta) throw ConfigError("simulate needs epidemic.beta");
  const EpidemicParams params{*c.beta, c.delta};
  const auto policy = build_policy(c);
  SimulateSummary summary;

  if (c.mode == "meanfield") {
    ProbabilityState p0 = c.p0.empty() ? ProbabilityState::uniform(policy.node_count(), c.init_fraction)
                                       : ProbabilityState{c.p0, 0};
    const auto traj = simulate_trajectory(policy, p0, params, c.horizon, *c.seed);
    write_trajectory_csv(csv, traj);
    summary.final_sup_norm = traj.back().sup_norm();
    log << "final sup-norm " << format_number(summary.final_sup_norm) << '\n';
    return summary;
  }

  const McOptions opt{c.allow_reinfection};
  std::vector<EpidemicRun> runs(c.reps);
  detail::parallel_for(c.reps, 0, [&](std::size_t r) {
    runs[r] = run_epidemic(policy, params, c.init_fraction, c.horizon, replicate_seed(*c.seed, r), opt);
  });
  write_runs_csv(csv, runs);
  std::size_t died = 0;
  for (const auto &r : runs) {
    summary.died_out_at.push_back(r.died_out_at);
    died += r.died_out_at ? 1 : 0;
  }
  log << died << "/" << runs.size() << " runs died out by T=" << c.horizon << '\n';
  return summary;
}

inline std::vector<SweepRow> cmd_sweep(const ExperimentConfig &c, std::ostream &csv) {
  validate(c);
  if (c.beta) throw ConfigError("sweep needs epidemic.beta_range or epidemic.pairs");
  SweepConfig sc;
  sc.reps = c.reps;
  sc.horizon = c.horizon;
  sc.seed = *c.seed;
  sc.init_fraction = c.init_fraction;
  sc.max_depth = c.max_depth;
  sc.norm = c.norm;
  sc.mc.allow_reinfection = c.allow_reinfection;
  const auto rows = sweep(build_policy(c), build_grid(c), sc);
  write_sweep_csv(csv, rows);
  return rows;
}

struct AppendixArgs {
  std::size_t n = 10;
  double p = 0.3;
  double beta = 0.1;
  double delta = 0.2;
  std::size_t k_max = 3;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  GilbertSampling mode = GilbertSampling::IidOffDiagonal;
};

/// Compares the closed-form expected column sum against Monte Carlo for
/// k = 1..k_max; a row passes when they agree within 3 standard errors
/// (plus 1e-12 relative slack for rounding when the variance is zero).
inline bool cmd_verify_appendix(const AppendixArgs &a, std::ostream &out) {
  if (a.trials < 1000) throw ConfigError("verify-appendix needs at least 1000 trials");
  if (a.k_max < 1) throw ConfigError("k_max must be at least 1");
  const EpidemicParams params{a.beta, a.delta};
  bool all = true;
  out << "k,formula,mc_mean,std_err,pass\n";
  for (std::size_t k = 1; k <= a.k_max; ++k) {
    const double f = expected_column_sum(a.n, a.p, params, k);
    const auto est = mc_column_sum(a.n, a.p, params, k, a.trials, a.seed, a.mode);
    const bool pass = std::abs(est.mean - f) <= 3.0 * est.std_err + 1e-12 * std::abs(f);
    all = all && pass;
    out << k << ',' << format_number(f) << ',' << format_number(est.mean) << ',' << format_number(est.std_err) << ','
        << (pass ? "pass" : "FAIL") << '\n';
  }
  return all;
}

} // namespace sisnet::cli

#endif // SISNET_CLI_HPP
