// sisnet command-line front end: gen, threshold, simulate, sweep, verify-appendix.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "sisnet/cli.hpp"

namespace {

using namespace sisnet;

struct Overrides {
  std::string config_path;
  std::string preset_name;
  std::optional<double> beta, delta, init_fraction, beta_min, beta_max;
  std::optional<std::size_t> beta_count, horizon, reps, max_depth;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> norm, mode, out;
  bool reinfection = false;
};

void add_config_options(CLI::App *cmd, Overrides &o) {
  auto *src = cmd->add_option_group("source", "experiment source");
  src->add_option("-c,--config", o.config_path, "experiment config (JSON)");
  src->add_option("--preset", o.preset_name, "built-in scenario: star-dieout star-spread ws-sweep star-empty ba-sweep regular-sweep gilbert-bound");
  src->require_option(1);
  cmd->add_option("--beta", o.beta, "infection probability");
  cmd->add_option("--delta", o.delta, "recovery probability");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--max-depth", o.max_depth, "JSR product depth");
  cmd->add_option("--norm", o.norm, "induced-1 | induced-2 | induced-inf");
  cmd->add_option("-o,--out", o.out, "output path (default stdout)");
}

ExperimentConfig resolve(const Overrides &o) {
  ExperimentConfig c = o.config_path.empty() ? cli::preset(o.preset_name) : load_config(o.config_path);
  if (o.beta) {
    c.beta = *o.beta;
    c.beta_range.reset();
    c.pairs.clear();
  }
  if (o.beta_min || o.beta_max || o.beta_count) {
    BetaRange r = c.beta_range.value_or(BetaRange{0.0, 0.0, 0});
    if (o.beta_min) r.min = *o.beta_min;
    if (o.beta_max) r.max = *o.beta_max;
    if (o.beta_count) r.count = *o.beta_count;
    c.beta_range = r;
    c.beta.reset();
    c.pairs.clear();
  }
  if (o.delta) c.delta = *o.delta;
  if (o.seed) c.seed = *o.seed;
  if (o.max_depth) c.max_depth = *o.max_depth;
  if (o.norm) c.norm = parse_norm_id(*o.norm);
  if (o.horizon) c.horizon = *o.horizon;
  if (o.reps) c.reps = *o.reps;
  if (o.init_fraction) c.init_fraction = *o.init_fraction;
  if (o.mode) c.mode = *o.mode;
  if (o.reinfection) c.allow_reinfection = true;
  if (o.out) c.output = *o.out;
  return c;
}

// Opens `path` for writing, or returns stdout when empty.
struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream *stream = &std::cout;
  explicit Sink(const std::string &path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw ConfigError("cannot write '" + path + "'");
    stream = file.get();
  }
  std::ostream &operator*() { return *stream; }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"SIS epidemics on switching networks: thresholds, simulation and sweeps"};
  app.require_subcommand(1);

  cli::GenArgs gen;
  std::string gen_out;
  auto *gen_cmd = app.add_subcommand("gen", "generate a graph as an edge list");
  gen_cmd->add_option("generator", gen.name, "regular | ws | ba | gilbert | star | complete | empty | ring")->required();
  gen_cmd->add_option("--n", gen.n, "node count")->required();
  gen_cmd->add_option("--k", gen.k, "degree (regular, ws, ring)");
  gen_cmd->add_option("--m", gen.m, "edges per arrival (ba)");
  gen_cmd->add_option("--p", gen.p, "link probability (gilbert)");
  gen_cmd->add_option("--rewire", gen.rewire, "rewiring probability (ws)");
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("-o,--out", gen_out, "edge-list file (default stdout)");

  Overrides thr, sim, swp;
  auto *thr_cmd = app.add_subcommand("threshold", "die-out verdict from the joint spectral radius");
  add_config_options(thr_cmd, thr);

  auto *sim_cmd = app.add_subcommand("simulate", "mean-field trajectory or stochastic runs (CSV)");
  add_config_options(sim_cmd, sim);
  sim_cmd->add_option("--mode", sim.mode, "meanfield | mc");
  sim_cmd->add_option("--T", sim.horizon, "horizon");
  sim_cmd->add_option("--reps", sim.reps, "stochastic runs");
  sim_cmd->add_option("--init-fraction", sim.init_fraction, "initially infected fraction");
  sim_cmd->add_flag("--allow-reinfection", sim.reinfection, "recovered nodes may be reinfected in the same step");

  auto *swp_cmd = app.add_subcommand("sweep", "beta sweep with JSR and Monte Carlo columns (CSV)");
  add_config_options(swp_cmd, swp);
  swp_cmd->add_option("--T", swp.horizon, "horizon");
  swp_cmd->add_option("--reps", swp.reps, "stochastic runs per grid point");
  swp_cmd->add_option("--init-fraction", swp.init_fraction, "initially infected fraction");
  swp_cmd->add_option("--beta-min", swp.beta_min, "sweep start");
  swp_cmd->add_option("--beta-max", swp.beta_max, "sweep end");
  swp_cmd->add_option("--beta-count", swp.beta_count, "grid points");
  swp_cmd->add_flag("--allow-reinfection", swp.reinfection, "recovered nodes may be reinfected in the same step");

  cli::AppendixArgs app_args;
  std::string sampling = "iid";
  auto *ver_cmd = app.add_subcommand("verify-appendix", "Monte Carlo check of the expected column-sum formula");
  ver_cmd->add_option("--n", app_args.n, "node count")->capture_default_str();
  ver_cmd->add_option("--p", app_args.p, "link probability")->capture_default_str();
  ver_cmd->add_option("--beta", app_args.beta, "infection probability")->capture_default_str();
  ver_cmd->add_option("--delta", app_args.delta, "recovery probability")->capture_default_str();
  ver_cmd->add_option("--k-max", app_args.k_max, "longest product")->capture_default_str();
  ver_cmd->add_option("--trials", app_args.trials, "Monte Carlo trials (>= 1000)")->capture_default_str();
  ver_cmd->add_option("--seed", app_args.seed, "seed")->capture_default_str();
  ver_cmd->add_option("--sampling", sampling, "iid | symmetric")->check(CLI::IsMember({"iid", "symmetric"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) {
      Sink sink(gen_out);
      cli::cmd_gen(gen, *sink, gen_out.empty() ? std::cerr : std::cout);
    } else if (*thr_cmd) {
      const auto c = resolve(thr);
      Sink sink(c.output);
      *sink << cli::cmd_threshold(c).dump(2) << '\n';
    } else if (*sim_cmd) {
      const auto c = resolve(sim);
      Sink sink(c.output);
      cli::cmd_simulate(c, *sink, std::cerr);
    } else if (*swp_cmd) {
      const auto c = resolve(swp);
      Sink sink(c.output);
      cli::cmd_sweep(c, *sink);
    } else if (*ver_cmd) {
      app_args.mode = sampling == "symmetric" ? GilbertSampling::Symmetric : GilbertSampling::IidOffDiagonal;
      if (!cli::cmd_verify_appendix(app_args, std::cout)) return 2;
    }
  } catch (const NumericError &e) {
    std::cerr << "numeric error: " << e.what() << " (last estimate " << e.last_estimate() << ")\n";
    return 2;
  } catch (const ResourceError &e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return 1;
  }
  return 0;
}
