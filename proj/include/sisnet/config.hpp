#ifndef SISNET_CONFIG_HPP
#define SISNET_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sisnet/errors.hpp"
#include "sisnet/generators.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/matrix.hpp"
#include "sisnet/switching.hpp"

namespace sisnet {

/// Invalid experiment configuration (maps to CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// One generated graph. Fields not used by `name` are ignored.
///   regular(n, k, seed)   ws(n, k, rewire, seed)   ba(n, m, seed)
///   gilbert(n, p, seed)   star(n)   complete(n)   empty(n)   ring(n, k)
struct GeneratorSpec {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  double p = 0.0;
  double rewire = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorSpec &, const GeneratorSpec &) = default;
};

inline Graph generate(const GeneratorSpec &g) {
  if (g.name == "regular") return gen_regular(g.n, g.k, g.seed);
  if (g.name == "ws") return gen_watts_strogatz(g.n, g.k, g.rewire, g.seed);
  if (g.name == "ba") return gen_barabasi_albert(g.n, g.m, g.seed);
  if (g.name == "gilbert") return gen_gilbert(g.n, g.p, g.seed);
  if (g.name == "star") return gen_star(g.n);
  if (g.name == "complete") return gen_complete(g.n);
  if (g.name == "empty") return Graph::empty(g.n);
  if (g.name == "ring") return gen_ring_lattice(g.n, g.k);
  throw ParameterError("unknown generator '" + g.name + "'");
}

struct BetaRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
      v[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
  }

  friend bool operator==(const BetaRange &, const BetaRange &) = default;
};

/// Experiment description: a single JSON document.
///
///   model     {"generators": [...]} or {"edge_lists": [...]}   (exactly one;
///             omitted for the gilbert_regenerate policy)
///   policy    {"variant": ..., "weights", "indices", "n", "p"}
///   epidemic  {"beta" | "beta_range": {min,max,count} | "pairs": [[b,d],...], "delta"}
///   run       {"T", "reps", "seed", "init_fraction", "mode", "p0", "allow_reinfection"}
///   analysis  {"max_depth", "norm"}
///   output    {"path"}
struct ExperimentConfig {
  std::vector<GeneratorSpec> generators;
  std::vector<std::string> edge_lists;

  PolicyKind policy = PolicyKind::IidUniform;
  std::vector<double> weights;
  std::vector<std::size_t> indices;
  std::size_t gilbert_n = 0;
  double gilbert_p = 0.0;

  std::optional<double> beta;
  std::optional<BetaRange> beta_range;
  std::vector<std::pair<double, double>> pairs; // explicit (beta, delta) grid
  double delta = 0.0;

  std::size_t horizon = 500;
  std::size_t reps = 20;
  std::optional<std::uint64_t> seed;
  double init_fraction = 0.2;
  std::string mode = "meanfield";
  std::vector<double> p0;
  bool allow_reinfection = false;

  std::size_t max_depth = 4;
  std::optional<NormId> norm;

  std::string output;

  friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

namespace detail {

template <typename T>
T get_field(const nlohmann::json &obj, const char *key, const char *section) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string(section) + "." + key + ": " + e.what());
  }
}

template <typename T>
void read_opt(const nlohmann::json &obj, const char *key, const char *section, T &dst) {
  if (obj.contains(key)) dst = get_field<T>(obj, key, section);
}

inline void check_keys(const nlohmann::json &obj, const char *section, std::initializer_list<const char *> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(section) + " must be an object");
  for (const auto &[k, _] : obj.items()) {
    bool ok = false;
    for (const char *a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + section);
  }
}

} // namespace detail

inline void validate(const ExperimentConfig &c) {
  const bool regen = c.policy == PolicyKind::GilbertRegenerate;
  const int sources = (c.generators.empty() ? 0 : 1) + (c.edge_lists.empty() ? 0 : 1);
  if (regen) {
    if (sources != 0) throw ConfigError("gilbert_regenerate draws its own graphs; remove the model section");
    if (c.gilbert_n < 2) throw ConfigError("policy.n must be at least 2 for gilbert_regenerate");
    if (!(c.gilbert_p >= 0.0 && c.gilbert_p <= 1.0)) throw ConfigError("policy.p must lie in [0,1]");
  } else if (sources != 1) {
    throw ConfigError("model needs exactly one source: generators or edge_lists");
  }
  const int grids = (c.beta ? 1 : 0) + (c.beta_range ? 1 : 0) + (c.pairs.empty() ? 0 : 1);
  if (grids != 1) throw ConfigError("epidemic needs exactly one of beta, beta_range, pairs");
  if (c.beta && !(*c.beta >= 0.0 && *c.beta <= 1.0)) throw ConfigError("epidemic.beta must lie in [0,1]");
  if (c.beta_range) {
    const auto &r = *c.beta_range;
    if (!(r.min < r.max)) throw ConfigError("beta_range needs min < max");
    if (r.count < 2) throw ConfigError("beta_range needs count >= 2");
    if (r.min < 0.0 || r.max > 1.0) throw ConfigError("beta_range must lie in [0,1]");
  }
  for (auto [b, d] : c.pairs)
    if (!(b >= 0.0 && b <= 1.0 && d >= 0.0 && d <= 1.0)) throw ConfigError("epidemic.pairs entries must lie in [0,1]");
  if (!(c.delta >= 0.0 && c.delta <= 1.0)) throw ConfigError("epidemic.delta must lie in [0,1]");
  if (!c.seed) throw ConfigError("run.seed is required");
  if (c.horizon < 1) throw ConfigError("run.T must be at least 1");
  if (c.reps < 1) throw ConfigError("run.reps must be at least 1");
  if (!(c.init_fraction >= 0.0 && c.init_fraction <= 1.0)) throw ConfigError("run.init_fraction must lie in [0,1]");
  if (c.mode != "meanfield" && c.mode != "mc") throw ConfigError("run.mode must be 'meanfield' or 'mc'");
  for (double v : c.p0)
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("run.p0 entries must lie in [0,1]");
  if (c.max_depth < 1) throw ConfigError("analysis.max_depth must be at least 1");
  if (c.policy == PolicyKind::IidWeighted && c.weights.empty()) throw ConfigError("iid_weighted needs policy.weights");
  if (c.policy == PolicyKind::FixedTrace && c.indices.empty()) throw ConfigError("fixed_trace needs policy.indices");
}

inline ExperimentConfig config_from_json(const nlohmann::json &j) {
  using detail::get_field;
  using detail::read_opt;
  detail::check_keys(j, "config", {"model", "policy", "epidemic", "run", "analysis", "output"});
  ExperimentConfig c;

  if (j.contains("model")) {
    const auto &m = j["model"];
    detail::check_keys(m, "model", {"generators", "edge_lists"});
    read_opt(m, "edge_lists", "model", c.edge_lists);
    if (m.contains("generators")) {
      if (!m["generators"].is_array()) throw ConfigError("model.generators must be an array");
      for (const auto &g : m["generators"]) {
        detail::check_keys(g, "model.generators[]", {"name", "n", "k", "m", "p", "rewire", "seed"});
        GeneratorSpec s;
        s.name = get_field<std::string>(g, "name", "generator");
        read_opt(g, "n", "generator", s.n);
        read_opt(g, "k", "generator", s.k);
        read_opt(g, "m", "generator", s.m);
        read_opt(g, "p", "generator", s.p);
        read_opt(g, "rewire", "generator", s.rewire);
        read_opt(g, "seed", "generator", s.seed);
        c.generators.push_back(std::move(s));
      }
    }
  }

  if (j.contains("policy")) {
    const auto &p = j["policy"];
    detail::check_keys(p, "policy", {"variant", "weights", "indices", "n", "p"});
    try {
      c.policy = parse_policy_kind(get_field<std::string>(p, "variant", "policy"));
    } catch (const ParameterError &e) {
      throw ConfigError(e.what());
    }
    read_opt(p, "weights", "policy", c.weights);
    read_opt(p, "indices", "policy", c.indices);
    read_opt(p, "n", "policy", c.gilbert_n);
    read_opt(p, "p", "policy", c.gilbert_p);
  }

  if (!j.contains("epidemic")) throw ConfigError("missing epidemic section");
  {
    const auto &e = j["epidemic"];
    detail::check_keys(e, "epidemic", {"beta", "beta_range", "pairs", "delta"});
    if (e.contains("beta")) c.beta = get_field<double>(e, "beta", "epidemic");
    if (e.contains("beta_range")) {
      const auto &r = e["beta_range"];
      detail::check_keys(r, "epidemic.beta_range", {"min", "max", "count"});
      c.beta_range = BetaRange{get_field<double>(r, "min", "beta_range"), get_field<double>(r, "max", "beta_range"),
                               get_field<std::size_t>(r, "count", "beta_range")};
    }
    read_opt(e, "pairs", "epidemic", c.pairs);
    read_opt(e, "delta", "epidemic", c.delta);
  }

  if (j.contains("run")) {
    const auto &r = j["run"];
    detail::check_keys(r, "run", {"T", "reps", "seed", "init_fraction", "mode", "p0", "allow_reinfection"});
    read_opt(r, "T", "run", c.horizon);
    read_opt(r, "reps", "run", c.reps);
    if (r.contains("seed")) c.seed = get_field<std::uint64_t>(r, "seed", "run");
    read_opt(r, "init_fraction", "run", c.init_fraction);
    read_opt(r, "mode", "run", c.mode);
    read_opt(r, "p0", "run", c.p0);
    read_opt(r, "allow_reinfection", "run", c.allow_reinfection);
  }

  if (j.contains("analysis")) {
    const auto &a = j["analysis"];
    detail::check_keys(a, "analysis", {"max_depth", "norm"});
    read_opt(a, "max_depth", "analysis", c.max_depth);
    if (a.contains("norm")) {
      try {
        c.norm = parse_norm_id(get_field<std::string>(a, "norm", "analysis"));
      } catch (const ParameterError &e) {
        throw ConfigError(e.what());
      }
    }
  }

  if (j.contains("output")) {
    detail::check_keys(j["output"], "output", {"path"});
    read_opt(j["output"], "path", "output", c.output);
  }
  return c;
}

inline ExperimentConfig parse_config(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline ExperimentConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::json to_json(const ExperimentConfig &c) {
  nlohmann::json j;
  if (!c.generators.empty()) {
    auto &arr = j["model"]["generators"] = nlohmann::json::array();
    for (const auto &g : c.generators)
      arr.push_back({{"name", g.name}, {"n", g.n}, {"k", g.k}, {"m", g.m}, {"p", g.p}, {"rewire", g.rewire},
                     {"seed", g.seed}});
  }
  if (!c.edge_lists.empty()) j["model"]["edge_lists"] = c.edge_lists;

  auto &p = j["policy"];
  p["variant"] = std::string(to_string(c.policy));
  if (!c.weights.empty()) p["weights"] = c.weights;
  if (!c.indices.empty()) p["indices"] = c.indices;
  if (c.policy == PolicyKind::GilbertRegenerate) {
    p["n"] = c.gilbert_n;
    p["p"] = c.gilbert_p;
  }

  auto &e = j["epidemic"];
  if (c.beta) e["beta"] = *c.beta;
  if (c.beta_range) e["beta_range"] = {{"min", c.beta_range->min}, {"max", c.beta_range->max}, {"count", c.beta_range->count}};
  if (!c.pairs.empty()) e["pairs"] = c.pairs;
  e["delta"] = c.delta;

  auto &r = j["run"];
  r["T"] = c.horizon;
  r["reps"] = c.reps;
  if (c.seed) r["seed"] = *c.seed;
  r["init_fraction"] = c.init_fraction;
  r["mode"] = c.mode;
  if (!c.p0.empty()) r["p0"] = c.p0;
  r["allow_reinfection"] = c.allow_reinfection;

  j["analysis"]["max_depth"] = c.max_depth;
  if (c.norm) j["analysis"]["norm"] = std::string(to_string(*c.norm));
  if (!c.output.empty()) j["output"]["path"] = c.output;
  return j;
}

/// The graphs named by the model section, in order.
inline std::vector<Graph> build_graphs(const ExperimentConfig &c) {
  std::vector<Graph> out;
  for (const auto &g : c.generators) out.push_back(generate(g));
  for (const auto &path : c.edge_lists) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open edge list '" + path + "'");
    out.push_back(load_edge_list(in));
  }
  return out;
}

inline SwitchingPolicy build_policy(const ExperimentConfig &c) {
  switch (c.policy) {
  case PolicyKind::IidUniform: return SwitchingPolicy::iid_uniform(build_graphs(c));
  case PolicyKind::IidWeighted: return SwitchingPolicy::iid_weighted(build_graphs(c), c.weights);
  case PolicyKind::Periodic: return SwitchingPolicy::periodic(build_graphs(c));
  case PolicyKind::FixedTrace: return SwitchingPolicy::fixed_trace(build_graphs(c), c.indices);
  case PolicyKind::GilbertRegenerate: return SwitchingPolicy::gilbert_regenerate(c.gilbert_n, c.gilbert_p);
  }
  throw ConfigError("unknown policy");
}

/// (beta, delta) points in grid order.
inline std::vector<EpidemicParams> build_grid(const ExperimentConfig &c) {
  std::vector<EpidemicParams> grid;
  if (c.beta) grid.emplace_back(*c.beta, c.delta);
  if (c.beta_range)
    for (double b : c.beta_range->values()) grid.emplace_back(b, c.delta);
  for (auto [b, d] : c.pairs) grid.emplace_back(b, d);
  return grid;
}

} // namespace sisnet

#endif // SISNET_CONFIG_HPP
