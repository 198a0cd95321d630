#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sisnet/cli.hpp"

using namespace sisnet;
using namespace sisnet::cli;

namespace {

ExperimentConfig base_config() {
  return parse_config(R"({
    "model": {"generators": [{"name": "star", "n": 3}]},
    "epidemic": {"beta": 0.1, "delta": 0.2},
    "run": {"seed": 1}
  })");
}

std::vector<std::vector<double>> read_csv(const std::string &text, std::string *header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

TEST(Config, ParsesSections) {
  const auto c = parse_config(R"({
    "model": {"generators": [{"name": "ws", "n": 20, "k": 4, "rewire": 0.5, "seed": 7}]},
    "policy": {"variant": "iid_weighted", "weights": [1.0]},
    "epidemic": {"beta_range": {"min": 0.1, "max": 0.3, "count": 3}, "delta": 0.25},
    "run": {"T": 40, "reps": 3, "seed": 9, "init_fraction": 0.5, "mode": "mc", "allow_reinfection": true},
    "analysis": {"max_depth": 2, "norm": "inf"},
    "output": {"path": "out.csv"}
  })");
  validate(c);
  ASSERT_EQ(c.generators.size(), 1u);
  EXPECT_EQ(c.generators[0].rewire, 0.5);
  EXPECT_EQ(c.policy, PolicyKind::IidWeighted);
  EXPECT_EQ(c.horizon, 40u);
  EXPECT_EQ(*c.seed, 9u);
  EXPECT_TRUE(c.allow_reinfection);
  EXPECT_EQ(*c.norm, NormId::InducedInf);
  EXPECT_EQ(c.output, "out.csv");
  const auto grid = build_grid(c);
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_DOUBLE_EQ(grid[1].beta, 0.2);
  EXPECT_DOUBLE_EQ(grid[2].delta, 0.25);
}

TEST(Config, RoundTrip) {
  std::vector<ExperimentConfig> configs{base_config()};
  for (const char *name : {"star-dieout", "star-spread", "ws-sweep", "star-empty", "ba-sweep", "regular-sweep", "gilbert-bound"}) configs.push_back(preset(name));
  auto c = base_config();
  c.policy = PolicyKind::FixedTrace;
  c.indices = {0, 0};
  c.norm = NormId::Induced2;
  c.output = "x.csv";
  configs.push_back(c);
  for (const auto &cfg : configs) {
    const auto once = parse_config(to_json(cfg).dump());
    EXPECT_EQ(once, cfg);
    EXPECT_EQ(parse_config(to_json(once).dump()), once);
  }
}

TEST(Config, ValidationErrors) {
  auto c = base_config();
  c.seed.reset();
  EXPECT_THROW(validate(c), ConfigError);

  c = base_config();
  c.edge_lists = {"graph.txt"};
  EXPECT_THROW(validate(c), ConfigError);

  c = base_config();
  c.generators.clear();
  EXPECT_THROW(validate(c), ConfigError);

  c = base_config();
  c.beta_range = BetaRange{0.1, 0.3, 3};
  EXPECT_THROW(validate(c), ConfigError); // both beta and beta_range

  c = base_config();
  c.beta.reset();
  c.beta_range = BetaRange{0.3, 0.1, 3};
  EXPECT_THROW(validate(c), ConfigError);
  c.beta_range = BetaRange{0.1, 0.3, 1};
  EXPECT_THROW(validate(c), ConfigError);

  c = base_config();
  c.mode = "agent";
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, ParseErrors) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"model": {}, "epidemic": {"beta": 0.1}, "colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"epidemic": {"beta": "high"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"model": {}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"epidemic": {"beta": 0.1}, "analysis": {"norm": "frobenius"}})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Presets, AllValidate) {
  for (const char *name : {"star-dieout", "star-spread", "ws-sweep", "star-empty", "ba-sweep", "regular-sweep", "gilbert-bound"}) EXPECT_NO_THROW(validate(preset(name)));
  EXPECT_THROW(preset("nope"), ConfigError);
  EXPECT_EQ(*preset("star-dieout").beta, 0.1);
  EXPECT_EQ(*preset("star-spread").beta, 0.6);
}

TEST(CmdGen, Examples) {
  std::ostringstream file, log;
  auto g = cmd_gen({"regular", 4, 2, 0, 0.0, 0.0, 1}, file, log);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(log.str(), "n=4 m=4 rho=2\n");
  EXPECT_EQ(load_edge_list(file.str()), g);

  std::ostringstream f2, l2;
  EXPECT_EQ(cmd_gen({"gilbert", 50, 0, 0, 0.0, 0.0, 3}, f2, l2).edge_count(), 0u);
  std::ostringstream f3, l3;
  EXPECT_EQ(cmd_gen({"ws", 20, 4, 0, 0.0, 0.5, 7}, f3, l3).edge_count(), 40u);

  std::ostringstream f4, l4;
  EXPECT_THROW(cmd_gen({"regular", 5, 3, 0, 0.0, 0.0, 1}, f4, l4), ParameterError);
  EXPECT_THROW(cmd_gen({"lattice", 5, 3, 0, 0.0, 0.0, 1}, f4, l4), ParameterError);
}

TEST(CmdThreshold, Examples) {
  auto j = cmd_threshold(base_config());
  EXPECT_EQ(j["verdict"], "DiesOut");
  EXPECT_EQ(j["criterion"], "static");

  auto c = parse_config(R"({
    "model": {"generators": [{"name": "star", "n": 3}, {"name": "ring", "n": 3, "k": 2}]},
    "epidemic": {"beta": 0.5, "delta": 0.2}, "run": {"seed": 1}})");
  // ring on 3 nodes is a triangle (rho 2), so the star is not the maximizer here
  j = cmd_threshold(c);
  EXPECT_EQ(j["verdict"], "Spreads");
  EXPECT_NEAR(j["value"].get<double>(), 0.8 + 0.5 * 2, 1e-9);
  EXPECT_EQ(j["norm"], "induced-2");
}

TEST(CmdThreshold, StarAndEdgeFromFiles) {
  const auto dir = ::testing::TempDir();
  {
    std::ofstream(dir + "/star.txt") << "3 2 0\n0 1\n0 2\n";
    std::ofstream(dir + "/edge.txt") << "3 1 0\n0 1\n";
  }
  ExperimentConfig c = base_config();
  c.generators.clear();
  c.edge_lists = {dir + "/star.txt", dir + "/edge.txt"};
  c.beta = 0.5;
  const auto j = cmd_threshold(c);
  EXPECT_EQ(j["verdict"], "Spreads");
  EXPECT_NEAR(j["value"].get<double>(), 0.8 + 0.5 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(j["lower"].get<double>(), j["upper"].get<double>(), 1e-12);
}

TEST(CmdThreshold, DirectedSetInconclusive) {
  const auto dir = ::testing::TempDir();
  {
    std::ofstream(dir + "/fwd.txt") << "2 1 1\n0 1\n";
    std::ofstream(dir + "/back.txt") << "2 1 1\n1 0\n";
  }
  ExperimentConfig c = base_config();
  c.generators.clear();
  c.edge_lists = {dir + "/fwd.txt", dir + "/back.txt"};
  c.beta = 0.25;
  c.max_depth = 1;
  const auto j = cmd_threshold(c);
  EXPECT_EQ(j["verdict"], "Inconclusive");
  EXPECT_LT(j["lower"].get<double>(), 1.0);
  EXPECT_GT(j["upper"].get<double>(), 1.0);
}

TEST(CmdThreshold, PeriodicAndGilbert) {
  auto c = preset("star-empty");
  c.beta_range.reset();
  c.beta = 0.3;
  c.policy = PolicyKind::Periodic;
  auto j = cmd_threshold(c);
  EXPECT_EQ(j["criterion"], "periodic");
  EXPECT_NEAR(j["value"].get<double>(), 0.8 * (0.8 + 0.3 * std::sqrt(2.0)), 1e-9);
  EXPECT_EQ(j["verdict"], "DiesOut");

  c = preset("gilbert-bound");
  c.pairs.clear();
  c.beta = 0.8;
  j = cmd_threshold(c);
  EXPECT_EQ(j["criterion"], "gilbert_bound");
  EXPECT_EQ(j["spread_probability_bound"], 1.0);
  EXPECT_EQ(j["verdict"], "Inconclusive");
}

TEST(CmdSimulate, MeanfieldStarSpread) {
  std::ostringstream csv, log;
  const auto summary = cmd_simulate(preset("star-spread"), csv, log);
  std::string header;
  const auto rows = read_csv(csv.str(), &header);
  EXPECT_EQ(header, "t,p_0,p_1,p_2");
  ASSERT_EQ(rows.size(), 501u);
  EXPECT_EQ(rows.back()[0], 500.0);
  EXPECT_NEAR(rows.back()[1], 0.76791, 1e-4);
  EXPECT_NEAR(rows.back()[2], 0.69731, 1e-4);
  EXPECT_NEAR(rows.back()[3], 0.69731, 1e-4);
  EXPECT_NEAR(summary.final_sup_norm, 0.76791, 1e-4);
}

TEST(CmdSimulate, MeanfieldStarDiesOut) {
  std::ostringstream csv, log;
  EXPECT_LT(cmd_simulate(preset("star-dieout"), csv, log).final_sup_norm, 1e-6);
}

TEST(CmdSimulate, McNoInitialInfection) {
  auto c = base_config();
  c.mode = "mc";
  c.init_fraction = 0.0;
  c.reps = 3;
  c.horizon = 20;
  std::ostringstream csv, log;
  const auto summary = cmd_simulate(c, csv, log);
  std::string header;
  const auto rows = read_csv(csv.str(), &header);
  EXPECT_EQ(header, "t,run_0,run_1,run_2");
  ASSERT_EQ(rows.size(), 21u);
  for (const auto &r : rows)
    for (std::size_t i = 1; i < r.size(); ++i) EXPECT_EQ(r[i], 0.0);
  for (const auto &d : summary.died_out_at) EXPECT_EQ(d, 0u);
}

TEST(CmdSimulate, McByteIdenticalForSameSeed) {
  auto c = load_config(SISNET_SOURCE_DIR "/configs/star_mc.json");
  c.horizon = 100;
  std::ostringstream a, b, la, lb;
  cmd_simulate(c, a, la);
  cmd_simulate(c, b, lb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(la.str(), lb.str());
  c.seed = 8;
  std::ostringstream other, lo;
  cmd_simulate(c, other, lo);
  EXPECT_NE(other.str(), a.str());
}

TEST(CmdSweep, RegularCrossing) {
  auto c = parse_config(R"({
    "model": {"generators": [{"name": "regular", "n": 60, "k": 8, "seed": 1},
                             {"name": "regular", "n": 60, "k": 8, "seed": 2}]},
    "epidemic": {"pairs": [[0.01, 0.2], [0.1, 0.2]]},
    "run": {"T": 300, "reps": 10, "seed": 4}})");
  std::ostringstream csv;
  const auto rows = cmd_sweep(c, csv);
  std::string header;
  const auto parsed = read_csv(csv.str(), &header);
  EXPECT_EQ(header, sweep_csv_header);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].size(), 11u);
  EXPECT_GE(rows[0].dieout_prob, 0.9);
  EXPECT_EQ(rows[1].dieout_prob, 0.0);
  EXPECT_DOUBLE_EQ(parsed[1][5], rows[1].dieout_prob);
  EXPECT_EQ(parsed[1][10], 4.0);
}

TEST(CmdSweep, ComparatorWindow) {
  // ring (rho 2) and empty: product 0.8 (0.8 + 2 beta) < 1 < 0.8 + 2 beta for 0.1 < beta < 0.2125
  auto c = parse_config(R"({
    "model": {"generators": [{"name": "ws", "n": 20, "k": 2, "rewire": 0.0, "seed": 1}, {"name": "empty", "n": 20}]},
    "epidemic": {"beta_range": {"min": 0.05, "max": 0.3, "count": 11}, "delta": 0.2},
    "run": {"T": 50, "reps": 2, "seed": 2}})");
  std::ostringstream csv;
  const auto rows = cmd_sweep(c, csv);
  std::size_t in_window = 0;
  for (const auto &r : rows) {
    EXPECT_NEAR(r.jsr_lower, 0.8 + 2 * r.beta, 1e-9);
    EXPECT_NEAR(r.product_rho, 0.8 * (0.8 + 2 * r.beta), 1e-9);
    if (r.product_rho < 1.0 && r.jsr_lower > 1.0) ++in_window;
  }
  EXPECT_GE(in_window, 3u);
}

TEST(CmdSweep, EmptyGraphOnly) {
  auto c = parse_config(R"({
    "model": {"generators": [{"name": "empty", "n": 10}]},
    "epidemic": {"beta_range": {"min": 0.1, "max": 0.9, "count": 3}, "delta": 0.3},
    "run": {"T": 100, "reps": 4, "seed": 5}})");
  std::ostringstream csv;
  for (const auto &r : cmd_sweep(c, csv)) {
    EXPECT_EQ(r.final_frac_mean, 0.0);
    EXPECT_EQ(r.dieout_prob, 1.0);
  }
}

TEST(CmdSweep, RejectsSingleBeta) {
  std::ostringstream csv;
  EXPECT_THROW(cmd_sweep(base_config(), csv), ConfigError);
}

TEST(CmdVerifyAppendix, Examples) {
  AppendixArgs a;
  a.trials = 20000;
  std::ostringstream out;
  EXPECT_TRUE(cmd_verify_appendix(a, out));
  std::string header;
  const auto rows = read_csv(
      [&] {
        // the pass column is text; strip it for numeric parsing
        std::string s = out.str(), t;
        std::istringstream in(s);
        for (std::string line; std::getline(in, line);) t += line.substr(0, line.rfind(',')) + "\n";
        return t;
      }(),
      &header);
  EXPECT_EQ(header, "k,formula,mc_mean,std_err");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[2][1], 1.225043, 1e-6);

  a.beta = 0.0;
  std::ostringstream zero;
  EXPECT_TRUE(cmd_verify_appendix(a, zero));
  a.delta = 1.0;
  std::ostringstream dead;
  EXPECT_TRUE(cmd_verify_appendix(a, dead));
  EXPECT_NE(dead.str().find("3,0,0,0,pass"), std::string::npos);

  a.trials = 10;
  std::ostringstream few;
  EXPECT_THROW(cmd_verify_appendix(a, few), ConfigError);
}
