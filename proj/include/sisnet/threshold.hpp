#ifndef SISNET_THRESHOLD_HPP
#define SISNET_THRESHOLD_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/jsr.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/random.hpp"
#include "sisnet/spectral_radius.hpp"

namespace sisnet {

enum class Verdict { DiesOut, Spreads, Inconclusive };

inline std::string_view to_string(Verdict v) noexcept {
  switch (v) {
  case Verdict::DiesOut: return "DiesOut";
  case Verdict::Spreads: return "Spreads";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Criteria within this distance of 1 are reported Inconclusive: the
/// die-out conditions are strict inequalities.
inline constexpr double verdict_band = 1e-9;

struct ThresholdVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string criterion;
  double value = 0.0; // the governing quantity compared against 1
  double lower = 0.0; // JSR enclosure (equal for exact criteria)
  double upper = 0.0;
  std::size_t depth = 1;
  std::optional<NormId> norm;
};

inline Verdict classify(double value) noexcept {
  if (std::isnan(value) || std::abs(value - 1.0) <= verdict_band) return Verdict::Inconclusive;
  return value < 1.0 ? Verdict::DiesOut : Verdict::Spreads;
}

/// DiesOut when upper < 1, Spreads when lower > 1, Inconclusive otherwise.
inline Verdict classify(const JsrBracket &b) noexcept {
  if (b.upper < 1.0 - verdict_band) return Verdict::DiesOut;
  if (b.lower > 1.0 + verdict_band) return Verdict::Spreads;
  return Verdict::Inconclusive;
}

inline nlohmann::json to_json(const ThresholdVerdict &v) {
  nlohmann::json j;
  j["criterion"] = v.criterion;
  j["value"] = v.value;
  j["lower"] = v.lower;
  j["upper"] = v.upper;
  j["depth"] = v.depth;
  j["norm"] = v.norm ? nlohmann::json(std::string(to_string(*v.norm))) : nlohmann::json(nullptr);
  j["verdict"] = std::string(to_string(v.verdict));
  return j;
}

namespace detail {
// (beta/delta) * r, with delta = 0 mapped to +inf (or NaN when M = I exactly).
inline double strength_ratio(double r, const EpidemicParams &params) noexcept {
  const double num = params.beta * r;
  if (params.delta > 0.0) return num / params.delta;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
}
} // namespace detail

/// Static network: dies out iff (beta/delta) rho(A) < 1. `value` is that
/// ratio; lower/upper hold the equivalent 1 - delta + beta rho(A).
inline ThresholdVerdict threshold_static(const Graph &g, const EpidemicParams &params) {
  const double rho = spectral_radius(g);
  const double jsr = 1.0 - params.delta + params.beta * rho;
  const double ratio = detail::strength_ratio(rho, params);
  return {classify(ratio), "static", ratio, jsr, jsr, 1, std::nullopt};
}

/// Dynamic regular network of degree k_bar: dies out iff (beta/delta) k_bar < 1.
inline ThresholdVerdict threshold_regular(double k_bar, const EpidemicParams &params) {
  if (!(k_bar >= 0.0)) throw ParameterError("degree must be nonnegative");
  const double jsr = 1.0 - params.delta + params.beta * k_bar;
  const double ratio = detail::strength_ratio(k_bar, params);
  return {classify(ratio), "regular", ratio, jsr, jsr, 1, std::nullopt};
}

/// rho(M_T ... M_1) for the sequence in the given order. This is the
/// product criterion used for periodic networks; for arbitrary switching it
/// is only a comparator and must not be read as a verdict.
inline double product_spectral_radius(std::span<const Graph> seq, const EpidemicParams &params) {
  if (seq.empty()) throw ParameterError("product_spectral_radius: empty sequence");
  std::vector<Matrix> ms;
  for (const auto &g : seq) {
    if (g.size() != seq.front().size()) throw DimensionError("product_spectral_radius: graphs differ in size");
    ms.push_back(system_matrix(g, params));
  }
  return spectral_radius(ordered_product(ms));
}

/// Periodic network repeating seq: dies out iff rho(prod M_i) < 1.
inline ThresholdVerdict threshold_periodic(std::span<const Graph> seq, const EpidemicParams &params) {
  const double rho = product_spectral_radius(seq, params);
  const double rate = std::pow(rho, 1.0 / static_cast<double>(seq.size()));
  return {classify(rho), "periodic", rho, rate, rate, seq.size(), std::nullopt};
}

/// Arbitrary switching among `graphs`: JSR bracket of the system set.
inline ThresholdVerdict threshold_dynamic(std::span<const Graph> graphs, const EpidemicParams &params,
                                          std::size_t max_depth, std::optional<NormId> norm = std::nullopt,
                                          const BracketOptions &opt = {}) {
  const auto set = build_system_set(graphs, params);
  const auto b = jsr_bracket(set, max_depth, norm, opt);
  const bool exact = b.lower == b.upper;
  return {classify(b), exact ? "jsr" : "jsr_bracket", exact ? b.lower : b.upper, b.lower, b.upper, b.depth, b.norm};
}

struct SpreadBound {
  double raw = 0.0;
  double clamped = 0.0;
};

/// Upper bound on the probability that an epidemic spreads on a dynamic
/// Gilbert network: 1 - delta + (n-1) beta p, clamped to 1.
inline SpreadBound gilbert_spread_bound(std::size_t n, double p, const EpidemicParams &params) {
  if (n < 2) throw ParameterError("gilbert_spread_bound needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("link probability must lie in [0,1]");
  const double raw = 1.0 - params.delta + static_cast<double>(n - 1) * params.beta * p;
  return {raw, std::min(1.0, raw)};
}

/// Expected absolute column sum of a length-k product of Gilbert system
/// matrices: [1 - delta + (n-1) beta p]^k.
inline double expected_column_sum(std::size_t n, double p, const EpidemicParams &params, std::size_t k) {
  if (k < 1) throw ParameterError("product length k must be at least 1");
  const double base = 1.0 - params.delta + static_cast<double>(n - 1) * params.beta * p;
  return std::pow(base, static_cast<double>(k));
}

/// How off-diagonal adjacency entries are drawn in mc_column_sum.
enum class GilbertSampling {
  IidOffDiagonal, // every ordered pair independent
  Symmetric,      // undirected: a_ij = a_ji
};

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
};

/// Monte Carlo estimate of E[sum_q |(M_k ... M_1)_{q,0}|] over independent
/// Gilbert system-matrix draws.
inline McEstimate mc_column_sum(std::size_t n, double p, const EpidemicParams &params, std::size_t k,
                                std::size_t trials, std::uint64_t seed,
                                GilbertSampling mode = GilbertSampling::IidOffDiagonal) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (k < 1) throw ParameterError("product length k must be at least 1");
  if (n < 1) throw ParameterError("n must be positive");

  Rng rng(hash_key({seed, 0x4d43ULL, n, k}));
  std::vector<double> v(n), w(n);
  std::vector<std::uint8_t> a(n * n);
  double mean = 0.0, m2 = 0.0; // Welford
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    for (std::size_t step = 0; step < k; ++step) {
      for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = 0;
        for (std::size_t j = (mode == GilbertSampling::Symmetric ? i + 1 : 0); j < n; ++j) {
          if (j == i) continue;
          const std::uint8_t bit = rng.uniform() < p ? 1 : 0;
          a[i * n + j] = bit;
          if (mode == GilbertSampling::Symmetric) a[j * n + i] = bit;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        double acc = (1.0 - params.delta) * v[i];
        for (std::size_t j = 0; j < n; ++j)
          if (a[i * n + j]) acc += params.beta * v[j];
        w[i] = acc;
      }
      std::swap(v, w);
    }
    double col = 0.0;
    for (double x : v) col += std::abs(x);
    const double d = col - mean;
    mean += d / static_cast<double>(trial + 1);
    m2 += d * (col - mean);
  }
  const double t = static_cast<double>(trials);
  const double var = trials > 1 ? m2 / (t - 1.0) : 0.0;
  return {mean, std::sqrt(var / t)};
}

} // namespace sisnet

#endif // SISNET_THRESHOLD_HPP
