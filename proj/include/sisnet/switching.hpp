#ifndef SISNET_SWITCHING_HPP
#define SISNET_SWITCHING_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/generators.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/random.hpp"

namespace sisnet {

enum class PolicyKind { IidUniform, IidWeighted, Periodic, FixedTrace, GilbertRegenerate };

inline std::string_view to_string(PolicyKind k) noexcept {
  switch (k) {
  case PolicyKind::IidUniform: return "iid_uniform";
  case PolicyKind::IidWeighted: return "iid_weighted";
  case PolicyKind::Periodic: return "periodic";
  case PolicyKind::FixedTrace: return "fixed_trace";
  case PolicyKind::GilbertRegenerate: return "gilbert_regenerate";
  }
  return "?";
}

inline PolicyKind parse_policy_kind(std::string_view s) {
  for (auto k : {PolicyKind::IidUniform, PolicyKind::IidWeighted, PolicyKind::Periodic, PolicyKind::FixedTrace,
                 PolicyKind::GilbertRegenerate})
    if (to_string(k) == s) return k;
  throw ParameterError("unknown switching policy '" + std::string(s) + "'");
}

using GraphPtr = std::shared_ptr<const Graph>;

/// Rule choosing the adjacency matrix in force at each time index.
///
/// Matrix selection is random-access: the choice at index t depends only on
/// (master seed, t), never on earlier draws, so any step can be replayed.
class SwitchingPolicy {
public:
  /// Each step picks a member of `set` uniformly, independently of history.
  static SwitchingPolicy iid_uniform(std::vector<Graph> set) {
    SwitchingPolicy p(PolicyKind::IidUniform, std::move(set));
    return p;
  }

  /// Each step picks member i with probability weights[i]. The weights must
  /// be nonnegative and sum to 1 within 1e-9; they are then renormalized.
  static SwitchingPolicy iid_weighted(std::vector<Graph> set, std::vector<double> weights) {
    SwitchingPolicy p(PolicyKind::IidWeighted, std::move(set));
    if (weights.size() != p.set_.size()) throw ParameterError("one weight per graph required");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw ParameterError("weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ParameterError("weights must sum to 1 (got " + std::to_string(total) + ")");
    p.cumulative_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] /= total;
      acc += weights[i];
      p.cumulative_[i] = acc;
    }
    p.cumulative_.back() = 1.0;
    p.weights_ = std::move(weights);
    return p;
  }

  /// sequence[t mod T].
  static SwitchingPolicy periodic(std::vector<Graph> sequence) {
    return SwitchingPolicy(PolicyKind::Periodic, std::move(sequence));
  }

  /// set[indices[t mod len]]; the trace wraps around once exhausted.
  static SwitchingPolicy fixed_trace(std::vector<Graph> set, std::vector<std::size_t> indices) {
    SwitchingPolicy p(PolicyKind::FixedTrace, std::move(set));
    if (indices.empty()) throw ParameterError("fixed trace needs at least one index");
    for (auto i : indices)
      if (i >= p.set_.size()) throw ParameterError("fixed trace index " + std::to_string(i) + " out of range");
    p.indices_ = std::move(indices);
    return p;
  }

  /// A fresh G(n, p) draw at every step.
  static SwitchingPolicy gilbert_regenerate(std::size_t n, double p, bool directed = false) {
    if (n == 0) throw ParameterError("n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("link probability must lie in [0,1]");
    SwitchingPolicy pol;
    pol.kind_ = PolicyKind::GilbertRegenerate;
    pol.n_ = n;
    pol.link_p_ = p;
    pol.directed_gilbert_ = directed;
    return pol;
  }

  PolicyKind kind() const noexcept { return kind_; }
  std::size_t node_count() const noexcept { return n_; }

  /// The finite set L (or the period, for Periodic). Empty for GilbertRegenerate.
  const std::vector<GraphPtr> &graphs() const noexcept { return set_; }
  const std::vector<double> &weights() const noexcept { return weights_; }
  const std::vector<std::size_t> &indices() const noexcept { return indices_; }
  double link_probability() const noexcept { return link_p_; }
  bool gilbert_directed() const noexcept { return directed_gilbert_; }

  bool undirected() const noexcept {
    if (kind_ == PolicyKind::GilbertRegenerate) return !directed_gilbert_;
    for (const auto &g : set_)
      if (g->directed()) return false;
    return true;
  }

  /// A_t under master seed `seed`.
  GraphPtr matrix_at(std::uint64_t seed, std::uint64_t t) const {
    switch (kind_) {
    case PolicyKind::IidUniform: {
      const double u = hashed_uniform({seed, stream::switching, t});
      return set_[std::min(static_cast<std::size_t>(u * static_cast<double>(set_.size())), set_.size() - 1)];
    }
    case PolicyKind::IidWeighted: {
      const double u = hashed_uniform({seed, stream::switching, t});
      std::size_t i = 0;
      while (i + 1 < cumulative_.size() && u >= cumulative_[i]) ++i;
      return set_[i];
    }
    case PolicyKind::Periodic: return set_[t % set_.size()];
    case PolicyKind::FixedTrace: return set_[indices_[t % indices_.size()]];
    case PolicyKind::GilbertRegenerate:
      return std::make_shared<const Graph>(
          gen_gilbert(n_, link_p_, hash_key({seed, stream::gilbert, t}), directed_gilbert_));
    }
    return nullptr;
  }

private:
  SwitchingPolicy() = default;
  SwitchingPolicy(PolicyKind kind, std::vector<Graph> set) : kind_(kind) {
    if (set.empty()) throw ParameterError("switching policy needs at least one graph");
    n_ = set.front().size();
    for (auto &g : set) {
      if (g.size() != n_) throw DimensionError("all graphs of a policy must share the node count");
      set_.push_back(std::make_shared<const Graph>(std::move(g)));
    }
  }

  PolicyKind kind_ = PolicyKind::IidUniform;
  std::size_t n_ = 0;
  std::vector<GraphPtr> set_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> indices_;
  double link_p_ = 0.0;
  bool directed_gilbert_ = false;
};

/// Position in a switching process: policy, master seed and time index.
struct SwitchState {
  std::shared_ptr<const SwitchingPolicy> policy;
  std::uint64_t seed = 0;
  std::uint64_t t = 0;
};

/// Returns A_t and the state advanced to t + 1.
inline std::pair<GraphPtr, SwitchState> matrix_at(const SwitchState &s) {
  SwitchState next = s;
  ++next.t;
  return {s.policy->matrix_at(s.seed, s.t), next};
}

/// The first T matrices a fresh SwitchState emits.
inline std::vector<Graph> sample_sequence(const SwitchingPolicy &policy, std::size_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw ParameterError("horizon must be at least 1");
  std::vector<Graph> out;
  out.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) out.push_back(*policy.matrix_at(seed, t));
  return out;
}

} // namespace sisnet

#endif // SISNET_SWITCHING_HPP
