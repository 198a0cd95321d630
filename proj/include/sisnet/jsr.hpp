#ifndef SISNET_JSR_HPP
#define SISNET_JSR_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sisnet/errors.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/matrix.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/spectral_radius.hpp"

namespace sisnet {

/// Nonempty finite set of square nonnegative matrices of one dimension.
class MatrixSet {
public:
  explicit MatrixSet(std::vector<Matrix> members) : members_(std::move(members)) {
    if (members_.empty()) throw ParameterError("matrix set must be nonempty");
    const std::size_t n = members_.front().size();
    symmetric_ = true;
    for (const auto &m : members_) {
      if (m.size() != n) throw DimensionError("matrix set members must share one dimension");
      if (!m.is_nonnegative()) throw ContractError("matrix set members must be nonnegative");
      symmetric_ = symmetric_ && m.is_symmetric();
    }
  }

  std::size_t count() const noexcept { return members_.size(); }
  std::size_t dimension() const noexcept { return members_.front().size(); }
  bool symmetric() const noexcept { return symmetric_; }
  const std::vector<Matrix> &members() const noexcept { return members_; }
  const Matrix &operator[](std::size_t i) const noexcept { return members_[i]; }

private:
  std::vector<Matrix> members_;
  bool symmetric_ = true;
};

/// {(1 - delta) I + beta A : A in graphs}.
inline MatrixSet build_system_set(std::span<const Graph> graphs, const EpidemicParams &params) {
  if (graphs.empty()) throw ParameterError("build_system_set: no graphs");
  std::vector<Matrix> ms;
  ms.reserve(graphs.size());
  for (const auto &g : graphs) {
    if (g.size() != graphs.front().size()) throw DimensionError("build_system_set: graphs differ in size");
    ms.push_back(system_matrix(g, params));
  }
  return MatrixSet(std::move(ms));
}

/// Induced-2 for symmetric sets (where it equals the spectral radius),
/// induced-1 otherwise.
inline NormId default_norm(const MatrixSet &set) noexcept {
  return set.symmetric() ? NormId::Induced2 : NormId::Induced1;
}

struct EnumerationBudget {
  double max_products = 1e6;  // |M|^k above this is refused up front
  double wall_seconds = 120.0;
};

namespace detail {

// Depth-first search over all ordered length-k products maximizing
// `measure(product)`. A prefix P is pruned when bound(P) * growth^remaining
// cannot beat the best value so far; `bound` must dominate `measure` and be
// submultiplicative with growth = max_i bound(M_i).
template <typename Measure, typename Bound>
double enumerate_products(const MatrixSet &set, std::size_t k, Measure &&measure, Bound &&bound,
                          const EnumerationBudget &budget) {
  if (k < 1) throw ParameterError("product length k must be at least 1");
  const double total = std::pow(static_cast<double>(set.count()), static_cast<double>(k));
  if (total > budget.max_products)
    throw ResourceError("enumerating " + std::to_string(set.count()) + "^" + std::to_string(k) +
                        " products exceeds the budget; use a smaller depth");

  double growth = 0.0;
  for (const auto &m : set.members()) growth = std::max(growth, bound(m));

  // One task per first-level branch; the best value is shared so that every
  // branch prunes against the global maximum found so far.
  const auto start = std::chrono::steady_clock::now();
  std::atomic<double> best{0.0};
  auto raise_best = [&best](double v) {
    double cur = best.load();
    while (v > cur && !best.compare_exchange_weak(cur, v)) {
    }
  };

  auto branch = [&](std::size_t first) {
    std::size_t visited = 0;
    std::function<void(const Matrix &, std::size_t)> visit = [&](const Matrix &prefix, std::size_t len) {
      if (++visited % 1024 == 0) {
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        if (el.count() > budget.wall_seconds) throw ResourceError("product enumeration exceeded its wall-clock budget");
      }
      if (len == k) {
        raise_best(measure(prefix));
        return;
      }
      if (bound(prefix) * std::pow(growth, static_cast<double>(k - len)) < best.load()) return;
      for (const auto &m : set.members()) visit(prefix * m, len + 1);
    };
    visit(set[first], 1);
  };

  if (k == 1 || set.count() == 1 || total < 4096) {
    for (std::size_t i = 0; i < set.count(); ++i) branch(i);
    return best.load();
  }
  std::vector<std::future<void>> tasks;
  for (std::size_t i = 0; i < set.count(); ++i) tasks.push_back(std::async(std::launch::async, branch, i));
  std::exception_ptr error;
  for (auto &t : tasks) {
    try {
      t.get();
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return best.load();
}

inline double cheap_norm_bound(const Matrix &m) noexcept {
  return std::min(norm_induced_1(m), norm_induced_inf(m));
}

} // namespace detail

/// Largest induced norm over all |M|^k ordered products of length k.
inline double rho_hat_k(const MatrixSet &set, std::size_t k, NormId norm, const EnumerationBudget &budget = {}) {
  auto f = [norm](const Matrix &m) { return induced_norm(m, norm); };
  return detail::enumerate_products(set, k, f, f, budget);
}

/// Largest spectral radius over all |M|^k ordered products of length k.
inline double rho_bar_k(const MatrixSet &set, std::size_t k, const EnumerationBudget &budget = {}) {
  return detail::enumerate_products(
      set, k, [](const Matrix &m) { return spectral_radius(m); },
      [](const Matrix &m) { return detail::cheap_norm_bound(m); }, budget);
}

/// Certified enclosure of the joint spectral radius.
struct JsrBracket {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t depth = 0;
  NormId norm = NormId::Induced1;
};

/// Exact JSR of a symmetric set: the largest member spectral radius.
inline double jsr_symmetric(const MatrixSet &set) {
  if (!set.symmetric()) throw ContractError("jsr_symmetric requires a set of symmetric matrices");
  double r = 0.0;
  for (const auto &m : set.members()) r = std::max(r, spectral_radius(m));
  return r;
}

struct BracketOptions {
  bool exact_shortcuts = true; // symmetric sets and singletons are solved in closed form
  EnumerationBudget budget{};
};

/// lower = max_{k <= depth} rho_bar_k^{1/k}, upper = min_{k <= depth} rho_hat_k^{1/k}.
///
/// With shortcuts enabled, symmetric sets return max_i rho(M_i) for both
/// bounds at depth 1 (induced-2 norm), and singletons return rho(M)
/// (Gelfand's formula). Otherwise products are enumerated depth by depth.
inline JsrBracket jsr_bracket(const MatrixSet &set, std::size_t max_depth, std::optional<NormId> norm = std::nullopt,
                              const BracketOptions &opt = {}) {
  if (max_depth < 1) throw ParameterError("max_depth must be at least 1");
  const NormId id = norm.value_or(default_norm(set));

  if (opt.exact_shortcuts && set.symmetric()) {
    const double r = jsr_symmetric(set);
    return {r, r, 1, NormId::Induced2};
  }
  if (opt.exact_shortcuts && set.count() == 1) {
    const double r = spectral_radius(set[0]);
    return {r, r, 1, id};
  }

  JsrBracket b{0.0, std::numeric_limits<double>::infinity(), max_depth, id};
  for (std::size_t k = 1; k <= max_depth; ++k) {
    const double inv = 1.0 / static_cast<double>(k);
    b.lower = std::max(b.lower, std::pow(rho_bar_k(set, k, opt.budget), inv));
    b.upper = std::min(b.upper, std::pow(rho_hat_k(set, k, id, opt.budget), inv));
  }
  return b;
}

/// Ordered product M_T ... M_1 of a time-ordered sequence (M_1 acts first).
inline Matrix ordered_product(std::span<const Matrix> seq) {
  if (seq.empty()) throw ParameterError("ordered_product: empty sequence");
  Matrix p = seq.front();
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].size() != p.size()) throw DimensionError("ordered_product: dimension mismatch");
    p = seq[i] * p;
  }
  return p;
}

/// Bracket on the growth rate of the one admissible switching sequence of a
/// periodic policy (period M_1..M_T repeated).
///
/// Upper: min over k <= max_depth of (max over phases of ||window of length k||)^{1/k}.
/// Lower: max over multiples k = mT <= max_depth of rho(window)^{1/k}, which
/// all equal rho(M_T ... M_1)^{1/T}; 0 if max_depth < T.
inline JsrBracket jsr_bracket_periodic(std::span<const Matrix> period, std::size_t max_depth,
                                       NormId norm = NormId::Induced1) {
  if (period.empty()) throw ParameterError("periodic bracket: empty period");
  if (max_depth < 1) throw ParameterError("max_depth must be at least 1");
  const std::size_t T = period.size();
  JsrBracket b{0.0, std::numeric_limits<double>::infinity(), max_depth, norm};

  // windows[phase] = product of the last k matrices starting at `phase`
  std::vector<Matrix> windows;
  for (std::size_t phase = 0; phase < T; ++phase) windows.push_back(period[phase]);
  for (std::size_t k = 1; k <= max_depth; ++k) {
    if (k > 1)
      for (std::size_t phase = 0; phase < T; ++phase) windows[phase] = period[(phase + k - 1) % T] * windows[phase];
    const double inv = 1.0 / static_cast<double>(k);
    double worst = 0.0;
    for (const auto &w : windows) worst = std::max(worst, induced_norm(w, norm));
    b.upper = std::min(b.upper, std::pow(worst, inv));
    if (k % T == 0) b.lower = std::max(b.lower, std::pow(spectral_radius(windows[0]), inv));
  }
  return b;
}

} // namespace sisnet

#endif // SISNET_JSR_HPP
