#ifndef SISNET_CSV_HPP
#define SISNET_CSV_HPP

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "sisnet/meanfield.hpp"
#include "sisnet/montecarlo.hpp"

namespace sisnet {

/// Shortest round-trip decimal form; '.' separator regardless of locale.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// t,p_0,...,p_{n-1}
inline void write_trajectory_csv(std::ostream &out, const Trajectory &traj) {
  const std::size_t n = traj.empty() ? 0 : traj.front().size();
  out << "t";
  for (std::size_t i = 0; i < n; ++i) out << ",p_" << i;
  out << '\n';
  for (const auto &s : traj) {
    out << s.t;
    for (double v : s.p) out << ',' << format_number(v);
    out << '\n';
  }
}

/// t,run_0,...,run_{R-1}: infected fraction of each stochastic run.
inline void write_runs_csv(std::ostream &out, const std::vector<EpidemicRun> &runs) {
  out << "t";
  for (std::size_t r = 0; r < runs.size(); ++r) out << ",run_" << r;
  out << '\n';
  const std::size_t len = runs.empty() ? 0 : runs.front().series.size();
  for (std::size_t t = 0; t < len; ++t) {
    out << t;
    for (const auto &run : runs) out << ',' << format_number(run.series[t]);
    out << '\n';
  }
}

inline constexpr const char *sweep_csv_header =
    "beta,delta,jsr_lower,jsr_upper,product_rho,dieout_prob,final_frac_mean,final_frac_std,reps,T,seed";

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << sweep_csv_header << '\n';
  for (const auto &r : rows) {
    out << format_number(r.beta) << ',' << format_number(r.delta) << ',' << format_number(r.jsr_lower) << ','
        << format_number(r.jsr_upper) << ',' << format_number(r.product_rho) << ',' << format_number(r.dieout_prob)
        << ',' << format_number(r.final_frac_mean) << ',' << format_number(r.final_frac_std) << ',' << r.reps << ','
        << r.horizon << ',' << r.seed << '\n';
  }
}

} // namespace sisnet

#endif // SISNET_CSV_HPP
