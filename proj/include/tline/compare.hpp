#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tline/grid.hpp"
#include "tline/model.hpp"

namespace tline {

struct LabeledTrace {
  std::string label;
  Trace trace;
};

/// Samples this close to a discontinuity (in grid steps) are not compared.
inline constexpr double kGuardSteps = 2.0;

struct PairComparison {
  std::string first;
  std::string second;
  double max_abs = 0.0;  // volts
  double rms = 0.0;      // volts
  std::size_t excluded = 0;
  std::size_t total = 0;
};

struct ComparisonReport {
  std::vector<PairComparison> pairs;

  std::string format() const {
    std::ostringstream out;
    out.precision(6);
    for (const auto& p : pairs) {
      out << p.first << " vs " << p.second << ": max_abs=" << std::scientific << p.max_abs
          << " V rms=" << p.rms << " V excluded=" << std::defaultfloat << p.excluded << '/' << p.total << '\n';
    }
    return out.str();
  }
};

/// Source edges and every echo of them: edge + k * 2l/v_0 for k >= 0, up to t_end.
inline std::vector<double> discontinuity_times(const Scenario& sc, double t_end) {
  std::vector<double> edges =
      std::visit(overloaded{[](const Step& s) { return std::vector<double>{s.tc}; },
                            [](const Pulse& p) { return std::vector<double>{p.ta, p.tb}; }},
                 sc.waveform());
  const double period = sc.line().round_trip();
  std::vector<double> out;
  for (double edge : edges) {
    for (std::size_t k = 0;; ++k) {
      const double t = edge + static_cast<double>(k) * period;
      if (t > t_end) break;
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Guard mask: true where a sample lies within kGuardSteps grid steps of a discontinuity.
inline std::vector<bool> guard_mask(const Scenario& sc, const Trace& grid_trace) {
  std::vector<bool> mask(grid_trace.size(), false);
  if (grid_trace.empty()) return mask;
  const double guard = kGuardSteps * grid_trace.dt();
  const double t_last = grid_trace.time(grid_trace.size() - 1);
  for (double d : discontinuity_times(sc, t_last + guard)) {
    const double lo = std::ceil((d - guard - grid_trace.t0()) / grid_trace.dt());
    const double hi = std::floor((d + guard - grid_trace.t0()) / grid_trace.dt());
    for (double k = std::max(lo, 0.0); k <= hi && k < static_cast<double>(mask.size()); k += 1.0) {
      mask[static_cast<std::size_t>(k)] = true;
    }
  }
  return mask;
}

/// Max-abs and RMS differences for every pair of traces, outside the guard bands.
inline ComparisonReport compare(const Scenario& sc, const std::vector<LabeledTrace>& traces) {
  if (traces.size() < 2) throw ValidationError("compare", "needs at least two traces");
  for (const auto& t : traces) {
    if (!t.trace.same_grid(traces.front().trace)) {
      throw ValidationError("compare", "trace '" + t.label + "' is on a different grid");
    }
  }
  const std::vector<bool> mask = guard_mask(sc, traces.front().trace);
  ComparisonReport report;
  for (std::size_t a = 0; a < traces.size(); ++a) {
    for (std::size_t b = a + 1; b < traces.size(); ++b) {
      PairComparison p{traces[a].label, traces[b].label};
      p.total = mask.size();
      double sum_sq = 0.0;
      for (std::size_t k = 0; k < mask.size(); ++k) {
        if (mask[k]) {
          ++p.excluded;
          continue;
        }
        const double e = std::abs(traces[a].trace[k] - traces[b].trace[k]);
        p.max_abs = std::max(p.max_abs, e);
        sum_sq += e * e;
      }
      if (p.excluded == p.total) throw ValidationError("compare", "every sample falls inside a discontinuity guard band");
      p.rms = std::sqrt(sum_sq / static_cast<double>(p.total - p.excluded));
      report.pairs.push_back(p);
    }
  }
  return report;
}

}  // namespace tline
