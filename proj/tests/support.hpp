#pragma once

// Test-only helpers: seeded scenario generators and oracles that do not
// share code paths with the library formulas they check.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "tline/model.hpp"

namespace tline::testing {

class ScenarioGen {
 public:
  explicit ScenarioGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// Log-uniform on [lo, hi].
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  LineSpec line() { return LineSpec(uniform(0.5, 20.0), uniform(25.0, 120.0), uniform(0.5, 0.95) * kSpeedOfLight); }

  Termination resistive_load() {
    switch (index(3)) {
      case 0: return Open{};
      case 1: return Short{};
      default: return Resistive{uniform(0.0, 1e4)};
    }
  }

  Termination any_load() {
    switch (index(4)) {
      case 0: return Inductive{log_uniform(1e-8, 1e-4)};
      case 1: return Capacitive{log_uniform(1e-12, 1e-8)};
      default: return resistive_load();
    }
  }

  /// Step or pulse starting within the first two round trips of `line`.
  Waveform waveform(const LineSpec& line) {
    const double t0 = uniform(0.0, 2.0 * line.round_trip());
    const double v0 = uniform(0.2, 5.0);
    if (index(2) == 0) return Step{v0, t0};
    return Pulse{v0, t0, t0 + uniform(0.05, 1.5) * line.round_trip()};
  }

  Scenario resistive_scenario() {
    const LineSpec l = line();
    return {l, uniform(1.0, 1e4), resistive_load(), waveform(l)};
  }

 private:
  std::mt19937_64 rng_;
};

/// Wave-variable lattice for a step source: the plateau voltage at the
/// generator after `n` echoes. Forward total F_n = a V0 + G_g B_n, backward
/// total B_n = G_L F_{n-1}, node voltage F_n + B_n.
inline std::vector<double> lattice_step_levels(double zg, double zc, double gamma_load, double v0, std::size_t count) {
  const double a = zc / (zg + zc);
  const double gg = (zg - zc) / (zg + zc);
  std::vector<double> levels;
  double forward = a * v0;
  double backward = 0.0;
  levels.push_back(forward + backward);
  for (std::size_t n = 1; n < count; ++n) {
    backward = gamma_load * forward;
    forward = a * v0 + gg * backward;
    levels.push_back(forward + backward);
  }
  return levels;
}

/// Least-squares slope of log|y| against t.
inline double log_linear_slope(const std::vector<double>& t, const std::vector<double>& y) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double ly = std::log(std::abs(y[k]));
    st += t[k];
    sy += ly;
    stt += t[k] * t[k];
    sty += t[k] * ly;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace tline::testing
