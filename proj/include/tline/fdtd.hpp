#pragma once

// 1-D leapfrog integration of the lossless telegrapher equations
//
//   dv/dx = -L' di/dt,   di/dx = -C' dv/dt
//
// Voltages live on nx + 1 integer nodes at integer time steps, currents on
// the nx half nodes at half steps. The step is fixed at dt = dx / v_0, where
// interior transport is exact; all discretization error comes from the two
// boundary half cells.
//
// Boundaries carry a half cell of line capacitance C' dx / 2 and are closed
// with the terminal element using trapezoidal averages:
//   source:     Thevenin v_s in series with Z_g
//   resistive:  (v^{n+1} + v^n) / 2R
//   inductor:   i_L^{n+1} = i_L^n + dt/(2L) (v^{n+1} + v^n)
//   capacitor:  v_C^{n+1} = v_C^n + dt/(2C) (i^{n+1} + i^n)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "tline/grid.hpp"
#include "tline/model.hpp"

namespace tline {

inline constexpr std::size_t kMinFdtdCells = 16;

struct FdtdState {
  std::vector<double> v;  // nx + 1 nodes, time n
  std::vector<double> i;  // nx half nodes, time n - 1/2
  double dx = 0.0;
  double dt = 0.0;
  double aux = 0.0;  // inductor current or capacitor voltage at the load
  std::size_t step = 0;

  double time() const noexcept { return static_cast<double>(step) * dt; }
};

class FdtdSolver {
 public:
  FdtdSolver(const Scenario& scenario, std::size_t nx) : scenario_(scenario) {
    if (nx < kMinFdtdCells) throw ValidationError("fdtd.nx", "must be >= 16");
    const LineSpec& line = scenario.line();
    const PerUnitLength pul = per_unit_length(line);
    state_.dx = line.length() / static_cast<double>(nx);
    state_.dt = state_.dx / line.speed();
    state_.v.assign(nx + 1, 0.0);
    state_.i.assign(nx, 0.0);
    current_gain_ = state_.dt / (pul.inductance * state_.dx);
    voltage_gain_ = state_.dt / (pul.capacitance * state_.dx);
    half_cell_ = pul.capacitance * state_.dx / (2.0 * state_.dt);
  }

  const FdtdState& state() const noexcept { return state_; }
  double source_node_voltage() const noexcept { return state_.v.front(); }
  double load_node_voltage() const noexcept { return state_.v.back(); }

  void step() {
    auto& v = state_.v;
    auto& i = state_.i;
    const std::size_t nx = i.size();

    for (std::size_t j = 0; j < nx; ++j) i[j] -= current_gain_ * (v[j + 1] - v[j]);
    for (std::size_t j = 1; j < nx; ++j) v[j] -= voltage_gain_ * (i[j] - i[j - 1]);

    const double t_now = state_.time();
    const double t_next = static_cast<double>(state_.step + 1) * state_.dt;
    // The line starts de-energized, so the source reads 0 at the initial instant
    // even when the waveform switches on at t = 0.
    const double vs_now = state_.step == 0 ? 0.0 : waveform_value(scenario_.waveform(), t_now);
    update_source(vs_now, waveform_value(scenario_.waveform(), t_next));
    update_load(i[nx - 1]);
    ++state_.step;
  }

 private:
  void update_source(double vs_now, double vs_next) {
    double& v = state_.v.front();
    const double zg = scenario_.source_impedance();
    if (zg == 0.0) {
      v = vs_next;
      return;
    }
    const double g = 1.0 / (2.0 * zg);
    v = ((half_cell_ - g) * v + g * (vs_now + vs_next) - state_.i.front()) / (half_cell_ + g);
  }

  void update_load(double i_in) {
    double& v = state_.v.back();
    const double c0 = half_cell_;
    const double dt = state_.dt;
    std::visit(overloaded{[&](const Resistive& r) {
                            if (r.ohms == 0.0) {
                              v = 0.0;
                              return;
                            }
                            const double g = 1.0 / (2.0 * r.ohms);
                            v = ((c0 - g) * v + i_in) / (c0 + g);
                          },
                          [&](const Open&) { v += i_in / c0; },
                          [&](const Short&) { v = 0.0; },
                          [&](const Inductive& l) {
                            const double g = dt / (4.0 * l.henries);
                            const double v_old = v;
                            v = ((c0 - g) * v_old + i_in - state_.aux) / (c0 + g);
                            state_.aux += dt / (2.0 * l.henries) * (v + v_old);
                          },
                          [&](const Capacitive& c) {
                            v += i_in / (c0 + c.farads / dt);
                            state_.aux = v;
                          }},
               scenario_.termination());
  }

  Scenario scenario_;
  FdtdState state_;
  double current_gain_ = 0.0;
  double voltage_gain_ = 0.0;
  double half_cell_ = 0.0;
};

/// Generator-node voltage at every FDTD step from t = 0 through t_end.
inline Trace simulate_fdtd(const Scenario& sc, std::size_t nx, double t_end) {
  FdtdSolver solver(sc, nx);
  const double dt = solver.state().dt;
  const auto steps = static_cast<std::size_t>(std::ceil(std::max(t_end, 0.0) / dt));
  std::vector<double> out;
  out.reserve(steps + 1);
  out.push_back(solver.source_node_voltage());
  for (std::size_t n = 0; n < steps; ++n) {
    solver.step();
    out.push_back(solver.source_node_voltage());
  }
  return Trace(0.0, dt, std::move(out));
}

/// Nearest-sample resampling onto `grid`; times outside the trace clamp to its ends.
inline Trace resample_nearest(const Trace& trace, const SamplingGrid& grid) {
  if (trace.empty()) throw ValidationError("trace", "cannot resample an empty trace");
  const double last = static_cast<double>(trace.size() - 1);
  return sample(grid, [&](double t) {
    const double k = std::clamp(std::round((t - trace.t0()) / trace.dt()), 0.0, last);
    return trace[static_cast<std::size_t>(k)];
  });
}

/// FDTD run covering `grid`, returned on that grid.
inline Trace simulate_fdtd(const Scenario& sc, std::size_t nx, const SamplingGrid& grid) {
  return resample_nearest(simulate_fdtd(sc, nx, grid.t_end()), grid);
}

}  // namespace tline
