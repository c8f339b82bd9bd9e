#pragma once

// Closed-form generator-node voltage v_g(t).
//
// Resistive loads: the inverse transform of the reflection series is a sum
// of delayed, scaled copies of v_s,
//
//   v_g(t) = a { v_s(t) + (1 + G_g) sum_k G_g^k G_L^{k+1} v_s(t - (k+1) T) }
//
// with a = Z_c/(Z_g + Z_c) and T = 2 l / v_0. Truncating at k = N is exact
// for t < t_onset + (N + 1) T.
//
// Reactive loads are only available with a matched source and a step input,
// where each echo is a single first-order exponential.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "tline/grid.hpp"
#include "tline/model.hpp"

namespace tline {

struct TruncationPlan {
  std::size_t n_terms;  // highest retained series index k
  double valid_until;   // exact for t < valid_until
};

/// Smallest truncation whose validity window extends past `t_end`.
inline TruncationPlan terms_needed(const Scenario& sc, double t_end) {
  const double t0 = onset(sc.waveform());
  const double period = sc.line().round_trip();
  if (!(t_end >= t0)) throw ValidationError("grid.t_end_s", "must not precede the waveform onset");
  auto limit = [&](std::size_t n) { return t0 + static_cast<double>(n + 1) * period; };
  auto n = static_cast<std::size_t>(std::floor((t_end - t0) / period));
  while (limit(n) <= t_end) ++n;
  while (n > 0 && limit(n - 1) > t_end) --n;
  return {n, limit(n)};
}

namespace analytic {

inline void require_resistive(const Scenario& sc) {
  if (is_reactive(sc.termination())) {
    throw UnsupportedFormulaError(termination_name(sc.termination()) +
                                  " load: the resistive delayed-copy formula does not apply; use the reactive transient");
  }
}

inline void require_matched_step(const Scenario& sc) {
  const std::string load = termination_name(sc.termination());
  if (!is_matched_source(sc)) {
    throw UnsupportedFormulaError(load + " load: closed form exists only for a source matched to Z_c");
  }
  if (!std::holds_alternative<Step>(sc.waveform())) {
    throw UnsupportedFormulaError(load + " load: closed form exists only for a step input");
  }
}

/// Point evaluation of the truncated series.
inline double resistive_value(const Scenario& sc, double t, std::size_t n_terms) {
  const Waveform& w = sc.waveform();
  const double t0 = onset(w);
  const double period = sc.line().round_trip();
  const double gg = source_reflection_coefficient(sc);
  const double gl = load_reflection_coefficient(sc.termination(), sc.line().char_impedance());
  double echoes = 0.0;
  double coeff = gl;
  for (std::size_t k = 0; k <= n_terms; ++k) {
    const double delayed = t - static_cast<double>(k + 1) * period;
    if (delayed < t0) break;  // this and every later copy is still zero
    echoes += coeff * waveform_value(w, delayed);
    coeff *= gg * gl;
  }
  return launch_fraction(sc) * (waveform_value(w, t) + (1.0 + gg) * echoes);
}

inline double matched_value(const Scenario& sc, double t) {
  const Waveform& w = sc.waveform();
  const double gl = load_reflection_coefficient(sc.termination(), sc.line().char_impedance());
  return 0.5 * (waveform_value(w, t) + gl * waveform_value(w, t - sc.line().round_trip()));
}

/// Shared shape of the reactive echoes: v0/2 {u(t - tc) + u(t - te) f(t - te)}.
template <class Echo>
double reactive_value(const Scenario& sc, double t, Echo&& echo) {
  const auto& step = std::get<Step>(sc.waveform());
  const double arrival = step.tc + sc.line().round_trip();
  const double incident = heaviside(t - step.tc);
  const double reflected = t - arrival >= 0.0 ? echo(t - arrival) : 0.0;
  return 0.5 * step.v0 * (incident + reflected);
}

inline double inductive_time_constant(const Scenario& sc) {
  return std::get<Inductive>(sc.termination()).henries / sc.line().char_impedance();
}

inline double capacitive_time_constant(const Scenario& sc) {
  return sc.line().char_impedance() * std::get<Capacitive>(sc.termination()).farads;
}

/// v_g(t) for the inductive load: the echo starts at +v0/2 and decays to -v0/2.
inline auto inductive_response(const Scenario& sc) {
  require_matched_step(sc);
  const double tau = inductive_time_constant(sc);
  return [sc, tau](double t) {
    return reactive_value(sc, t, [tau](double x) { return 2.0 * std::exp(-x / tau) - 1.0; });
  };
}

/// v_g(t) for the capacitive load: the echo starts at -v0/2 and rises to +v0/2.
inline auto capacitive_response(const Scenario& sc) {
  require_matched_step(sc);
  const double tau = capacitive_time_constant(sc);
  return [sc, tau](double t) {
    return reactive_value(sc, t, [tau](double x) { return 1.0 - 2.0 * std::exp(-x / tau); });
  };
}

}  // namespace analytic

inline Trace transient_resistive(const Scenario& sc, const SamplingGrid& grid, std::size_t n_terms) {
  analytic::require_resistive(sc);
  return sample(grid, [&](double t) { return analytic::resistive_value(sc, t, n_terms); });
}

inline Trace transient_resistive(const Scenario& sc, const SamplingGrid& grid) {
  analytic::require_resistive(sc);
  const double t_end = std::max(grid.t_end(), onset(sc.waveform()));
  return transient_resistive(sc, grid, terms_needed(sc, t_end).n_terms);
}

/// Matched generator: only the first echo survives.
inline Trace transient_matched(const Scenario& sc, const SamplingGrid& grid) {
  analytic::require_resistive(sc);
  if (!is_matched_source(sc)) {
    throw UnsupportedFormulaError("matched-source formula requires Z_g = Z_c");
  }
  return sample(grid, [&](double t) { return analytic::matched_value(sc, t); });
}

/// Step into a matched line ending in an inductor, tau_L = L / Z_c.
inline Trace transient_inductive(const Scenario& sc, const SamplingGrid& grid) {
  if (!std::holds_alternative<Inductive>(sc.termination())) {
    throw UnsupportedFormulaError("inductive formula requires an inductive load");
  }
  return sample(grid, analytic::inductive_response(sc));
}

/// Step into a matched line ending in a capacitor, tau_C = Z_c C.
inline Trace transient_capacitive(const Scenario& sc, const SamplingGrid& grid) {
  if (!std::holds_alternative<Capacitive>(sc.termination())) {
    throw UnsupportedFormulaError("capacitive formula requires a capacitive load");
  }
  return sample(grid, analytic::capacitive_response(sc));
}

/// Most specific closed form for the scenario.
inline Trace transient(const Scenario& sc, const SamplingGrid& grid) {
  return std::visit(overloaded{[&](const Inductive&) { return transient_inductive(sc, grid); },
                               [&](const Capacitive&) { return transient_capacitive(sc, grid); },
                               [&](const auto&) {
                                 return is_matched_source(sc) ? transient_matched(sc, grid)
                                                              : transient_resistive(sc, grid);
                               }},
                    sc.termination());
}

/// Point-wise form of `transient`, valid up to `t_end`.
inline std::function<double(double)> response_function(const Scenario& sc, double t_end) {
  if (std::holds_alternative<Inductive>(sc.termination())) return analytic::inductive_response(sc);
  if (std::holds_alternative<Capacitive>(sc.termination())) return analytic::capacitive_response(sc);
  if (is_matched_source(sc)) return [sc](double t) { return analytic::matched_value(sc, t); };
  const std::size_t n = terms_needed(sc, std::max(t_end, onset(sc.waveform()))).n_terms;
  return [sc, n](double t) { return analytic::resistive_value(sc, t, n); };
}

}  // namespace tline
