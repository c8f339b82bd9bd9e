#pragma once

// Domain types for a lossless line driven by a resistive Thevenin source.
// All quantities are SI base units: meters, seconds, ohms, volts, henries,
// farads.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "tline/error.hpp"

namespace tline {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Relative tolerance under which a source counts as matched to the line.
inline constexpr double kMatchTolerance = 1e-12;

namespace detail {

inline void require_finite(double value, const char* key) {
  if (!std::isfinite(value)) throw ValidationError(key, "must be finite");
}

inline void require_positive(double value, const char* key) {
  require_finite(value, key);
  if (!(value > 0.0)) throw ValidationError(key, "must be > 0");
}

inline void require_non_negative(double value, const char* key) {
  require_finite(value, key);
  if (!(value >= 0.0)) throw ValidationError(key, "must be >= 0");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

using detail::overloaded;

/// Uniform lossless line: length, characteristic impedance Z_c and
/// propagation speed v_0.
class LineSpec {
 public:
  LineSpec(double length, double char_impedance, double speed)
      : length_(length), char_impedance_(char_impedance), speed_(speed) {
    detail::require_positive(length, "line.length_m");
    detail::require_positive(char_impedance, "line.zc_ohm");
    detail::require_positive(speed, "line.v0_m_per_s");
    if (speed > kSpeedOfLight) {
      throw ValidationError("line.v0_m_per_s", "must not exceed the vacuum speed of light");
    }
  }

  static LineSpec with_velocity_factor(double length, double char_impedance, double fraction_of_c) {
    return {length, char_impedance, fraction_of_c * kSpeedOfLight};
  }

  double length() const noexcept { return length_; }
  double char_impedance() const noexcept { return char_impedance_; }
  double speed() const noexcept { return speed_; }

  /// One-way delay l / v_0.
  double transit_time() const noexcept { return length_ / speed_; }
  /// Echo spacing 2 l / v_0.
  double round_trip() const noexcept { return 2.0 * length_ / speed_; }

  bool operator==(const LineSpec&) const = default;

 private:
  double length_;
  double char_impedance_;
  double speed_;
};

// ---------------------------------------------------------------------------
// Terminations

struct Resistive {
  double ohms;
  explicit Resistive(double r) : ohms(r) { detail::require_non_negative(r, "load.r_ohm"); }
  bool operator==(const Resistive&) const = default;
};

struct Open {
  bool operator==(const Open&) const = default;
};

struct Short {
  bool operator==(const Short&) const = default;
};

struct Inductive {
  double henries;
  explicit Inductive(double l) : henries(l) { detail::require_positive(l, "load.l_h"); }
  bool operator==(const Inductive&) const = default;
};

struct Capacitive {
  double farads;
  explicit Capacitive(double c) : farads(c) { detail::require_positive(c, "load.c_f"); }
  bool operator==(const Capacitive&) const = default;
};

using Termination = std::variant<Resistive, Open, Short, Inductive, Capacitive>;

inline bool is_reactive(const Termination& term) noexcept {
  return std::holds_alternative<Inductive>(term) || std::holds_alternative<Capacitive>(term);
}

inline std::string termination_name(const Termination& term) {
  return std::visit(overloaded{[](const Resistive&) { return std::string("resistive"); },
                               [](const Open&) { return std::string("open"); },
                               [](const Short&) { return std::string("short"); },
                               [](const Inductive&) { return std::string("inductive"); },
                               [](const Capacitive&) { return std::string("capacitive"); }},
                    term);
}

// ---------------------------------------------------------------------------
// Source waveforms

/// V_0 u(t - t_c)
struct Step {
  double v0;
  double tc;
  Step(double amplitude, double onset) : v0(amplitude), tc(onset) {
    detail::require_finite(amplitude, "wave.v0_v");
    detail::require_non_negative(onset, "wave.tc_s");
  }
  bool operator==(const Step&) const = default;
};

/// V_0 [u(t - t_a) - u(t - t_b)]
struct Pulse {
  double v0;
  double ta;
  double tb;
  Pulse(double amplitude, double start, double end) : v0(amplitude), ta(start), tb(end) {
    detail::require_finite(amplitude, "wave.v0_v");
    detail::require_non_negative(start, "wave.ta_s");
    detail::require_finite(end, "wave.tb_s");
    if (!(end > start)) throw ValidationError("wave.tb_s", "must be > wave.ta_s");
  }
  bool operator==(const Pulse&) const = default;
};

using Waveform = std::variant<Step, Pulse>;

/// Right-continuous unit step: u(0) = 1.
constexpr double heaviside(double x) noexcept { return x >= 0.0 ? 1.0 : 0.0; }

inline double amplitude(const Waveform& w) noexcept {
  return std::visit([](const auto& s) { return s.v0; }, w);
}

/// Earliest time at which the waveform can be non-zero.
inline double onset(const Waveform& w) noexcept {
  return std::visit(overloaded{[](const Step& s) { return s.tc; }, [](const Pulse& p) { return p.ta; }}, w);
}

inline double waveform_value(const Waveform& w, double t) noexcept {
  return std::visit(overloaded{[t](const Step& s) { return s.v0 * heaviside(t - s.tc); },
                               [t](const Pulse& p) {
                                 return (t - p.ta >= 0.0 && t - p.tb < 0.0) ? p.v0 : 0.0;
                               }},
                    w);
}

/// Delayed copy of `w`: the onset times move later by `delay`.
inline Waveform shift_waveform(const Waveform& w, double delay) {
  detail::require_non_negative(delay, "delay");
  return std::visit(overloaded{[delay](const Step& s) -> Waveform { return Step{s.v0, s.tc + delay}; },
                               [delay](const Pulse& p) -> Waveform {
                                 return Pulse{p.v0, p.ta + delay, p.tb + delay};
                               }},
                    w);
}

/// Same shape with the amplitude multiplied by `factor`.
inline Waveform scale_waveform(const Waveform& w, double factor) {
  return std::visit(overloaded{[factor](const Step& s) -> Waveform { return Step{s.v0 * factor, s.tc}; },
                               [factor](const Pulse& p) -> Waveform {
                                 return Pulse{p.v0 * factor, p.ta, p.tb};
                               }},
                    w);
}

// ---------------------------------------------------------------------------
// Scenario

class Scenario {
 public:
  Scenario(LineSpec line, double source_impedance, Termination termination, Waveform waveform)
      : line_(line), source_impedance_(source_impedance), termination_(termination), waveform_(waveform) {
    detail::require_non_negative(source_impedance, "source.zg_ohm");
  }

  const LineSpec& line() const noexcept { return line_; }
  double source_impedance() const noexcept { return source_impedance_; }
  const Termination& termination() const noexcept { return termination_; }
  const Waveform& waveform() const noexcept { return waveform_; }

  Scenario with_termination(Termination term) const { return {line_, source_impedance_, term, waveform_}; }
  Scenario with_waveform(Waveform w) const { return {line_, source_impedance_, termination_, w}; }

  bool operator==(const Scenario&) const = default;

 private:
  LineSpec line_;
  double source_impedance_;
  Termination termination_;
  Waveform waveform_;
};

// ---------------------------------------------------------------------------
// Reflection coefficients

/// (Z - Z_c) / (Z + Z_c) for a real impedance Z >= 0.
inline double reflection_coefficient(double z_load, double z_c) {
  detail::require_positive(z_c, "z_c");
  detail::require_non_negative(z_load, "z_load");
  return (z_load - z_c) / (z_load + z_c);
}

inline double reflection_coefficient(Open, double z_c) {
  detail::require_positive(z_c, "z_c");
  return 1.0;
}

/// Gamma_L for the frequency-independent terminations. Reactive loads have
/// an s-dependent coefficient and are rejected here.
inline double load_reflection_coefficient(const Termination& term, double z_c) {
  return std::visit(
      overloaded{[z_c](const Resistive& r) { return reflection_coefficient(r.ohms, z_c); },
                 [z_c](const Open& o) { return reflection_coefficient(o, z_c); },
                 [z_c](const Short&) { return reflection_coefficient(0.0, z_c); },
                 [](const auto&) -> double {
                   throw UnsupportedFormulaError("reactive termination has no frequency-independent reflection coefficient");
                 }},
      term);
}

/// Gamma_g, reflection of backward waves at the generator.
inline double source_reflection_coefficient(const Scenario& sc) {
  return reflection_coefficient(sc.source_impedance(), sc.line().char_impedance());
}

/// Launch divider Z_c / (Z_g + Z_c).
inline double launch_fraction(const Scenario& sc) {
  const double zc = sc.line().char_impedance();
  return zc / (sc.source_impedance() + zc);
}

inline bool is_matched_source(const Scenario& sc) noexcept {
  const double zc = sc.line().char_impedance();
  return std::abs(sc.source_impedance() - zc) <= kMatchTolerance * zc;
}

// ---------------------------------------------------------------------------
// Per-unit-length parameters

struct PerUnitLength {
  double inductance;   // H/m
  double capacitance;  // F/m
};

/// Inverts Z_c = sqrt(L'/C') and v_0 = 1/sqrt(L'C').
inline PerUnitLength per_unit_length(const LineSpec& line) noexcept {
  const double zc = line.char_impedance();
  const double v0 = line.speed();
  return {zc / v0, 1.0 / (zc * v0)};
}

// ---------------------------------------------------------------------------
// Traces

/// Uniformly sampled v_g(t): sample k is the value at t0 + k*dt.
class Trace {
 public:
  Trace(double t0, double dt, std::vector<double> samples) : t0_(t0), dt_(dt), samples_(std::move(samples)) {
    detail::require_finite(t0, "trace.t0");
    detail::require_positive(dt, "trace.dt");
    for (double v : samples_) {
      if (!std::isfinite(v)) throw ValidationError("trace.samples", "must be finite");
    }
  }

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double operator[](std::size_t k) const noexcept { return samples_[k]; }
  const std::vector<double>& samples() const noexcept { return samples_; }

  /// True when both traces sit on the same time grid.
  bool same_grid(const Trace& other) const noexcept {
    return size() == other.size() && t0_ == other.t0_ && dt_ == other.dt_;
  }

 private:
  double t0_;
  double dt_;
  std::vector<double> samples_;
};

}  // namespace tline
