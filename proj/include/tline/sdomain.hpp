#pragma once

// Complex-frequency evaluation of the driven line: source transforms, the
// input impedance of a terminated line and the generator-node transfer
// function Vg(s)/Vs(s) in closed and geometric-series form.
//
// Every expression is written in terms of exp(-2 s l / v_0) (or its
// reciprocal when Re(s) < 0) so that nothing grows like exp(+|s| l / v_0).

#include <cmath>
#include <complex>
#include <variant>

#include "tline/model.hpp"

namespace tline {

using Complex = std::complex<double>;

/// s = sigma + j omega, in 1/s.
using ComplexFreq = std::complex<double>;

/// Pole guard: |denominator| < kPoleTolerance * (1 + |numerator|).
inline constexpr double kPoleTolerance = 1e-12;

/// Either a finite complex impedance or an open circuit.
using LoadImpedance = std::variant<Open, Complex>;

namespace detail {

inline void require_finite(ComplexFreq s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw ValidationError("s", "complex frequency must be finite");
  }
}

/// exp(z) - 1 without cancellation near z = 0.
inline Complex expm1(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double half_sin = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin, std::exp(a) * std::sin(b)};
}

inline void check_pole(Complex numerator, Complex denominator, const char* what) {
  if (std::abs(denominator) < kPoleTolerance * (1.0 + std::abs(numerator))) {
    throw PoleError(std::string(what) + ": denominator vanishes (pole)");
  }
}

/// tanh(x) = m / p with both factors bounded for any finite x.
struct TanhParts {
  Complex m;
  Complex p;
};

inline TanhParts tanh_parts(Complex x) {
  if (x.real() >= 0.0) {
    const Complex em1 = expm1(-2.0 * x);  // e^{-2x} - 1
    return {-em1, 2.0 + em1};
  }
  const Complex em1 = expm1(2.0 * x);  // e^{2x} - 1
  return {em1, 2.0 + em1};
}

}  // namespace detail

/// Z_L(s) for a termination. Short gives 0 and open gives the open marker.
inline LoadImpedance termination_impedance(const Termination& term, ComplexFreq s) {
  detail::require_finite(s);
  return std::visit(overloaded{[](const Resistive& r) -> LoadImpedance { return Complex{r.ohms, 0.0}; },
                               [](const Open&) -> LoadImpedance { return Open{}; },
                               [](const Short&) -> LoadImpedance { return Complex{0.0, 0.0}; },
                               [s](const Inductive& l) -> LoadImpedance { return s * l.henries; },
                               [s](const Capacitive& c) -> LoadImpedance {
                                 if (s == ComplexFreq{0.0, 0.0}) {
                                   throw PoleError("capacitive load impedance has a pole at s = 0");
                                 }
                                 return 1.0 / (s * c.farads);
                               }},
                    term);
}

/// Gamma_L(s). The capacitor is written as (1 - s C Z_c)/(1 + s C Z_c) so
/// that s = 0 gives the DC-open limit 1 directly.
inline Complex load_reflection(const Termination& term, double z_c, ComplexFreq s) {
  detail::require_finite(s);
  return std::visit(overloaded{[z_c, s](const Inductive& l) {
                                 const Complex zl = s * l.henries;
                                 const Complex den = zl + z_c;
                                 detail::check_pole(zl - z_c, den, "inductive reflection coefficient");
                                 return (zl - z_c) / den;
                               },
                               [z_c, s](const Capacitive& c) {
                                 const Complex scz = s * (c.farads * z_c);
                                 const Complex den = 1.0 + scz;
                                 detail::check_pole(1.0 - scz, den, "capacitive reflection coefficient");
                                 return (1.0 - scz) / den;
                               },
                               [z_c, &term](const auto&) { return Complex{load_reflection_coefficient(term, z_c), 0.0}; }},
                    term);
}

/// Impedance seen looking into the terminated line,
///   Z_c [Z_L + Z_c tanh(s l / v_0)] / [Z_c + Z_L tanh(s l / v_0)].
inline Complex input_impedance(const LineSpec& line, const Termination& term, ComplexFreq s) {
  detail::require_finite(s);
  const double zc = line.char_impedance();
  const auto [m, p] = detail::tanh_parts(s * line.transit_time());
  const LoadImpedance zl = termination_impedance(term, s);
  if (std::holds_alternative<Open>(zl)) {
    const Complex num = zc * p;
    detail::check_pole(num, m, "input impedance");
    return num / m;
  }
  const Complex z = std::get<Complex>(zl);
  const Complex num = z * p + zc * m;
  const Complex den = zc * p + z * m;
  detail::check_pole(num, den, "input impedance");
  return zc * (num / den);
}

/// Laplace transform of the source waveform.
inline Complex source_transform(const Waveform& w, ComplexFreq s) {
  detail::require_finite(s);
  return std::visit(overloaded{[s](const Step& st) -> Complex {
                                 if (s == ComplexFreq{0.0, 0.0}) {
                                   throw PoleError("step transform has a pole at s = 0");
                                 }
                                 return st.v0 * std::exp(-s * st.tc) / s;
                               },
                               [s](const Pulse& p) -> Complex {
                                 const double width = p.tb - p.ta;
                                 if (s == ComplexFreq{0.0, 0.0}) return Complex{p.v0 * width, 0.0};
                                 // e^{-s ta} - e^{-s tb} = -e^{-s ta} (e^{-s w} - 1)
                                 return -p.v0 * std::exp(-s * p.ta) * detail::expm1(-s * width) / s;
                               }},
                    w);
}

/// exp(-2 s l / v_0)
inline Complex round_trip_factor(const LineSpec& line, ComplexFreq s) { return std::exp(-s * line.round_trip()); }

/// Ratio Gamma_g Gamma_L(s) exp(-2 s l / v_0) of the geometric series.
inline Complex series_ratio(const Scenario& sc, ComplexFreq s) {
  const Complex gl = load_reflection(sc.termination(), sc.line().char_impedance(), s);
  return source_reflection_coefficient(sc) * gl * round_trip_factor(sc.line(), s);
}

/// Closed-form Vg/Vs.
inline Complex transfer_exact(const Scenario& sc, ComplexFreq s) {
  detail::require_finite(s);
  const double a = launch_fraction(sc);
  const double gg = source_reflection_coefficient(sc);
  const Complex gl_e = load_reflection(sc.termination(), sc.line().char_impedance(), s) * round_trip_factor(sc.line(), s);
  const Complex num = a * (1.0 + gl_e);
  const Complex den = 1.0 - gg * gl_e;
  if (!std::isfinite(std::abs(num)) || !std::isfinite(std::abs(den))) {
    throw PoleError("transfer function overflows at this s");
  }
  detail::check_pole(num, den, "transfer function");
  return num / den;
}

/// Vg/Vs with the reflection series truncated after the term k = n_terms
/// (so n_terms + 1 echo terms are kept).
inline Complex transfer_series(const Scenario& sc, ComplexFreq s, std::size_t n_terms) {
  detail::require_finite(s);
  const double a = launch_fraction(sc);
  const double gg = source_reflection_coefficient(sc);
  const Complex gl_e = load_reflection(sc.termination(), sc.line().char_impedance(), s) * round_trip_factor(sc.line(), s);
  const Complex ratio = gg * gl_e;
  Complex term = gl_e;  // Gamma_g^k Gamma_L^{k+1} e^{-2(k+1) s l/v_0} at k = 0
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k <= n_terms; ++k) {
    sum += term;
    term *= ratio;
  }
  return a * (1.0 + (1.0 + gg) * sum);
}

}  // namespace tline
