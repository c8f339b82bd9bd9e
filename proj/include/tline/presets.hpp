#pragma once

// Reference scenarios on an 8 m, 50 ohm line with v_0 = 0.7 c.
//   fig4a/b  1 kohm source, open/short load, 1 V step at 0.1 us, 0-1 us
//   fig5a/b  matched source, open/short load, 1 V pulse 50-65 ns, 0-200 ns
//   fig6a/b  matched source, 3 uH / 1 nF load, 1 V step at 5 ns, 0-400 ns

#include <array>
#include <string>
#include <string_view>

#include "tline/config.hpp"

namespace tline {

inline constexpr std::array<std::string_view, 6> kPresetNames{"fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b"};

inline LineSpec reference_line() { return LineSpec::with_velocity_factor(8.0, 50.0, 0.7); }

inline RunConfig run_preset(std::string_view name) {
  const LineSpec line = reference_line();
  auto make = [&](double zg, Termination term, Waveform wave, double t_end, std::vector<Method> methods) {
    RunConfig cfg{std::string(name), Scenario(line, zg, term, wave), SamplingGrid(0.0, t_end, kDefaultGridSamples)};
    cfg.methods = std::move(methods);
    cfg.emit = {Emit::csv, Emit::svg, Emit::report};
    return cfg;
  };
  const std::vector<Method> with_bounce{Method::analytic, Method::bounce, Method::fdtd};
  const std::vector<Method> reactive{Method::analytic, Method::fdtd};

  if (name == "fig4a") return make(1000.0, Open{}, Step{1.0, 0.1e-6}, 1e-6, with_bounce);
  if (name == "fig4b") return make(1000.0, Short{}, Step{1.0, 0.1e-6}, 1e-6, with_bounce);
  if (name == "fig5a") return make(50.0, Open{}, Pulse{1.0, 50e-9, 65e-9}, 200e-9, with_bounce);
  if (name == "fig5b") return make(50.0, Short{}, Pulse{1.0, 50e-9, 65e-9}, 200e-9, with_bounce);
  if (name == "fig6a") return make(50.0, Inductive{3e-6}, Step{1.0, 5e-9}, 400e-9, reactive);
  if (name == "fig6b") return make(50.0, Capacitive{1e-9}, Step{1.0, 5e-9}, 400e-9, reactive);
  throw ValidationError("preset", "unknown preset '" + std::string(name) + "' (fig4a, fig4b, fig5a, fig5b, fig6a, fig6b)");
}

}  // namespace tline
