#pragma once

// Bounce-diagram (lattice) simulator. Wavefronts are whole shifted copies of
// the launched waveform, propagated one leg at a time through an event
// queue; the generator voltage is the launched wave plus every backward
// arrival weighted by (1 + G_g).

#include <cstddef>
#include <queue>
#include <vector>

#include "tline/grid.hpp"
#include "tline/model.hpp"

namespace tline {

enum class Direction { forward, backward };

struct BounceEvent {
  double arrival_time;     // leading edge reaches the far end of its leg
  double amplitude;        // scale relative to v_s, including the launch divider
  Direction direction;     // forward legs end at the load, backward legs at the source
  std::size_t generation;  // completed round trips before this leg started
};

namespace bounce {

struct Wavefront {
  double amplitude;
  double delay;  // time since launch at which the leading edge leaves its boundary
  Direction direction;
  std::size_t generation;
};

struct Lattice {
  std::vector<BounceEvent> events;
  /// Waves absorbed at the source node: (amplitude, cumulative delay).
  std::vector<std::pair<double, double>> source_arrivals;
};

inline Lattice propagate(const Scenario& sc, double t_end) {
  if (is_reactive(sc.termination())) {
    throw UnsupportedFormulaError(termination_name(sc.termination()) +
                                  " load: reflection from a reactive load is a convolution, not a scalar bounce");
  }
  const double leg = sc.line().transit_time();
  const double zc = sc.line().char_impedance();
  const double gamma_load = load_reflection_coefficient(sc.termination(), zc);
  const double gamma_source = source_reflection_coefficient(sc);
  const double t0 = onset(sc.waveform());

  auto later = [](const Wavefront& a, const Wavefront& b) { return a.delay > b.delay; };
  std::priority_queue<Wavefront, std::vector<Wavefront>, decltype(later)> queue(later);
  const double launch = launch_fraction(sc);
  if (launch != 0.0) queue.push({launch, 0.0, Direction::forward, 0});

  Lattice lattice;
  while (!queue.empty()) {
    Wavefront w = queue.top();
    queue.pop();
    const double arrival = w.delay + leg;
    if (t0 + arrival > t_end) continue;
    lattice.events.push_back({t0 + arrival, w.amplitude, w.direction, w.generation});
    if (w.direction == Direction::forward) {
      const double reflected = w.amplitude * gamma_load;
      if (reflected != 0.0) queue.push({reflected, arrival, Direction::backward, w.generation});
    } else {
      lattice.source_arrivals.emplace_back(w.amplitude, arrival);
      const double reflected = w.amplitude * gamma_source;
      if (reflected != 0.0) queue.push({reflected, arrival, Direction::forward, w.generation + 1});
    }
  }
  return lattice;
}

}  // namespace bounce

/// Every wavefront arrival up to `t_end`, in time order.
inline std::vector<BounceEvent> bounce_events(const Scenario& sc, double t_end) {
  return bounce::propagate(sc, t_end).events;
}

inline Trace simulate_bounce(const Scenario& sc, double t_end, const SamplingGrid& grid) {
  const bounce::Lattice lattice = bounce::propagate(sc, t_end);
  const double transmitted = 1.0 + source_reflection_coefficient(sc);
  const Waveform& vs = sc.waveform();

  std::vector<Waveform> copies;
  copies.reserve(lattice.source_arrivals.size() + 1);
  copies.push_back(scale_waveform(vs, launch_fraction(sc)));
  for (const auto& [amplitude, delay] : lattice.source_arrivals) {
    copies.push_back(scale_waveform(shift_waveform(vs, delay), transmitted * amplitude));
  }
  return sample(grid, [&](double t) {
    double v = 0.0;
    for (const Waveform& c : copies) v += waveform_value(c, t);
    return v;
  });
}

}  // namespace tline
