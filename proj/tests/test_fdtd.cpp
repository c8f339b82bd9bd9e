#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "tline/analytic.hpp"
#include "tline/compare.hpp"
#include "tline/fdtd.hpp"

using namespace tline;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const LineSpec kLine = LineSpec::with_velocity_factor(8.0, 50.0, 0.7);
const double kT = kLine.round_trip();

/// Largest |fdtd - analytic| on a native-grid trace, skipping samples near edges.
double native_error(const Scenario& sc, const Trace& tr) {
  const auto exact = response_function(sc, tr.time(tr.size() - 1));
  const auto mask = guard_mask(sc, tr);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!mask[k]) worst = std::max(worst, std::abs(tr[k] - exact(tr.time(k))));
  }
  return worst;
}
}  // namespace

TEST_CASE("too few cells is rejected", "[fdtd]") {
  const Scenario sc(kLine, 50.0, Open{}, Step{1.0, 0.0});
  CHECK_THROWS_AS(FdtdSolver(sc, 15), ValidationError);
  CHECK_NOTHROW(FdtdSolver(sc, 16));
}

TEST_CASE("solver runs at the magic time step", "[fdtd]") {
  FdtdSolver solver(Scenario(kLine, 50.0, Open{}, Step{1.0, 0.0}), 100);
  CHECK_THAT(solver.state().dt * kLine.speed(), WithinRel(solver.state().dx, 1e-15));
  CHECK(solver.state().v.size() == 101);
  CHECK(solver.state().i.size() == 100);
}

TEST_CASE("matched source into a matched load settles at half the step", "[fdtd]") {
  const Scenario sc(kLine, 50.0, Resistive{50.0}, Step{1.0, 5e-9});
  const Trace tr = simulate_fdtd(sc, 256, 300e-9);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (tr.time(k) > 5e-9 + 2.0 * tr.dt()) REQUIRE_THAT(tr[k], WithinAbs(0.5, 1e-6));
  }
}

TEST_CASE("resistive loads are reproduced on the native grid", "[fdtd]") {
  for (const Termination& load : {Termination{Open{}}, Termination{Short{}}, Termination{Resistive{200.0}}}) {
    for (double zg : {1000.0, 50.0, 10.0}) {
      const Scenario sc(kLine, zg, load, Step{1.0, 0.1e-6});
      CHECK(native_error(sc, simulate_fdtd(sc, 512, 1e-6)) < 1e-9);
    }
  }
  const Scenario pulse(kLine, 50.0, Open{}, Pulse{1.0, 50e-9, 65e-9});
  CHECK(native_error(pulse, simulate_fdtd(pulse, 512, 200e-9)) < 1e-9);
}

TEST_CASE("1 kohm open-line staircase within 1 percent on the output grid", "[fdtd]") {
  const Scenario sc(kLine, 1000.0, Open{}, Step{1.0, 0.1e-6});
  const SamplingGrid grid(0.0, 1e-6, 2000);
  const Trace a = transient(sc, grid);
  const Trace f = simulate_fdtd(sc, 1024, grid);
  const auto r = compare(sc, {{"analytic", a}, {"fdtd", f}});
  CHECK(r.pairs[0].max_abs <= 0.01);
}

TEST_CASE("inductive decay constant from the simulated trace", "[fdtd]") {
  const Scenario sc(kLine, 50.0, Inductive{3e-6}, Step{1.0, 5e-9});
  const Trace tr = simulate_fdtd(sc, 1024, 400e-9);
  const double arrival = 5e-9 + kT;
  std::vector<double> t, y;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double x = tr.time(k) - arrival;
    if (x > 5e-9 && x < 200e-9) {
      t.push_back(tr.time(k));
      y.push_back(tr[k]);
    }
  }
  const double tau = -1.0 / testing::log_linear_slope(t, y);
  CHECK_THAT(tau, WithinRel(60e-9, 0.02));
}

TEST_CASE("reactive error halves when the mesh is refined", "[fdtd]") {
  for (const Termination& load : {Termination{Inductive{3e-6}}, Termination{Capacitive{1e-9}}}) {
    const Scenario sc(kLine, 50.0, load, Step{1.0, 0.0});
    const double coarse = native_error(sc, simulate_fdtd(sc, 256, 400e-9));
    const double fine = native_error(sc, simulate_fdtd(sc, 512, 400e-9));
    const double finer = native_error(sc, simulate_fdtd(sc, 1024, 400e-9));
    CHECK(fine < 0.6 * coarse);
    CHECK(finer < 0.6 * fine);
    CHECK(finer < 1e-3);
  }
}

TEST_CASE("stored energy never exceeds the energy delivered by the source", "[fdtd][property]") {
  testing::ScenarioGen gen(51);
  for (int n = 0; n < 20; ++n) {
    const LineSpec line = gen.line();
    const double zg = gen.uniform(5.0, 2000.0);
    const Termination load = n % 3 == 0 ? Termination{Open{}} : n % 3 == 1 ? gen.any_load() : Termination{Short{}};
    const Scenario sc(line, zg, load, Step{gen.uniform(0.5, 2.0), 0.0});
    FdtdSolver solver(sc, 64);
    const PerUnitLength pul = per_unit_length(line);
    const double dx = solver.state().dx;
    const double dt = solver.state().dt;
    double delivered = 0.0;
    for (int k = 0; k < 64 * 30; ++k) {
      const double vg = solver.source_node_voltage();
      solver.step();
      const double vg_next = solver.source_node_voltage();
      const double vs = amplitude(sc.waveform());
      const double vmid = 0.5 * (vg + vg_next);
      delivered += (vs - vmid) / zg * vmid * dt;
    }
    double stored = 0.0;
    const auto& st = solver.state();
    for (std::size_t j = 0; j < st.v.size(); ++j) {
      const double w = (j == 0 || j + 1 == st.v.size()) ? 0.5 : 1.0;
      stored += 0.5 * pul.capacitance * dx * w * st.v[j] * st.v[j];
    }
    for (double i : st.i) stored += 0.5 * pul.inductance * dx * i * i;
    if (const auto* l = std::get_if<Inductive>(&load)) stored += 0.5 * l->henries * st.aux * st.aux;
    if (const auto* c = std::get_if<Capacitive>(&load)) stored += 0.5 * c->farads * st.aux * st.aux;
    // the staggered current lags half a step, so allow a small slack
    REQUIRE(stored <= delivered * 1.02 + 1e-18);
  }
}

TEST_CASE("random resistive scenarios within 2 percent", "[fdtd][property]") {
  testing::ScenarioGen gen(52);
  for (int n = 0; n < 8; ++n) {
    const Scenario sc = gen.resistive_scenario();
    const double t_end = onset(sc.waveform()) + 6.0 * sc.line().round_trip();
    const SamplingGrid grid(0.0, t_end, 1500);
    const auto r = compare(sc, {{"analytic", transient(sc, grid)}, {"fdtd", simulate_fdtd(sc, 1024, grid)}});
    REQUIRE(r.pairs[0].max_abs <= 0.02 * amplitude(sc.waveform()));
  }
}
