#include <string>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "tline/config.hpp"
#include "tline/presets.hpp"

using namespace tline;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {
const char* kMinimal = R"(# 1 kohm source, open end
line.length_m = 8
line.zc_ohm = 50
line.v0_fraction_c = 0.7
source.zg_ohm = 1000
load.kind = open
wave.kind = step
wave.tc_s = 1e-7
)";

std::string expect_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "<no error>";
}
}  // namespace

TEST_CASE("minimal config with defaults", "[config]") {
  const RunConfig cfg = parse_config(kMinimal, "fig");
  CHECK(cfg.name == "fig");
  CHECK(cfg.scenario.line() == reference_line());
  CHECK(cfg.scenario.source_impedance() == 1000.0);
  CHECK(std::holds_alternative<Open>(cfg.scenario.termination()));
  const auto& step = std::get<Step>(cfg.scenario.waveform());
  CHECK(step.v0 == 1.0);
  CHECK(step.tc == 1e-7);
  CHECK(cfg.methods == std::vector<Method>{Method::analytic});
  CHECK(cfg.fdtd_nx == kDefaultFdtdCells);
  CHECK(cfg.grid.t_start() == 0.0);
  CHECK_THAT(cfg.grid.t_end(), WithinRel(1e-7 + 10.0 * reference_line().round_trip(), 1e-15));
  CHECK(cfg.grid.size() == kDefaultGridSamples);
}

TEST_CASE("source impedance defaults to a matched source", "[config]") {
  std::string text = kMinimal;
  text.erase(text.find("source.zg_ohm"), std::string("source.zg_ohm = 1000\n").size());
  CHECK(parse_config(text).scenario.source_impedance() == 50.0);
}

TEST_CASE("pulse edges must be ordered", "[config]") {
  const std::string base = "line.length_m = 8\nline.zc_ohm = 50\nline.v0_fraction_c = 0.7\nload.kind = open\n"
                           "wave.kind = pulse\n";
  CHECK(expect_error(base + "wave.ta_s = 6.5e-8\nwave.tb_s = 5e-8\n") == "wave.tb_s");
  CHECK(expect_error(base + "wave.ta_s = 5e-8\nwave.tb_s = 5e-8\n") == "wave.tb_s");
  CHECK(expect_error(base + "wave.ta_s = 5e-8\n") == "wave.tb_s");
  const RunConfig ok = parse_config(base + "wave.ta_s = 5e-8\nwave.tb_s = 6.5e-8\nwave.v0_v = 2\n");
  CHECK(std::get<Pulse>(ok.scenario.waveform()).v0 == 2.0);
}

TEST_CASE("reactive loads parse with their parameter", "[config]") {
  std::string text = kMinimal;
  text.replace(text.find("load.kind = open"), 16, "load.kind = inductive\nload.l_h = 3e-6");
  const RunConfig cfg = parse_config(text);
  CHECK(std::get<Inductive>(cfg.scenario.termination()).henries == 3e-6);
  text = kMinimal;
  text.replace(text.find("load.kind = open"), 16, "load.kind = inductive");
  CHECK(expect_error(text) == "load.l_h");
}

TEST_CASE("malformed configs name the offending key", "[config]") {
  const std::string m = kMinimal;
  CHECK(expect_error(m + "load.colour = red\n") == "load.colour");
  CHECK(expect_error(m + "line.zc_ohm = 75\n") == "line.zc_ohm");
  CHECK(expect_error(m + "load.r_ohm = 75\n") == "load.r_ohm");  // present but unused by an open load
  CHECK(expect_error(m + "fdtd.nx = 8\n") == "fdtd.nx");
  CHECK(expect_error(m + "grid.n = 1\n") == "grid.n");
  CHECK(expect_error(m + "grid.t_end_s = -1\n") == "grid.t_end_s");
  CHECK(expect_error(m + "run.methods = magic\n") == "run.methods");
  CHECK(expect_error(m + "line.v0_m_per_s = 2e8\n") == "line.v0_m_per_s");
  std::string bad_number = m;
  bad_number.replace(bad_number.find("= 8"), 3, "= 8 m");
  CHECK(expect_error(bad_number) == "line.length_m");
  std::string no_length = m;
  no_length.erase(0, no_length.find("line.zc_ohm"));
  CHECK(expect_error(no_length) == "line.length_m");
  CHECK_THROWS_AS(parse_config("just some words\n"), ValidationError);
  CHECK(expect_error(m + "source.zg_ohm =\n") == "source.zg_ohm");
}

TEST_CASE("serialize then parse is the identity", "[config][property]") {
  testing::ScenarioGen gen(61);
  for (int n = 0; n < 200; ++n) {
    const LineSpec line = gen.line();
    const Scenario sc(line, gen.uniform(0.0, 5000.0), gen.any_load(), gen.waveform(line));
    RunConfig cfg{"rt", sc, SamplingGrid(gen.uniform(0.0, 1e-8), gen.uniform(2e-8, 1e-6), 2 + gen.index(5000))};
    cfg.fdtd_nx = 16 + gen.index(4000);
    cfg.methods = gen.index(2) ? std::vector<Method>{Method::fdtd, Method::analytic}
                               : std::vector<Method>{Method::bounce};
    cfg.emit = {Emit::svg, Emit::report};
    cfg.output_path = "out/dir";
    const std::string text = serialize_config(cfg);
    const RunConfig back = parse_config(text, "rt");
    REQUIRE(back == cfg);
    REQUIRE(serialize_config(back) == text);
  }
}

TEST_CASE("serialized numbers survive any double", "[config]") {
  for (double v : {0.1, 1.0 / 3.0, 2.998e8 * 0.7, 6.02214076e23, 5e-324, 1.7976931348623157e308}) {
    REQUIRE(config::parse_double("k", config::format_exact(v)) == v);
  }
}

TEST_CASE("presets", "[config]") {
  for (auto name : kPresetNames) {
    const RunConfig cfg = run_preset(name);
    CHECK(cfg.name == name);
    CHECK(cfg.scenario.line() == reference_line());
    CHECK(parse_config(serialize_config(cfg), cfg.name) == cfg);
  }
  const RunConfig a = run_preset("fig4a");
  CHECK(a.scenario.source_impedance() == 1000.0);
  CHECK(a.grid.t_end() == 1e-6);
  CHECK(std::get<Step>(a.scenario.waveform()).tc == 0.1e-6);
  const RunConfig p = run_preset("fig5b");
  CHECK(std::holds_alternative<Short>(p.scenario.termination()));
  CHECK(std::get<Pulse>(p.scenario.waveform()).tb == 65e-9);
  const RunConfig c = run_preset("fig6b");
  CHECK(std::get<Capacitive>(c.scenario.termination()).farads == 1e-9);
  CHECK(std::find(c.methods.begin(), c.methods.end(), Method::bounce) == c.methods.end());
  CHECK_THROWS_AS(run_preset("fig7"), ValidationError);
}
