#pragma once

// Run configuration: a flat `key = value` text format with dotted section
// keys and `#` comments.
//
//   line.length_m = 8
//   line.zc_ohm = 50
//   line.v0_fraction_c = 0.7         # or line.v0_m_per_s
//   source.zg_ohm = 1000             # default: line.zc_ohm
//   load.kind = open                 # resistive|open|short|inductive|capacitive
//   load.r_ohm | load.l_h | load.c_f
//   wave.kind = step                 # step|pulse
//   wave.v0_v = 1                    # default 1
//   wave.tc_s | wave.ta_s, wave.tb_s
//   grid.t_start_s, grid.t_end_s, grid.n
//   fdtd.nx = 1024
//   run.methods = analytic,bounce,fdtd
//   run.emit = csv,svg,report
//   run.out = out

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tline/grid.hpp"
#include "tline/model.hpp"

namespace tline {

enum class Method { analytic, bounce, fdtd };
enum class Emit { csv, svg, report };

inline constexpr std::size_t kDefaultFdtdCells = 1024;
inline constexpr std::size_t kDefaultGridSamples = 2000;

inline std::string method_name(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::bounce: return "bounce";
    case Method::fdtd: return "fdtd";
  }
  return "?";
}

inline std::string emit_name(Emit e) {
  switch (e) {
    case Emit::csv: return "csv";
    case Emit::svg: return "svg";
    case Emit::report: return "report";
  }
  return "?";
}

struct RunConfig {
  std::string name = "run";
  Scenario scenario;
  SamplingGrid grid;
  std::vector<Method> methods{Method::analytic};
  std::size_t fdtd_nx = kDefaultFdtdCells;
  std::filesystem::path output_path = ".";
  std::vector<Emit> emit{Emit::csv};

  bool operator==(const RunConfig&) const = default;
};

/// Raw `key -> value` entries, before validation.
using ConfigEntries = std::map<std::string, std::string>;

namespace config {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "line.length_m", "line.zc_ohm", "line.v0_fraction_c", "line.v0_m_per_s", "source.zg_ohm",
      "load.kind",     "load.r_ohm",  "load.l_h",           "load.c_f",        "wave.kind",
      "wave.v0_v",     "wave.tc_s",   "wave.ta_s",          "wave.tb_s",       "grid.t_start_s",
      "grid.t_end_s",  "grid.n",      "fdtd.nx",            "run.methods",     "run.emit",
      "run.out"};
  return keys;
}

inline double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ValidationError(key, "expected a number, got '" + text + "'");
  return value;
}

inline std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ValidationError(key, "expected a non-negative integer, got '" + text + "'");
  return value;
}

/// Shortest text that parses back to exactly `value`.
inline std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

class Reader {
 public:
  explicit Reader(const ConfigEntries& entries) : entries_(entries) {}

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::string required_text(const std::string& key) {
    auto v = text(key);
    if (!v) throw ValidationError(key, "required key is missing");
    return *v;
  }

  std::optional<double> number(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    return parse_double(key, *v);
  }

  double required_number(const std::string& key) { return parse_double(key, required_text(key)); }

  /// Rejects keys that are valid in general but meaningless for this config.
  void reject_unused() const {
    for (const auto& [key, value] : entries_) {
      if (!used_.count(key)) throw ValidationError(key, "not used by this configuration");
    }
  }

 private:
  const ConfigEntries& entries_;
  std::set<std::string> used_;
};

inline Termination read_termination(Reader& in) {
  const std::string kind = in.required_text("load.kind");
  if (kind == "resistive") return Resistive{in.required_number("load.r_ohm")};
  if (kind == "open") return Open{};
  if (kind == "short") return Short{};
  if (kind == "inductive") return Inductive{in.required_number("load.l_h")};
  if (kind == "capacitive") return Capacitive{in.required_number("load.c_f")};
  throw ValidationError("load.kind", "must be one of resistive, open, short, inductive, capacitive");
}

inline Waveform read_waveform(Reader& in) {
  const std::string kind = in.required_text("wave.kind");
  const double v0 = in.number("wave.v0_v").value_or(1.0);
  if (kind == "step") return Step{v0, in.number("wave.tc_s").value_or(0.0)};
  if (kind == "pulse") return Pulse{v0, in.required_number("wave.ta_s"), in.required_number("wave.tb_s")};
  throw ValidationError("wave.kind", "must be one of step, pulse");
}

inline LineSpec read_line(Reader& in) {
  const double length = in.required_number("line.length_m");
  const double zc = in.required_number("line.zc_ohm");
  const auto fraction = in.number("line.v0_fraction_c");
  const auto speed = in.number("line.v0_m_per_s");
  if (fraction && speed) throw ValidationError("line.v0_m_per_s", "give either line.v0_fraction_c or line.v0_m_per_s, not both");
  if (fraction) {
    detail::require_positive(*fraction, "line.v0_fraction_c");
    if (*fraction > 1.0) throw ValidationError("line.v0_fraction_c", "must be <= 1");
    return LineSpec::with_velocity_factor(length, zc, *fraction);
  }
  if (speed) return LineSpec(length, zc, *speed);
  throw ValidationError("line.v0_fraction_c", "required key is missing (or give line.v0_m_per_s)");
}

/// Window covering ten round trips past the last source edge.
inline SamplingGrid default_grid(const Scenario& sc) {
  const double last_edge = std::visit(overloaded{[](const Step& s) { return s.tc; }, [](const Pulse& p) { return p.tb; }},
                                      sc.waveform());
  return {0.0, last_edge + 10.0 * sc.line().round_trip(), kDefaultGridSamples};
}

inline std::vector<Method> read_methods(const std::string& key, const std::string& text) {
  std::vector<Method> out;
  for (const auto& item : split_list(text)) {
    std::vector<Method> add;
    if (item == "all") add = {Method::analytic, Method::bounce, Method::fdtd};
    else if (item == "analytic") add = {Method::analytic};
    else if (item == "bounce") add = {Method::bounce};
    else if (item == "fdtd") add = {Method::fdtd};
    else throw ValidationError(key, "unknown method '" + item + "' (analytic, bounce, fdtd, all)");
    for (Method m : add) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  if (out.empty()) throw ValidationError(key, "at least one method is required");
  return out;
}

inline std::vector<Emit> read_emit(const std::string& key, const std::string& text) {
  std::vector<Emit> out;
  for (const auto& item : split_list(text)) {
    Emit e;
    if (item == "csv") e = Emit::csv;
    else if (item == "svg") e = Emit::svg;
    else if (item == "report") e = Emit::report;
    else throw ValidationError(key, "unknown output '" + item + "' (csv, svg, report)");
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  if (out.empty()) throw ValidationError(key, "at least one output is required");
  return out;
}

}  // namespace config

/// Splits config text into entries; rejects unknown and repeated keys.
inline ConfigEntries parse_entries(std::string_view text) {
  ConfigEntries entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = config::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    std::string key(config::trim(line.substr(0, eq)));
    std::string value(config::trim(line.substr(eq + 1)));
    if (!config::known_keys().count(key)) throw ValidationError(key, "unknown key");
    if (value.empty()) throw ValidationError(key, "value is empty");
    if (!entries.emplace(key, value).second) throw ValidationError(key, "key given more than once");
  }
  return entries;
}

/// Validates entries into a RunConfig, applying defaults.
inline RunConfig build_config(const ConfigEntries& entries, std::string name = "run") {
  for (const auto& [key, value] : entries) {
    if (!config::known_keys().count(key)) throw ValidationError(key, "unknown key");
  }
  config::Reader in(entries);
  const LineSpec line = config::read_line(in);
  const double zg = in.number("source.zg_ohm").value_or(line.char_impedance());
  const Termination term = config::read_termination(in);
  const Waveform wave = config::read_waveform(in);
  const Scenario scenario(line, zg, term, wave);

  const SamplingGrid fallback = config::default_grid(scenario);
  const double t_start = in.number("grid.t_start_s").value_or(fallback.t_start());
  const double t_end = in.number("grid.t_end_s").value_or(fallback.t_end());
  const auto n_text = in.text("grid.n");
  const std::size_t n = n_text ? config::parse_count("grid.n", *n_text) : fallback.size();

  RunConfig cfg{std::move(name), scenario, SamplingGrid(t_start, t_end, n)};
  if (auto nx = in.text("fdtd.nx")) {
    cfg.fdtd_nx = config::parse_count("fdtd.nx", *nx);
    if (cfg.fdtd_nx < 16) throw ValidationError("fdtd.nx", "must be >= 16");
  }
  if (auto m = in.text("run.methods")) cfg.methods = config::read_methods("run.methods", *m);
  if (auto e = in.text("run.emit")) cfg.emit = config::read_emit("run.emit", *e);
  if (auto out = in.text("run.out")) cfg.output_path = *out;
  in.reject_unused();
  return cfg;
}

inline RunConfig parse_config(std::string_view text, std::string name = "run") {
  return build_config(parse_entries(text), std::move(name));
}

/// Config text that parses back to an equal RunConfig (excluding `name`).
inline std::string serialize_config(const RunConfig& cfg) {
  using config::format_exact;
  std::ostringstream out;
  const Scenario& sc = cfg.scenario;
  out << "line.length_m = " << format_exact(sc.line().length()) << '\n'
      << "line.zc_ohm = " << format_exact(sc.line().char_impedance()) << '\n'
      << "line.v0_m_per_s = " << format_exact(sc.line().speed()) << '\n'
      << "source.zg_ohm = " << format_exact(sc.source_impedance()) << '\n'
      << "load.kind = " << termination_name(sc.termination()) << '\n';
  std::visit(overloaded{[&](const Resistive& r) { out << "load.r_ohm = " << format_exact(r.ohms) << '\n'; },
                        [&](const Inductive& l) { out << "load.l_h = " << format_exact(l.henries) << '\n'; },
                        [&](const Capacitive& c) { out << "load.c_f = " << format_exact(c.farads) << '\n'; },
                        [](const auto&) {}},
             sc.termination());
  std::visit(overloaded{[&](const Step& s) {
                          out << "wave.kind = step\n"
                              << "wave.v0_v = " << format_exact(s.v0) << '\n'
                              << "wave.tc_s = " << format_exact(s.tc) << '\n';
                        },
                        [&](const Pulse& p) {
                          out << "wave.kind = pulse\n"
                              << "wave.v0_v = " << format_exact(p.v0) << '\n'
                              << "wave.ta_s = " << format_exact(p.ta) << '\n'
                              << "wave.tb_s = " << format_exact(p.tb) << '\n';
                        }},
             sc.waveform());
  out << "grid.t_start_s = " << format_exact(cfg.grid.t_start()) << '\n'
      << "grid.t_end_s = " << format_exact(cfg.grid.t_end()) << '\n'
      << "grid.n = " << cfg.grid.size() << '\n'
      << "fdtd.nx = " << cfg.fdtd_nx << '\n';
  auto join = [](const auto& items, auto to_name) {
    std::string s;
    for (const auto& item : items) s += (s.empty() ? "" : ",") + to_name(item);
    return s;
  };
  out << "run.methods = " << join(cfg.methods, method_name) << '\n'
      << "run.emit = " << join(cfg.emit, emit_name) << '\n'
      << "run.out = " << cfg.output_path.string() << '\n';
  return out.str();
}

}  // namespace tline
