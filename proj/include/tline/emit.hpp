#pragma once

// CSV and SVG writers for labeled traces sharing one grid. Both outputs are
// byte-deterministic and locale-independent (std::to_chars, LF endings).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "tline/compare.hpp"
#include "tline/model.hpp"

namespace tline {

inline constexpr int kCsvDigits = 9;

namespace emit {

inline void append_general(std::string& out, double value, int digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  out.append(buf, ptr);
}

inline void append_fixed(std::string& out, double value, int decimals) {
  char buf[64];
  if (value == 0.0) value = 0.0;  // no "-0.00"
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  std::string_view s(buf, static_cast<std::size_t>(ptr - buf));
  if (s.find_first_not_of("-0.") == std::string_view::npos) s = s.substr(s.front() == '-' ? 1 : 0);
  out.append(s);
}

inline void require_shared_grid(const std::vector<LabeledTrace>& traces) {
  if (traces.empty()) throw ValidationError("traces", "nothing to write");
  for (const auto& t : traces) {
    if (t.trace.empty()) throw ValidationError("traces", "trace '" + t.label + "' is empty");
    if (!t.trace.same_grid(traces.front().trace)) {
      throw ValidationError("traces", "trace '" + t.label + "' is on a different grid");
    }
  }
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

/// 1, 2 or 5 times a power of ten, close to range / target.
inline double nice_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

inline int decimals_for(double step) { return std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9))); }

inline std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace emit

/// `t_s,v_<label>...` header then one row per grid point, 9 significant digits.
inline std::string format_csv(const std::vector<LabeledTrace>& traces) {
  emit::require_shared_grid(traces);
  std::string out = "t_s";
  for (const auto& t : traces) out += ",v_" + t.label;
  out += '\n';
  const Trace& ref = traces.front().trace;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    emit::append_general(out, ref.time(k), kCsvDigits);
    for (const auto& t : traces) {
      out += ',';
      emit::append_general(out, t.trace[k], kCsvDigits);
    }
    out += '\n';
  }
  return out;
}

inline void emit_csv(const std::vector<LabeledTrace>& traces, const std::filesystem::path& path) {
  emit::write_file(path, format_csv(traces));
}

/// Self-contained line chart, time in microseconds, voltage in volts.
inline std::string render_svg(const std::vector<LabeledTrace>& traces, std::string_view title = {}) {
  emit::require_shared_grid(traces);
  constexpr double left = 80, right = 780, top = 40, bottom = 420;
  constexpr std::array<std::string_view, 4> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  constexpr std::array<std::string_view, 4> dashes{"", "6,4", "2,3", "8,3,2,3"};

  const Trace& ref = traces.front().trace;
  const double x0 = ref.t0() * 1e6;
  const double x1 = ref.time(ref.size() - 1) * 1e6;
  double y0 = ref[0], y1 = ref[0];
  for (const auto& t : traces) {
    auto [lo, hi] = std::minmax_element(t.trace.samples().begin(), t.trace.samples().end());
    y0 = std::min(y0, *lo);
    y1 = std::max(y1, *hi);
  }
  const double pad = y1 > y0 ? 0.05 * (y1 - y0) : 0.5;
  y0 -= pad;
  y1 += pad;
  const double x_span = x1 > x0 ? x1 - x0 : 1.0;
  auto px = [&](double us) { return left + (us - x0) / x_span * (right - left); };
  auto py = [&](double v) { return bottom - (v - y0) / (y1 - y0) * (bottom - top); };

  std::string s;
  auto num = [&s](double v) { emit::append_fixed(s, v, 2); };
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" viewBox=\"0 0 800 480\" "
       "font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"480\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"430\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + emit::escape_xml(title) + "</text>\n";
  }

  const double xs = emit::nice_step(x_span, 8);
  const double ys = emit::nice_step(y1 - y0, 6);
  const int xd = emit::decimals_for(xs), yd = emit::decimals_for(ys);
  s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double x = std::ceil(x0 / xs) * xs; x <= x1 + 1e-9 * xs; x += xs) {
    s += "<line x1=\"";
    num(px(x));
    s += "\" y1=\"";
    num(top);
    s += "\" x2=\"";
    num(px(x));
    s += "\" y2=\"";
    num(bottom);
    s += "\"/>\n";
  }
  for (double y = std::ceil(y0 / ys) * ys; y <= y1; y += ys) {
    s += "<line x1=\"";
    num(left);
    s += "\" y1=\"";
    num(py(y));
    s += "\" x2=\"";
    num(right);
    s += "\" y2=\"";
    num(py(y));
    s += "\"/>\n";
  }
  s += "</g>\n<g text-anchor=\"middle\">\n";
  for (double x = std::ceil(x0 / xs) * xs; x <= x1 + 1e-9 * xs; x += xs) {
    s += "<text x=\"";
    num(px(x));
    s += "\" y=\"438\">";
    emit::append_fixed(s, x, xd);
    s += "</text>\n";
  }
  s += "</g>\n<g text-anchor=\"end\">\n";
  for (double y = std::ceil(y0 / ys) * ys; y <= y1; y += ys) {
    s += "<text x=\"74\" y=\"";
    num(py(y) + 4);
    s += "\">";
    emit::append_fixed(s, y, yd);
    s += "</text>\n";
  }
  s += "</g>\n";
  s += "<rect x=\"80\" y=\"40\" width=\"700\" height=\"380\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"430\" y=\"464\" text-anchor=\"middle\">time (\xC2\xB5s)</text>\n";
  s += "<text x=\"20\" y=\"230\" text-anchor=\"middle\" transform=\"rotate(-90 20 230)\">v_g (V)</text>\n";

  for (std::size_t n = 0; n < traces.size(); ++n) {
    const Trace& t = traces[n].trace;
    s += "<polyline fill=\"none\" stroke=\"";
    s += colors[n % colors.size()];
    s += "\" stroke-width=\"1.5\"";
    if (!dashes[n % dashes.size()].empty()) {
      s += " stroke-dasharray=\"";
      s += dashes[n % dashes.size()];
      s += "\"";
    }
    s += " points=\"";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += ' ';
      num(px(t.time(k) * 1e6));
      s += ',';
      num(py(t[k]));
    }
    s += "\"/>\n";
  }

  for (std::size_t n = 0; n < traces.size(); ++n) {
    const double y = top + 16 + 18 * static_cast<double>(n);
    s += "<line x1=\"650\" y1=\"";
    num(y);
    s += "\" x2=\"680\" y2=\"";
    num(y);
    s += "\" stroke=\"";
    s += colors[n % colors.size()];
    s += "\" stroke-width=\"2\"";
    if (!dashes[n % dashes.size()].empty()) {
      s += " stroke-dasharray=\"";
      s += dashes[n % dashes.size()];
      s += "\"";
    }
    s += "/>\n<text x=\"686\" y=\"";
    num(y + 4);
    s += "\">" + emit::escape_xml(traces[n].label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void emit_svg(const std::vector<LabeledTrace>& traces, const std::filesystem::path& path,
                     std::string_view title = {}) {
  emit::write_file(path, render_svg(traces, title));
}

}  // namespace tline
