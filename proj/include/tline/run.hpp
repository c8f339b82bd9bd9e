#pragma once

#include <future>
#include <string>
#include <vector>

#include "tline/analytic.hpp"
#include "tline/bounce.hpp"
#include "tline/compare.hpp"
#include "tline/config.hpp"
#include "tline/fdtd.hpp"

namespace tline {

inline Trace run_method(Method method, const RunConfig& cfg) {
  switch (method) {
    case Method::analytic: return transient(cfg.scenario, cfg.grid);
    case Method::bounce: return simulate_bounce(cfg.scenario, cfg.grid.t_end(), cfg.grid);
    case Method::fdtd: return simulate_fdtd(cfg.scenario, cfg.fdtd_nx, cfg.grid);
  }
  throw ValidationError("run.methods", "unknown method");
}

/// Runs every configured method concurrently; traces come back in config order.
inline std::vector<LabeledTrace> run_methods(const RunConfig& cfg) {
  std::vector<std::future<Trace>> pending;
  pending.reserve(cfg.methods.size());
  for (Method m : cfg.methods) {
    pending.push_back(std::async(std::launch::async, [m, &cfg] { return run_method(m, cfg); }));
  }
  std::vector<LabeledTrace> out;
  out.reserve(pending.size());
  for (std::size_t k = 0; k < pending.size(); ++k) out.push_back({method_name(cfg.methods[k]), pending[k].get()});
  return out;
}

}  // namespace tline
