#pragma once

#include <cstddef>
#include <vector>

#include "tline/model.hpp"

namespace tline {

/// Inclusive uniform time grid [t_start, t_end] with n_samples points.
class SamplingGrid {
 public:
  SamplingGrid(double t_start, double t_end, std::size_t n_samples)
      : t_start_(t_start), t_end_(t_end), n_samples_(n_samples) {
    detail::require_finite(t_start, "grid.t_start_s");
    detail::require_finite(t_end, "grid.t_end_s");
    if (!(t_end > t_start)) throw ValidationError("grid.t_end_s", "must be > grid.t_start_s");
    if (n_samples < 2) throw ValidationError("grid.n", "must be >= 2");
  }

  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  std::size_t size() const noexcept { return n_samples_; }
  double dt() const noexcept { return (t_end_ - t_start_) / static_cast<double>(n_samples_ - 1); }
  double time(std::size_t k) const noexcept { return t_start_ + static_cast<double>(k) * dt(); }

  bool operator==(const SamplingGrid&) const = default;

 private:
  double t_start_;
  double t_end_;
  std::size_t n_samples_;
};

/// Samples `f(t)` on every grid point.
template <class F>
Trace sample(const SamplingGrid& grid, F&& f) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out.push_back(f(grid.time(k)));
  return Trace(grid.t_start(), grid.dt(), std::move(out));
}

}  // namespace tline
