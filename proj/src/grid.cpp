#include "fracburgers/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fracburgers/errors.hpp"

namespace fracburgers {

TorusGrid::TorusGrid(std::size_t n_points, double period)
    : n_(n_points), period_(period), h_(0.0) {
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw ConfigError("grid size must be a power of two >= 8, got " +
                      std::to_string(n_points));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("grid period must be positive and finite");
  }
  h_ = period / static_cast<double>(n_points);
}

std::size_t TorusGrid::wrap(std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  std::ptrdiff_t r = i % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

double TorusGrid::node(std::ptrdiff_t i) const noexcept {
  return static_cast<double>(wrap(i)) * h_;
}

double TorusGrid::offset(std::size_t j) const noexcept {
  const std::size_t r = j % n_;
  if (r <= n_ / 2) return static_cast<double>(r) * h_;
  return -static_cast<double>(n_ - r) * h_;
}

TorusGrid make_grid(std::size_t n_points, double period) {
  return TorusGrid(n_points, period);
}

double periodic_distance(const TorusGrid& grid, std::size_t i, std::size_t j) {
  const std::size_t n = grid.size();
  const std::size_t d = (i > j ? i - j : j - i) % n;
  return static_cast<double>(std::min(d, n - d)) * grid.spacing();
}

double torus_abs(double offset, double period) noexcept {
  double r = std::fmod(std::abs(offset), period);
  return std::min(r, period - r);
}

Field::Field(TorusGrid grid, double time, std::vector<double> values)
    : grid_(grid), time_(time), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DataError("field has " + std::to_string(values_.size()) +
                    " values for a grid of " + std::to_string(grid_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite field value at node " + std::to_string(i) +
                      " (t=" + std::to_string(time) + ")");
    }
  }
}

double Field::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Field::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Field::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double Field::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

void Field::require_positive(const char* what) const {
  const double m = min();
  if (!(m > 0.0)) {
    throw DomainError(std::string(what) + ": field must be strictly positive (min=" +
                          std::to_string(m) + ")",
                      time_);
  }
}

Field sample(const TorusGrid& grid, const std::function<double(double)>& f,
             double t) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = f(grid.node(static_cast<std::ptrdiff_t>(i)));
    if (!std::isfinite(v[i])) {
      throw DataError("sampled function is non-finite at x=" +
                      std::to_string(grid.node(static_cast<std::ptrdiff_t>(i))));
    }
  }
  return Field(grid, t, std::move(v));
}

void Trajectory::append(Field snapshot) {
  if (!(snapshot.grid() == grid_)) {
    throw DataError("trajectory snapshot on a different grid");
  }
  if (!times_.empty() && !(snapshot.time() > times_.back())) {
    throw DataError("trajectory times must be strictly increasing");
  }
  times_.push_back(snapshot.time());
  snapshots_.push_back(std::move(snapshot));
}

Trajectory map_values(const Trajectory& traj,
                      const std::function<double(double)>& f) {
  Trajectory out(traj.grid());
  for (const Field& s : traj.snapshots()) {
    std::vector<double> v(s.data());
    for (double& x : v) x = f(x);
    out.append(Field(traj.grid(), s.time(), std::move(v)));
  }
  return out;
}

}  // namespace fracburgers
