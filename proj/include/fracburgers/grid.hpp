#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace fracburgers {

// Uniform periodic grid on [0, L). n_points is a power of two >= 8.
class TorusGrid {
 public:
  TorusGrid(std::size_t n_points, double period);

  std::size_t size() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return h_; }

  // x_i = i*h, indices wrap modulo n_points.
  double node(std::ptrdiff_t i) const noexcept;
  std::size_t wrap(std::ptrdiff_t i) const noexcept;

  // Representative of the offset j*h in (-L/2, L/2].
  double offset(std::size_t j) const noexcept;

  // 2*pi/L; multiplies integer wavenumbers.
  double wavenumber_scale() const noexcept {
    return 2.0 * std::numbers::pi / period_;
  }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) noexcept {
    return a.n_ == b.n_ && a.period_ == b.period_;
  }

 private:
  std::size_t n_;
  double period_;
  double h_;
};

TorusGrid make_grid(std::size_t n_points,
                    double period = 2.0 * std::numbers::pi);

// min_k |x_i - x_j + kL|, in [0, L/2].
double periodic_distance(const TorusGrid& grid, std::size_t i, std::size_t j);

// Torus distance of a real offset, in [0, L/2].
double torus_abs(double offset, double period) noexcept;

// Samples of a scalar field at the grid nodes at one time. Values are always
// finite; construction rejects NaN/Inf.
class Field {
 public:
  Field(TorusGrid grid, double time, std::vector<double> values);

  const TorusGrid& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double min() const;
  double max() const;
  double sup_norm() const;
  double mean() const;
  bool is_positive() const { return min() > 0.0; }
  // Throws DomainError unless min(values) > 0.
  void require_positive(const char* what) const;

  Field with_time(double t) const { return Field(grid_, t, values_); }

 private:
  TorusGrid grid_;
  double time_;
  std::vector<double> values_;
};

Field sample(const TorusGrid& grid, const std::function<double(double)>& f,
             double t = 0.0);

// Time-ordered snapshots on a shared grid.
class Trajectory {
 public:
  explicit Trajectory(TorusGrid grid) : grid_(grid) {}

  void append(Field snapshot);

  const TorusGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return snapshots_.size(); }
  bool empty() const noexcept { return snapshots_.empty(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Field>& snapshots() const noexcept { return snapshots_; }
  const Field& operator[](std::size_t k) const { return snapshots_[k]; }
  const Field& front() const { return snapshots_.front(); }
  const Field& back() const { return snapshots_.back(); }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

 private:
  TorusGrid grid_;
  std::vector<double> times_;
  std::vector<Field> snapshots_;
};

// Applies f to every value of every snapshot (used for u <-> w = u^2 maps and
// scaling checks).
Trajectory map_values(const Trajectory& traj,
                      const std::function<double(double)>& f);

}  // namespace fracburgers
