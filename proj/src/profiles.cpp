#include "fracburgers/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracburgers/errors.hpp"

namespace fracburgers {
namespace {

// Affine map of v onto [lo, hi].
std::vector<double> rescale(std::vector<double> v, double lo, double hi) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double a = *mn, b = *mx;
  if (!(b > a)) throw ConfigError("profile is constant on this grid; cannot rescale");
  for (double& x : v) x = lo + (hi - lo) * (x - a) / (b - a);
  return v;
}

}  // namespace

const std::vector<std::string>& profile_names() {
  static const std::vector<std::string> names{"constant", "cosine", "sawtooth", "random"};
  return names;
}

Field make_profile(const TorusGrid& grid, const ProfileSpec& spec) {
  const std::size_t n = grid.size();
  const double theta = grid.wavenumber_scale();
  if (!std::isfinite(spec.mean) || !std::isfinite(spec.amplitude) || spec.amplitude < 0.0) {
    throw ConfigError("profile: mean must be finite and amplitude nonnegative");
  }
  std::vector<double> v(n);
  auto x_at = [&](std::size_t i) { return grid.node(static_cast<std::ptrdiff_t>(i)); };

  if (spec.name == "constant") {
    std::fill(v.begin(), v.end(), spec.mean);
  } else if (spec.name == "cosine") {
    for (std::size_t i = 0; i < n; ++i) v[i] = spec.mean + spec.amplitude * std::cos(theta * x_at(i));
  } else if (spec.name == "sawtooth") {
    const std::size_t modes = spec.modes ? spec.modes : n / 4;
    if (modes >= n / 2) throw ConfigError("profile: sawtooth modes must be below N/2");
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = modes; k >= 1; --k) {
        const double sign = k % 2 ? 1.0 : -1.0;
        s += sign * std::sin(static_cast<double>(k) * theta * x_at(i)) / static_cast<double>(k);
      }
      v[i] = s;
    }
    if (spec.amplitude == 0.0) {
      std::fill(v.begin(), v.end(), spec.mean);
    } else {
      v = rescale(std::move(v), spec.mean - spec.amplitude, spec.mean + spec.amplitude);
    }
  } else if (spec.name == "random") {
    const std::size_t modes = spec.modes ? spec.modes : 4;
    if (modes >= n / 2) throw ConfigError("profile: random modes must be below N/2");
    SeededRng rng(spec.seed);
    std::vector<double> a(modes + 1), b(modes + 1);
    for (std::size_t k = 1; k <= modes; ++k) {
      a[k] = rng.uniform(-1.0, 1.0) / static_cast<double>(k);
      b[k] = rng.uniform(-1.0, 1.0) / static_cast<double>(k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 1; k <= modes; ++k) {
        const double kx = static_cast<double>(k) * theta * x_at(i);
        s += a[k] * std::cos(kx) + b[k] * std::sin(kx);
      }
      v[i] = s;
    }
    if (spec.amplitude == 0.0) {
      std::fill(v.begin(), v.end(), spec.mean);
    } else {
      v = rescale(std::move(v), spec.mean - spec.amplitude, spec.mean + spec.amplitude);
    }
  } else {
    throw ConfigError("unknown profile '" + spec.name + "'");
  }
  return Field(grid, 0.0, std::move(v));
}

}  // namespace fracburgers
