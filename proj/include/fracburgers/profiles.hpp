#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fracburgers/grid.hpp"

namespace fracburgers {

// Reproducible uniform stream. The double conversion is done by hand so the
// sequence is identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Named initial data on the grid:
//   constant   mean
//   cosine     mean + amplitude cos(2 pi x / L)
//   sawtooth   Fourier partial sum of a sawtooth (modes up to `modes`,
//              default N/4) scaled to mean +- amplitude
//   random     random trigonometric polynomial of degree `modes`
//              rescaled so that min = mean - amplitude, max = mean + amplitude
struct ProfileSpec {
  std::string name = "cosine";
  double mean = 1.5;
  double amplitude = 0.5;
  std::size_t modes = 0;  // 0 selects the profile's default
  std::uint64_t seed = 1;
};

Field make_profile(const TorusGrid& grid, const ProfileSpec& spec);
const std::vector<std::string>& profile_names();

}  // namespace fracburgers
