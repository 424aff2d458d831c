#pragma once

#include <complex>
#include <vector>

#include "fracburgers/grid.hpp"

namespace fracburgers {

// Discrete Fourier coefficients of a real field, stored in FFT order:
// index k <= N/2 is wavenumber k, index k > N/2 is wavenumber k - N.
// Normalized so that index 0 holds the mean of the samples.
struct SpectrumView {
  TorusGrid grid;
  double time = 0.0;
  std::vector<std::complex<double>> coefficients;

  // Signed integer wavenumber of FFT index idx (Nyquist reported as +N/2).
  static long wavenumber(std::size_t idx, std::size_t n) noexcept;
  // Largest coefficient magnitude over |k| > k_min.
  double tail_max(std::size_t k_min) const;
  // Magnitude at |k| (averaged over +-k).
  double magnitude(std::size_t k) const;
};

SpectrumView dft(const Field& field);
Field idft(const SpectrumView& spectrum);

// (-Delta)^{1/2}: multiplier |k| * 2pi/L.
Field frac_laplacian_half(const Field& field);

// d^order/dx^order via the multiplier (i k 2pi/L)^order; the Nyquist mode is
// dropped for odd orders.
Field spectral_derivative(const Field& field, int order = 1);

// u (-Delta)^{1/2} u - (-Delta)^{1/2} u^2. With dealias set, the product u^2
// and the result are truncated to |k| <= N/3.
Field burgers_rhs_spectral(const Field& u, bool dealias = false);

namespace detail {
// Vector-level kernels shared with the time integrators.
std::vector<double> half_laplacian(const TorusGrid& grid,
                                   const std::vector<double>& v);
std::vector<double> burgers_rhs(const TorusGrid& grid,
                                const std::vector<double>& u, bool dealias);
// Applies the real, even multiplier symbol[k] (indexed by |k|, size N/2+1).
std::vector<double> apply_even_multiplier(const TorusGrid& grid,
                                          const std::vector<double>& v,
                                          const std::vector<double>& symbol);
}  // namespace detail

}  // namespace fracburgers
