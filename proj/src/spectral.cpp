#include "fracburgers/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace fracburgers {
namespace {

using cplx = std::complex<double>;

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// The planner is not thread-safe; execution with new arrays is.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  const int len = static_cast<int>(n);
  PlanPair p{
      fftw_plan_dft_1d(len, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE),
      fftw_plan_dft_1d(len, in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE)};
  return cache.emplace(n, p).first->second;
}

std::vector<cplx> forward(const std::vector<double>& v) {
  const std::size_t n = v.size();
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = v[i];
    in[i][1] = 0.0;
  }
  fftw_execute_dft(plans_for(n).forward, in.get(), out.get());
  std::vector<cplx> c(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = cplx(out[k][0] * inv, out[k][1] * inv);
  return c;
}

std::vector<double> backward(const std::vector<cplx>& c) {
  const std::size_t n = c.size();
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  for (std::size_t k = 0; k < n; ++k) {
    in[k][0] = c[k].real();
    in[k][1] = c[k].imag();
  }
  fftw_execute_dft(plans_for(n).backward, in.get(), out.get());
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = out[i][0];
  return v;
}

void truncate_two_thirds(std::vector<cplx>& c) {
  const std::size_t n = c.size();
  const long cutoff = static_cast<long>(n) / 3;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::labs(SpectrumView::wavenumber(k, n)) > cutoff) c[k] = 0.0;
  }
}

}  // namespace

long SpectrumView::wavenumber(std::size_t idx, std::size_t n) noexcept {
  return idx <= n / 2 ? static_cast<long>(idx)
                      : static_cast<long>(idx) - static_cast<long>(n);
}

double SpectrumView::magnitude(std::size_t k) const {
  const std::size_t n = coefficients.size();
  if (k == 0 || k == n / 2) return std::abs(coefficients[k]);
  return 0.5 * (std::abs(coefficients[k]) + std::abs(coefficients[n - k]));
}

double SpectrumView::tail_max(std::size_t k_min) const {
  const std::size_t n = coefficients.size();
  double m = 0.0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (static_cast<std::size_t>(std::labs(wavenumber(idx, n))) > k_min) {
      m = std::max(m, std::abs(coefficients[idx]));
    }
  }
  return m;
}

SpectrumView dft(const Field& field) {
  return SpectrumView{field.grid(), field.time(), forward(field.data())};
}

Field idft(const SpectrumView& spectrum) {
  return Field(spectrum.grid, spectrum.time, backward(spectrum.coefficients));
}

namespace detail {

std::vector<double> apply_even_multiplier(const TorusGrid& grid,
                                          const std::vector<double>& v,
                                          const std::vector<double>& symbol) {
  std::vector<cplx> c = forward(v);
  const std::size_t n = grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    c[k] *= symbol[static_cast<std::size_t>(std::labs(SpectrumView::wavenumber(k, n)))];
  }
  return backward(c);
}

std::vector<double> half_laplacian(const TorusGrid& grid,
                                   const std::vector<double>& v) {
  std::vector<cplx> c = forward(v);
  const std::size_t n = grid.size();
  const double scale = grid.wavenumber_scale();
  for (std::size_t k = 0; k < n; ++k) {
    c[k] *= scale * static_cast<double>(std::labs(SpectrumView::wavenumber(k, n)));
  }
  return backward(c);
}

std::vector<double> burgers_rhs(const TorusGrid& grid,
                                const std::vector<double>& u, bool dealias) {
  const std::size_t n = u.size();
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = u[i] * u[i];
  if (dealias) {
    std::vector<cplx> c = forward(sq);
    truncate_two_thirds(c);
    sq = backward(c);
  }
  const std::vector<double> lu = half_laplacian(grid, u);
  const std::vector<double> lsq = half_laplacian(grid, sq);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] * lu[i] - lsq[i];
  if (dealias) {
    std::vector<cplx> c = forward(out);
    truncate_two_thirds(c);
    out = backward(c);
  }
  return out;
}

}  // namespace detail

Field frac_laplacian_half(const Field& field) {
  return Field(field.grid(), field.time(),
               detail::half_laplacian(field.grid(), field.data()));
}

Field spectral_derivative(const Field& field, int order) {
  std::vector<cplx> c = forward(field.data());
  const std::size_t n = field.size();
  const double scale = field.grid().wavenumber_scale();
  for (std::size_t k = 0; k < n; ++k) {
    const long kw = SpectrumView::wavenumber(k, n);
    if (order % 2 == 1 && k == n / 2) {
      c[k] = 0.0;
      continue;
    }
    const cplx ik(0.0, scale * static_cast<double>(kw));
    cplx factor(1.0, 0.0);
    for (int p = 0; p < order; ++p) factor *= ik;
    c[k] *= factor;
  }
  return Field(field.grid(), field.time(), backward(c));
}

Field burgers_rhs_spectral(const Field& u, bool dealias) {
  return Field(u.grid(), u.time(), detail::burgers_rhs(u.grid(), u.data(), dealias));
}

}  // namespace fracburgers
