#include "tdnls/spectral.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "tdnls/errors.hpp"

namespace tdnls {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

FftWorkspace::FftWorkspace(int n) : n_(n) {
  if (n <= 0)
    throw ConfigError("FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  data_ = reinterpret_cast<cdouble*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* buf = reinterpret_cast<fftw_complex*>(data_);
  forward_plan_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftWorkspace::~FftWorkspace() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(data_);
}

void FftWorkspace::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void FftWorkspace::backward() {
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  const double scale = 1.0 / n_;
  for (int j = 0; j < n_; ++j)
    data_[j] *= scale;
}

std::vector<double> wavenumbers(const GridSpec& grid) {
  const int n = grid.n;
  std::vector<double> k(n);
  const double base = 2.0 * M_PI / grid.length();
  for (int m = 0; m < n; ++m)
    k[m] = base * (m < n / 2 ? m : m - n);
  return k;
}

} // namespace tdnls
