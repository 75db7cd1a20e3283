#pragma once

#include <span>
#include <vector>

#include "tdnls/field.hpp"

namespace tdnls {

/// In-place complex FFT of one fixed length. Owns its FFTW plans and buffer;
/// one workspace per run, never shared between threads.
class FftWorkspace {
public:
  explicit FftWorkspace(int n);
  ~FftWorkspace();
  FftWorkspace(const FftWorkspace&) = delete;
  FftWorkspace& operator=(const FftWorkspace&) = delete;

  int size() const { return n_; }
  std::span<cdouble> buffer() { return {data_, static_cast<std::size_t>(n_)}; }
  /// Unnormalized forward transform.
  void forward();
  /// Inverse transform including the 1/n factor.
  void backward();

private:
  int n_;
  cdouble* data_;
  void* forward_plan_;
  void* backward_plan_;
};

/// Angular wavenumbers 2*pi*m/L in FFT order (m = 0..n/2-1, -n/2..-1).
std::vector<double> wavenumbers(const GridSpec& grid);

} // namespace tdnls
