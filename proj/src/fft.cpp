#include "dfw/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace dfw {

namespace {
std::mutex planner_mutex;
}

void fft_nd(ComplexArray& a, bool inverse) {
  int dims[3];
  for (int i = 0; i < a.ext.ndim; ++i) dims[i] = static_cast<int>(a.ext[i]);
  auto* buf = reinterpret_cast<fftw_complex*>(a.data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft(a.ext.ndim, dims, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(plan);
}

ComplexArray to_complex(const NdArray& a) {
  ComplexArray c(a.extents());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  return c;
}

NdArray real_part(const ComplexArray& a) {
  NdArray r(a.ext);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i].real();
  return r;
}

double max_imag(const ComplexArray& a) {
  double m = 0.0;
  for (const auto& v : a.data) m = std::max(m, std::abs(v.imag()));
  return m;
}

ComplexArray dft_forward(const NdArray& a) {
  ComplexArray c = to_complex(a);
  fft_nd(c, false);
  const double s = 1.0 / static_cast<double>(a.size());
  for (auto& v : c.data) v *= s;
  return c;
}

NdArray dft_inverse(ComplexArray a) {
  fft_nd(a, true);
  return real_part(a);
}

long wavenumber(std::size_t idx, std::size_t n) {
  const long i = static_cast<long>(idx);
  const long len = static_cast<long>(n);
  return i <= len / 2 ? i : i - len;
}

}  // namespace dfw
