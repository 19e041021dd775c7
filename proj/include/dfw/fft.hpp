#pragma once

#include <complex>
#include <vector>

#include "dfw/ndarray.hpp"

namespace dfw {

using cplx = std::complex<double>;

struct ComplexArray {
  Extents ext;
  std::vector<cplx> data;

  ComplexArray() = default;
  explicit ComplexArray(const Extents& e) : ext(e), data(e.size()) {}
  cplx& operator[](std::size_t i) { return data[i]; }
  const cplx& operator[](std::size_t i) const { return data[i]; }
};

/// Unnormalized multidimensional DFT. Forward uses exp(-2 pi i k.x / N).
void fft_nd(ComplexArray& a, bool inverse);

ComplexArray to_complex(const NdArray& a);
NdArray real_part(const ComplexArray& a);
double max_imag(const ComplexArray& a);

/// Forward DFT with the 1/prod(N) prefactor, so entries are Fourier series coefficients.
ComplexArray dft_forward(const NdArray& a);
/// Inverse of dft_forward; returns the real part.
NdArray dft_inverse(ComplexArray a);

/// Signed wavenumber of DFT index `idx` in (-n/2, n/2].
long wavenumber(std::size_t idx, std::size_t n);

}  // namespace dfw
