#pragma once

// Helpers shared by the divergence-free and curl-free changes of basis.

#include <vector>

#include "dfw/fft.hpp"
#include "dfw/ndarray.hpp"

namespace dfw::frames {

/// x_k - x_{k-1} along `axis`, periodic.
NdArray backward_diff(const NdArray& x, int axis);

/// Unnormalized forward DFT and its exact inverse (real part).
ComplexArray forward_dft(const NdArray& x);
NdArray inverse_dft(ComplexArray c);

/// Per-axis DFT symbols of scale[a] * backward_diff along axis a.
std::vector<std::vector<cplx>> diff_symbols(const Extents& ext, const std::vector<double>& scale);

}  // namespace dfw::frames
