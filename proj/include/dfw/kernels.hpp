#pragma once

#include <cstddef>

namespace dfw::kernels {

/// Filter taps f[0..len) at indices start..start+len-1.
struct Filter {
  const double* taps;
  int start;
  int len;
};

/// Periodic one-level analysis over a panel of `width` independent lanes.
/// Row r of the input holds element r of every lane at in[r * in_stride + lane].
/// Output rows [0, n/2) receive lo-filtered values, rows [n/2, n) hi-filtered.
using AnalyzeFn = void (*)(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo,
                           Filter hi, double* out, std::size_t out_stride);

/// Inverse of AnalyzeFn: input rows [0, n/2) are coarse, [n/2, n) detail.
using SynthesizeFn = void (*)(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo,
                              Filter hi, double* out, std::size_t out_stride);

struct KernelSet {
  const char* name;
  AnalyzeFn analyze;
  SynthesizeFn synthesize;
};

const KernelSet& scalar();
/// Null when the AVX2 path was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2();
/// The fastest supported set; chosen once at first use.
const KernelSet& active();

}  // namespace dfw::kernels
