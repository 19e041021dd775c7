#include "dfw/kernels.hpp"

#include "kernels_impl.hpp"

namespace dfw::kernels {

namespace {

void analyze_scalar(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo, Filter hi,
                    double* out, std::size_t out_stride) {
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double* lo_row = out + k * out_stride;
    double* hi_row = out + (half + k) * out_stride;
    for (std::size_t lane = 0; lane < width; ++lane) {
      double a = 0.0;
      for (int t = 0; t < lo.len; ++t) a += lo.taps[t] * in[wrap(lo.start + t + 2 * static_cast<long>(k), n) * in_stride + lane];
      lo_row[lane] = a;
      double b = 0.0;
      for (int t = 0; t < hi.len; ++t) b += hi.taps[t] * in[wrap(hi.start + t + 2 * static_cast<long>(k), n) * in_stride + lane];
      hi_row[lane] = b;
    }
  }
}

void synthesize_scalar(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo,
                       Filter hi, double* out, std::size_t out_stride) {
  const std::size_t half = n / 2;
  for (std::size_t m = 0; m < n; ++m) {
    double* row = out + m * out_stride;
    for (std::size_t lane = 0; lane < width; ++lane) {
      double a = 0.0;
      for (int t = 0; t < lo.len; ++t) {
        const long idx = static_cast<long>(m) - (lo.start + t);
        if (idx & 1) continue;
        a += lo.taps[t] * in[wrap(idx / 2, half) * in_stride + lane];
      }
      for (int t = 0; t < hi.len; ++t) {
        const long idx = static_cast<long>(m) - (hi.start + t);
        if (idx & 1) continue;
        a += hi.taps[t] * in[(half + wrap(idx / 2, half)) * in_stride + lane];
      }
      row[lane] = a;
    }
  }
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", analyze_scalar, synthesize_scalar};
  return set;
}

const KernelSet* avx2() {
#if defined(DFW_BUILD_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& set = avx2() ? *avx2() : scalar();
  return set;
}

}  // namespace dfw::kernels
