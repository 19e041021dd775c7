#include <immintrin.h>

#include "kernels_impl.hpp"

namespace dfw::kernels {

namespace {

// mul then add, never fused, so results match the scalar path bit for bit.
void analyze_avx2(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo, Filter hi,
                  double* out, std::size_t out_stride) {
  const std::size_t half = n / 2;
  const std::size_t vec_end = width & ~std::size_t{3};
  const double* lo_rows[8];
  const double* hi_rows[8];
  for (std::size_t k = 0; k < half; ++k) {
    for (int t = 0; t < lo.len; ++t) lo_rows[t] = in + wrap(lo.start + t + 2 * static_cast<long>(k), n) * in_stride;
    for (int t = 0; t < hi.len; ++t) hi_rows[t] = in + wrap(hi.start + t + 2 * static_cast<long>(k), n) * in_stride;
    double* lo_out = out + k * out_stride;
    double* hi_out = out + (half + k) * out_stride;
    std::size_t lane = 0;
    for (; lane < vec_end; lane += 4) {
      __m256d a = _mm256_setzero_pd();
      for (int t = 0; t < lo.len; ++t)
        a = _mm256_add_pd(a, _mm256_mul_pd(_mm256_set1_pd(lo.taps[t]), _mm256_loadu_pd(lo_rows[t] + lane)));
      _mm256_storeu_pd(lo_out + lane, a);
      __m256d b = _mm256_setzero_pd();
      for (int t = 0; t < hi.len; ++t)
        b = _mm256_add_pd(b, _mm256_mul_pd(_mm256_set1_pd(hi.taps[t]), _mm256_loadu_pd(hi_rows[t] + lane)));
      _mm256_storeu_pd(hi_out + lane, b);
    }
    for (; lane < width; ++lane) {
      double a = 0.0;
      for (int t = 0; t < lo.len; ++t) a += lo.taps[t] * lo_rows[t][lane];
      lo_out[lane] = a;
      double b = 0.0;
      for (int t = 0; t < hi.len; ++t) b += hi.taps[t] * hi_rows[t][lane];
      hi_out[lane] = b;
    }
  }
}

void synthesize_avx2(const double* in, std::size_t in_stride, std::size_t n, std::size_t width, Filter lo, Filter hi,
                     double* out, std::size_t out_stride) {
  const std::size_t half = n / 2;
  const std::size_t vec_end = width & ~std::size_t{3};
  const double* rows[16];
  double taps[16];
  for (std::size_t m = 0; m < n; ++m) {
    int cnt = 0;
    for (int t = 0; t < lo.len; ++t) {
      const long idx = static_cast<long>(m) - (lo.start + t);
      if (idx & 1) continue;
      rows[cnt] = in + wrap(idx / 2, half) * in_stride;
      taps[cnt++] = lo.taps[t];
    }
    for (int t = 0; t < hi.len; ++t) {
      const long idx = static_cast<long>(m) - (hi.start + t);
      if (idx & 1) continue;
      rows[cnt] = in + (half + wrap(idx / 2, half)) * in_stride;
      taps[cnt++] = hi.taps[t];
    }
    double* row = out + m * out_stride;
    std::size_t lane = 0;
    for (; lane < vec_end; lane += 4) {
      __m256d a = _mm256_setzero_pd();
      for (int i = 0; i < cnt; ++i)
        a = _mm256_add_pd(a, _mm256_mul_pd(_mm256_set1_pd(taps[i]), _mm256_loadu_pd(rows[i] + lane)));
      _mm256_storeu_pd(row + lane, a);
    }
    for (; lane < width; ++lane) {
      double a = 0.0;
      for (int i = 0; i < cnt; ++i) a += taps[i] * rows[i][lane];
      row[lane] = a;
    }
  }
}

}  // namespace

namespace detail {
const KernelSet& avx2_set() {
  static const KernelSet set{"avx2", analyze_avx2, synthesize_avx2};
  return set;
}
}  // namespace detail

}  // namespace dfw::kernels
