#pragma once

#include <cstddef>

#include "dfw/kernels.hpp"

namespace dfw::kernels {

inline std::size_t wrap(long i, std::size_t n) {
  const long len = static_cast<long>(n);
  long r = i % len;
  return static_cast<std::size_t>(r < 0 ? r + len : r);
}

namespace detail {
const KernelSet& avx2_set();
}

}  // namespace dfw::kernels
