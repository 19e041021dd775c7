#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dfw/ndarray.hpp"

namespace testing {

inline dfw::NdArray random_array(const dfw::Extents& ext, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  dfw::NdArray a(ext);
  for (auto& v : a.flat()) v = dist(rng);
  return a;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline double rel_diff(const dfw::NdArray& a, const dfw::NdArray& b) {
  const double n = dfw::norm_l2(b);
  return dfw::norm_l2(a - b) / (n > 0 ? n : 1.0);
}

}  // namespace testing
