#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dfw {

/// Shape of a 1-, 2- or 3-dimensional row-major array (last axis fastest).
struct Extents {
  int ndim = 0;
  std::array<std::size_t, 3> n{1, 1, 1};

  Extents() = default;
  Extents(std::initializer_list<std::size_t> dims);
  static Extents cube(int ndim, std::size_t len);

  std::size_t operator[](int axis) const { return n[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return n[0] * n[1] * n[2]; }
  std::size_t stride(int axis) const;

  bool operator==(const Extents&) const = default;
};

/// Dense real array with up to three axes.
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(const Extents& ext, double fill = 0.0);

  const Extents& extents() const { return ext_; }
  int ndim() const { return ext_.ndim; }
  std::size_t extent(int axis) const { return ext_[axis]; }
  std::size_t size() const { return data_.size(); }
  std::size_t stride(int axis) const { return ext_.stride(axis); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * ext_.n[1] + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * ext_.n[1] + j]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * ext_.n[1] + j) * ext_.n[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * ext_.n[1] + j) * ext_.n[2] + k];
  }

  void fill(double v);

  NdArray& operator+=(const NdArray& o);
  NdArray& operator-=(const NdArray& o);
  NdArray& operator*=(double s);

 private:
  Extents ext_;
  std::vector<double> data_;
};

NdArray operator+(NdArray a, const NdArray& b);
NdArray operator-(NdArray a, const NdArray& b);
NdArray operator*(double s, NdArray a);

double norm_l2(const NdArray& a);
double max_abs(const NdArray& a);
double max_abs_diff(const NdArray& a, const NdArray& b);

/// Periodic shift along one axis: result[k] = a[k - offset] (indices wrap).
NdArray shifted(const NdArray& a, int axis, long offset);

/// Copies a sub-box [origin, origin + ext) out of `a`.
NdArray extract(const NdArray& a, const std::array<std::size_t, 3>& origin, const Extents& ext);
/// Writes `src` into `dst` at `origin`.
void insert(NdArray& dst, const std::array<std::size_t, 3>& origin, const NdArray& src);

/// Multi-index of a flat position (unused axes are 0).
std::array<std::size_t, 3> unravel(const Extents& ext, std::size_t flat);

bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);

}  // namespace dfw
