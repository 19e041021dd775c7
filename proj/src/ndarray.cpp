#include "dfw/ndarray.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace dfw {

Extents::Extents(std::initializer_list<std::size_t> dims) {
  if (dims.size() < 1 || dims.size() > 3) throw std::invalid_argument("Extents: 1 to 3 axes supported");
  ndim = static_cast<int>(dims.size());
  std::size_t a = 0;
  for (auto d : dims) n[a++] = d;
}

Extents Extents::cube(int nd, std::size_t len) {
  if (nd < 1 || nd > 3) throw std::invalid_argument("Extents: 1 to 3 axes supported");
  Extents e;
  e.ndim = nd;
  for (int a = 0; a < nd; ++a) e.n[static_cast<std::size_t>(a)] = len;
  return e;
}

std::size_t Extents::stride(int axis) const {
  std::size_t s = 1;
  for (int a = ndim - 1; a > axis; --a) s *= n[static_cast<std::size_t>(a)];
  return s;
}

NdArray::NdArray(const Extents& ext, double fill) : ext_(ext), data_(ext.size(), fill) {}

void NdArray::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

NdArray& NdArray::operator+=(const NdArray& o) {
  if (!(ext_ == o.ext_)) throw std::invalid_argument("NdArray: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

NdArray& NdArray::operator-=(const NdArray& o) {
  if (!(ext_ == o.ext_)) throw std::invalid_argument("NdArray: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

NdArray& NdArray::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

NdArray operator+(NdArray a, const NdArray& b) { return a += b; }
NdArray operator-(NdArray a, const NdArray& b) { return a -= b; }
NdArray operator*(double s, NdArray a) { return a *= s; }

double norm_l2(const NdArray& a) {
  double s = 0.0;
  for (double v : a.flat()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const NdArray& a) {
  double m = 0.0;
  for (double v : a.flat()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const NdArray& a, const NdArray& b) {
  if (!(a.extents() == b.extents())) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::array<std::size_t, 3> unravel(const Extents& ext, std::size_t flat) {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = ext.ndim - 1; a >= 0; --a) {
    const auto ua = static_cast<std::size_t>(a);
    idx[ua] = flat % ext.n[ua];
    flat /= ext.n[ua];
  }
  return idx;
}

NdArray shifted(const NdArray& a, int axis, long offset) {
  const auto& ext = a.extents();
  const long len = static_cast<long>(ext[axis]);
  const std::size_t stride = ext.stride(axis);
  NdArray out(ext);
  const long off = ((offset % len) + len) % len;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long k = static_cast<long>((i / stride) % static_cast<std::size_t>(len));
    const long src = (k - off + len) % len;
    const std::size_t j = i + static_cast<std::size_t>(src - k) * stride;
    out[i] = a[j];
  }
  return out;
}

NdArray extract(const NdArray& a, const std::array<std::size_t, 3>& origin, const Extents& ext) {
  NdArray out(ext);
  const auto& src = a.extents();
  for (std::size_t i = 0; i < ext.n[0]; ++i)
    for (std::size_t j = 0; j < ext.n[1]; ++j) {
      const std::size_t sbase = ((origin[0] + i) * src.n[1] + origin[1] + j) * src.n[2] + origin[2];
      const std::size_t dbase = (i * ext.n[1] + j) * ext.n[2];
      std::copy_n(a.data() + sbase, ext.n[2], out.data() + dbase);
    }
  return out;
}

void insert(NdArray& dst, const std::array<std::size_t, 3>& origin, const NdArray& src) {
  const auto& de = dst.extents();
  const auto& se = src.extents();
  for (std::size_t i = 0; i < se.n[0]; ++i)
    for (std::size_t j = 0; j < se.n[1]; ++j) {
      const std::size_t dbase = ((origin[0] + i) * de.n[1] + origin[1] + j) * de.n[2] + origin[2];
      const std::size_t sbase = (i * se.n[1] + j) * se.n[2];
      std::copy_n(src.data() + sbase, se.n[2], dst.data() + dbase);
    }
}

bool is_power_of_two(std::size_t n) { return n > 0 && std::has_single_bit(n); }

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("length is not a power of two");
  return std::countr_zero(n);
}

}  // namespace dfw
