#include "dfw/curlfree.hpp"

#include <cmath>
#include <stdexcept>

#include "frames.hpp"

namespace dfw {

namespace {

using frames::backward_diff;

void check_curl_layout(const VectorCoeffs& v) {
  if (v.comp.size() != 2 || v.ndim() != 2 || v.mode() != PyramidMode::Anisotropic)
    throw std::invalid_argument("curl-free transform needs 2D anisotropic coefficients");
  const Layout expect = curl_layout(2);
  for (std::size_t i = 0; i < 2; ++i) {
    if (v.comp[i].degrees[0] != expect[i][0] || v.comp[i].degrees[1] != expect[i][1])
      throw std::invalid_argument("component degrees are not in the curl-free layout");
    if (!(v.comp[i].ext == v.comp[0].ext) || v.comp[i].jmin != v.comp[0].jmin)
      throw std::invalid_argument("components differ in shape or levels");
  }
}

double lev(const BlockKey& key, int a) { return std::ldexp(1.0, key.axes[static_cast<std::size_t>(a)].level); }

SplitBlock split_scaling(const BlockKey& key, const NdArray& d0, const NdArray& d1) {
  const Extents& ext = d0.extents();
  const auto sym = frames::diff_symbols(ext, {0.25 * lev(key, 0), 0.25 * lev(key, 1)});
  const ComplexArray h0 = frames::forward_dft(d0), h1 = frames::forward_dft(d1);
  ComplexArray q(ext), g0(ext), g1(ext);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto idx = unravel(ext, i);
    const cplx s0 = sym[0][idx[0]], s1 = sym[1][idx[1]];
    const double den = std::norm(s0) + std::norm(s1);
    if (den == 0.0) continue;
    q[i] = (std::conj(s0) * h0[i] + std::conj(s1) * h1[i]) / den;
    g0[i] = s0 * q[i];
    g1[i] = s1 * q[i];
  }
  SplitBlock b;
  b.main.push_back(frames::inverse_dft(q));
  b.rest.push_back(d0 - frames::inverse_dft(g0));
  b.rest.push_back(d1 - frames::inverse_dft(g1));
  return b;
}

NdArray gradient_part(const BlockKey& key, const NdArray& q, int axis) {
  return (0.25 * lev(key, axis)) * backward_diff(q, axis);
}

SplitBlock split_block(const BlockKey& key, const NdArray& d0, const NdArray& d1) {
  const bool w0 = key.axes[0].wavelet, w1 = key.axes[1].wavelet;
  if (!w0 && !w1) return split_scaling(key, d0, d1);
  SplitBlock b;
  if (w0 && w1) {
    const double a = lev(key, 0), c = lev(key, 1), den = a * a + c * c;
    b.main.push_back((a / den) * d0 + (c / den) * d1);
    b.rest.push_back((c / den) * d0 - (a / den) * d1);
    return b;
  }
  const int w = w0 ? 0 : 1, s = 1 - w;
  const NdArray& dw = w == 0 ? d0 : d1;
  const NdArray& ds = w == 0 ? d1 : d0;
  NdArray q = (1.0 / lev(key, w)) * dw;
  b.rest.push_back(ds - gradient_part(key, q, s));
  b.main.push_back(std::move(q));
  return b;
}

std::array<NdArray, 2> merge_block(const BlockKey& key, const SplitBlock& b) {
  const bool w0 = key.axes[0].wavelet, w1 = key.axes[1].wavelet;
  if (!w0 && !w1)
    return {gradient_part(key, b.main[0], 0) + b.rest[0], gradient_part(key, b.main[0], 1) + b.rest[1]};
  if (w0 && w1) {
    const double a = lev(key, 0), c = lev(key, 1);
    return {a * b.main[0] + c * b.rest[0], c * b.main[0] - a * b.rest[0]};
  }
  const int w = w0 ? 0 : 1, s = 1 - w;
  NdArray dw = lev(key, w) * b.main[0];
  NdArray ds = gradient_part(key, b.main[0], s) + b.rest[0];
  if (w == 0) return {std::move(dw), std::move(ds)};
  return {std::move(ds), std::move(dw)};
}

}  // namespace

CurlFreeCoeffs to_curlfree_aniso2d(const VectorCoeffs& v) {
  check_curl_layout(v);
  CurlFreeCoeffs out;
  out.mode = PyramidMode::Anisotropic;
  out.ext = v.comp[0].ext;
  out.jmin = v.comp[0].jmin;
  out.layout = curl_layout(2);
  for (const auto& [key, blk] : v.comp[0].blocks) out.blocks.emplace(key, split_block(key, blk, v.comp[1].blocks.at(key)));
  return out;
}

VectorCoeffs from_curlfree_aniso2d(const CurlFreeCoeffs& c) {
  if (c.ndim() != 2 || c.mode != PyramidMode::Anisotropic) throw std::invalid_argument("expected 2D anisotropic curl-free coefficients");
  VectorCoeffs v;
  for (std::size_t i = 0; i < 2; ++i) {
    Pyramid p;
    p.mode = c.mode;
    p.ext = c.ext;
    p.jmin = c.jmin;
    p.degrees = c.layout[i];
    v.comp.push_back(std::move(p));
  }
  for (const auto& [key, blk] : c.blocks) {
    auto d = merge_block(key, blk);
    v.comp[0].blocks.emplace(key, std::move(d[0]));
    v.comp[1].blocks.emplace(key, std::move(d[1]));
  }
  return v;
}

CurlFreeCoeffs curlfree_part(const CurlFreeCoeffs& c) {
  CurlFreeCoeffs out = c;
  for (auto& [k, b] : out.blocks)
    for (auto& r : b.rest) r.fill(0.0);
  return out;
}

NdArray pressure_coefficients(const CurlFreeCoeffs& c) {
  Pyramid p;
  p.mode = PyramidMode::Anisotropic;
  p.ext = c.ext;
  p.jmin = c.jmin;
  p.degrees = {SplineDegree::Deg2, SplineDegree::Deg2, SplineDegree::Deg2};
  for (const auto& [key, blk] : c.blocks) p.blocks.emplace(key, blk.main.at(0));
  NdArray coeffs = anisotropic_inverse(p);
  coeffs *= 0.25;
  return coeffs;
}

NdArray reconstruct_pressure(const CurlFreeCoeffs& c) {
  NdArray p = eval_scalar(pressure_coefficients(c), {0.0, 0.0, 0.0}, {SplineDegree::Deg2, SplineDegree::Deg2, SplineDegree::Deg2},
                          Space::Sharp);
  double mean = 0.0;
  for (double v : p.flat()) mean += v;
  mean /= static_cast<double>(p.size());
  for (auto& v : p.flat()) v -= mean;
  return p;
}

}  // namespace dfw
