#include "dfw/divfree.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frames.hpp"

namespace dfw {

VectorCoeffs analyze_vector(const std::vector<NdArray>& coeffs, const Layout& layout, PyramidMode mode, int levels) {
  if (coeffs.size() != layout.size()) throw std::invalid_argument("layout does not match the component count");
  VectorCoeffs v;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v.comp.push_back(forward(coeffs[i], mode, layout[i], levels));
  return v;
}

std::vector<NdArray> synthesize_vector(const VectorCoeffs& v) {
  std::vector<NdArray> out;
  for (const auto& p : v.comp) out.push_back(inverse(p));
  return out;
}

std::size_t SplitCoeffs::main_count() const {
  std::size_t c = 0;
  for (const auto& [k, b] : blocks)
    for (const auto& a : b.main) c += a.size();
  return c;
}

double frame_weight(PyramidMode mode, const AxisScale& s) {
  return mode == PyramidMode::Anisotropic ? std::ldexp(1.0, s.level) : 1.0;
}

namespace frames {

NdArray backward_diff(const NdArray& x, int axis) { return x - shifted(x, axis, 1); }

ComplexArray forward_dft(const NdArray& x) {
  ComplexArray c = to_complex(x);
  fft_nd(c, false);
  return c;
}

NdArray inverse_dft(ComplexArray c) {
  fft_nd(c, true);
  NdArray r = real_part(c);
  r *= 1.0 / static_cast<double>(r.size());
  return r;
}

std::vector<std::vector<cplx>> diff_symbols(const Extents& ext, const std::vector<double>& scale) {
  std::vector<std::vector<cplx>> sym(static_cast<std::size_t>(ext.ndim));
  for (int a = 0; a < ext.ndim; ++a) {
    auto& s = sym[static_cast<std::size_t>(a)];
    s.resize(ext[a]);
    for (std::size_t q = 0; q < ext[a]; ++q) {
      const double xi = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(ext[a]);
      s[q] = scale[static_cast<std::size_t>(a)] * (1.0 - std::polar(1.0, -xi));
    }
  }
  return sym;
}

}  // namespace frames

namespace {

using frames::backward_diff;

struct Mat3 {
  double m[3][3];
};

Mat3 invert(const Mat3& a) {
  const auto& m = a.m;
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det == 0.0) throw std::logic_error("singular frame matrix");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r.m[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
    }
  return r;
}

// Columns: Psi_div,1, Psi_div,2, Psi_n as weights on the three components.
Mat3 frame3(PyramidMode mode, const BlockKey& key) {
  if (mode == PyramidMode::Isotropic) return {{{-1, 0, 1}, {0, 1, 1}, {1, -1, 1}}};
  const double w1 = frame_weight(mode, key.axes[0]), w2 = frame_weight(mode, key.axes[1]),
               w3 = frame_weight(mode, key.axes[2]);
  return {{{w2, 0, w1}, {-w1, w3, w2}, {0, -w2, w3}}};
}

NdArray combo(std::initializer_list<std::pair<double, const NdArray*>> terms) {
  auto it = terms.begin();
  NdArray r = it->first * *it->second;
  for (++it; it != terms.end(); ++it)
    if (it->first != 0.0) r += it->first * *it->second;
  return r;
}

SplitBlock split_scaling(const BlockKey& key, int nd, const std::vector<const NdArray*>& d) {
  const Extents& ext = d[0]->extents();
  std::vector<double> scale;
  for (int a = 0; a < nd; ++a) scale.push_back(std::ldexp(1.0, key.axes[static_cast<std::size_t>(a)].level));
  const auto sym = frames::diff_symbols(ext, scale);
  std::vector<ComplexArray> hat;
  for (const auto* x : d) hat.push_back(frames::forward_dft(*x));
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto idx = unravel(ext, i);
    cplx div = 0.0;
    double norm = 0.0;
    for (int a = 0; a < nd; ++a) {
      const cplx s = sym[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
      div += s * hat[static_cast<std::size_t>(a)][i];
      norm += std::norm(s);
    }
    if (norm == 0.0) continue;
    for (int a = 0; a < nd; ++a) {
      const cplx s = sym[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
      hat[static_cast<std::size_t>(a)][i] -= std::conj(s) * div / norm;
    }
  }
  SplitBlock b;
  for (int a = 0; a < nd; ++a) {
    b.main.push_back(frames::inverse_dft(hat[static_cast<std::size_t>(a)]));
    b.rest.push_back(*d[static_cast<std::size_t>(a)] - b.main.back());
  }
  return b;
}

SplitBlock split_block(PyramidMode mode, const BlockKey& key, int nd, const std::vector<const NdArray*>& d) {
  std::vector<int> wav, sca;
  for (int a = 0; a < nd; ++a) (key.axes[static_cast<std::size_t>(a)].wavelet ? wav : sca).push_back(a);
  auto lev = [&](int a) { return std::ldexp(1.0, key.axes[static_cast<std::size_t>(a)].level); };
  auto om = [&](int a) { return frame_weight(mode, key.axes[static_cast<std::size_t>(a)]); };
  SplitBlock b;

  if (wav.empty()) return split_scaling(key, nd, d);

  if (static_cast<int>(wav.size()) == nd && nd == 2) {
    const double w1 = om(0), w2 = om(1), den = w1 * w1 + w2 * w2;
    b.main.push_back(combo({{w2 / den, d[0]}, {-w1 / den, d[1]}}));
    b.rest.push_back(combo({{w1 / den, d[0]}, {w2 / den, d[1]}}));
    return b;
  }
  if (static_cast<int>(wav.size()) == nd && nd == 3) {
    const Mat3 inv = invert(frame3(mode, key));
    for (int r = 0; r < 3; ++r) {
      NdArray x = combo({{inv.m[r][0], d[0]}, {inv.m[r][1], d[1]}, {inv.m[r][2], d[2]}});
      (r < 2 ? b.main : b.rest).push_back(std::move(x));
    }
    return b;
  }
  if (wav.size() == 1) {
    const int w = wav[0];
    NdArray n = *d[static_cast<std::size_t>(w)];
    for (int m = 1; m < nd; ++m) {
      const int s = (w + m) % nd;
      b.main.push_back(*d[static_cast<std::size_t>(s)]);
      n += (lev(s) / (4.0 * lev(w))) * backward_diff(*d[static_cast<std::size_t>(s)], s);
    }
    b.rest.push_back(std::move(n));
    return b;
  }
  // Two wavelet axes in 3D, taken in cyclic order after the scaling axis.
  const int s = sca[0], a1 = (s + 1) % 3, a2 = (s + 2) % 3;
  const double w1 = om(a1), w2 = om(a2), den = w1 * w1 + w2 * w2;
  const double c = lev(s) / (4.0 * (w1 * lev(a1) + w2 * lev(a2)));
  const NdArray ds = backward_diff(*d[static_cast<std::size_t>(s)], s);
  const NdArray e1 = combo({{1.0, d[static_cast<std::size_t>(a1)]}, {c * w1, &ds}});
  const NdArray e2 = combo({{1.0, d[static_cast<std::size_t>(a2)]}, {c * w2, &ds}});
  b.main.push_back(combo({{w2 / den, &e1}, {-w1 / den, &e2}}));
  b.main.push_back(*d[static_cast<std::size_t>(s)]);
  b.rest.push_back(combo({{w1 / den, &e1}, {w2 / den, &e2}}));
  return b;
}

std::vector<NdArray> merge_block(PyramidMode mode, const BlockKey& key, int nd, const SplitBlock& b) {
  std::vector<int> wav, sca;
  for (int a = 0; a < nd; ++a) (key.axes[static_cast<std::size_t>(a)].wavelet ? wav : sca).push_back(a);
  auto lev = [&](int a) { return std::ldexp(1.0, key.axes[static_cast<std::size_t>(a)].level); };
  auto om = [&](int a) { return frame_weight(mode, key.axes[static_cast<std::size_t>(a)]); };
  std::vector<NdArray> d(static_cast<std::size_t>(nd));

  if (wav.empty()) {
    for (int a = 0; a < nd; ++a) d[static_cast<std::size_t>(a)] = b.main[static_cast<std::size_t>(a)] + b.rest[static_cast<std::size_t>(a)];
    return d;
  }
  if (static_cast<int>(wav.size()) == nd && nd == 2) {
    const double w1 = om(0), w2 = om(1);
    d[0] = combo({{w2, &b.main[0]}, {w1, &b.rest[0]}});
    d[1] = combo({{-w1, &b.main[0]}, {w2, &b.rest[0]}});
    return d;
  }
  if (static_cast<int>(wav.size()) == nd && nd == 3) {
    const Mat3 m = frame3(mode, key);
    for (int r = 0; r < 3; ++r) d[static_cast<std::size_t>(r)] = combo({{m.m[r][0], &b.main[0]}, {m.m[r][1], &b.main[1]}, {m.m[r][2], &b.rest[0]}});
    return d;
  }
  if (wav.size() == 1) {
    const int w = wav[0];
    NdArray dw = b.rest[0];
    for (int m = 1; m < nd; ++m) {
      const int s = (w + m) % nd;
      const NdArray& div = b.main[static_cast<std::size_t>(m - 1)];
      d[static_cast<std::size_t>(s)] = div;
      dw -= (lev(s) / (4.0 * lev(w))) * backward_diff(div, s);
    }
    d[static_cast<std::size_t>(w)] = std::move(dw);
    return d;
  }
  const int s = sca[0], a1 = (s + 1) % 3, a2 = (s + 2) % 3;
  const double w1 = om(a1), w2 = om(a2);
  const double c = lev(s) / (4.0 * (w1 * lev(a1) + w2 * lev(a2)));
  const NdArray& ds_raw = b.main[1];
  const NdArray ds = backward_diff(ds_raw, s);
  d[static_cast<std::size_t>(s)] = ds_raw;
  d[static_cast<std::size_t>(a1)] = combo({{w2, &b.main[0]}, {w1, &b.rest[0]}, {-c * w1, &ds}});
  d[static_cast<std::size_t>(a2)] = combo({{-w1, &b.main[0]}, {w2, &b.rest[0]}, {-c * w2, &ds}});
  return d;
}

void check_layout(const VectorCoeffs& v) {
  const int nd = v.ndim();
  if (nd < 2 || nd > 3 || static_cast<int>(v.comp.size()) != nd)
    throw std::invalid_argument("divergence-free coefficients need 2 or 3 components matching the dimension");
  const Layout expect = div_layout(nd);
  for (int i = 0; i < nd; ++i) {
    const auto& p = v.comp[static_cast<std::size_t>(i)];
    if (p.mode != v.comp[0].mode || !(p.ext == v.comp[0].ext) || p.jmin != v.comp[0].jmin)
      throw std::invalid_argument("components differ in mode, shape or levels");
    for (int a = 0; a < nd; ++a)
      if (p.degrees[static_cast<std::size_t>(a)] != expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)])
        throw std::invalid_argument("component degrees are not in the divergence-free layout");
  }
}

void check_kind(PyramidMode mode, int nd, PyramidMode want_mode, int want_nd) {
  if (mode != want_mode || nd != want_nd) throw std::invalid_argument("coefficients have the wrong mode or dimension");
}

}  // namespace

DivFreeCoeffs to_divfree(const VectorCoeffs& v) {
  check_layout(v);
  const int nd = v.ndim();
  DivFreeCoeffs out;
  out.mode = v.mode();
  out.ext = v.comp[0].ext;
  out.jmin = v.comp[0].jmin;
  out.layout = div_layout(nd);
  for (const auto& [key, blk] : v.comp[0].blocks) {
    std::vector<const NdArray*> d;
    for (const auto& p : v.comp) d.push_back(&p.blocks.at(key));
    out.blocks.emplace(key, split_block(out.mode, key, nd, d));
  }
  return out;
}

VectorCoeffs from_divfree(const DivFreeCoeffs& dc) {
  const int nd = dc.ndim();
  VectorCoeffs v;
  for (int i = 0; i < nd; ++i) {
    Pyramid p;
    p.mode = dc.mode;
    p.ext = dc.ext;
    p.jmin = dc.jmin;
    p.degrees = dc.layout[static_cast<std::size_t>(i)];
    v.comp.push_back(std::move(p));
  }
  for (const auto& [key, blk] : dc.blocks) {
    if (blk.rest.empty()) throw std::invalid_argument("block is missing its complement arrays");
    auto d = merge_block(dc.mode, key, nd, blk);
    for (int i = 0; i < nd; ++i) v.comp[static_cast<std::size_t>(i)].blocks.emplace(key, std::move(d[static_cast<std::size_t>(i)]));
  }
  return v;
}

DivFreeCoeffs to_divfree_iso2d(const VectorCoeffs& v) {
  check_kind(v.mode(), v.ndim(), PyramidMode::Isotropic, 2);
  return to_divfree(v);
}
VectorCoeffs from_divfree_iso2d(const DivFreeCoeffs& d) {
  check_kind(d.mode, d.ndim(), PyramidMode::Isotropic, 2);
  return from_divfree(d);
}
DivFreeCoeffs to_divfree_aniso2d(const VectorCoeffs& v) {
  check_kind(v.mode(), v.ndim(), PyramidMode::Anisotropic, 2);
  return to_divfree(v);
}
VectorCoeffs from_divfree_aniso2d(const DivFreeCoeffs& d) {
  check_kind(d.mode, d.ndim(), PyramidMode::Anisotropic, 2);
  return from_divfree(d);
}
DivFreeCoeffs to_divfree_iso3d(const VectorCoeffs& v) {
  check_kind(v.mode(), v.ndim(), PyramidMode::Isotropic, 3);
  return to_divfree(v);
}
VectorCoeffs from_divfree_iso3d(const DivFreeCoeffs& d) {
  check_kind(d.mode, d.ndim(), PyramidMode::Isotropic, 3);
  return from_divfree(d);
}
DivFreeCoeffs to_divfree_aniso3d(const VectorCoeffs& v) {
  check_kind(v.mode(), v.ndim(), PyramidMode::Anisotropic, 3);
  return to_divfree(v);
}
VectorCoeffs from_divfree_aniso3d(const DivFreeCoeffs& d) {
  check_kind(d.mode, d.ndim(), PyramidMode::Anisotropic, 3);
  return from_divfree(d);
}

DivFreeCoeffs divfree_part(const DivFreeCoeffs& d) {
  DivFreeCoeffs out = d;
  for (auto& [k, b] : out.blocks)
    for (auto& r : b.rest) r.fill(0.0);
  return out;
}

double complement_ratio(const DivFreeCoeffs& d) {
  double rest = 0.0, total = 0.0;
  for (const auto& [k, b] : d.blocks) {
    for (const auto& a : b.rest) rest += std::pow(norm_l2(a), 2);
    for (const auto& a : b.main) total += std::pow(norm_l2(a), 2);
  }
  total += rest;
  return total > 0.0 ? std::sqrt(rest / total) : 0.0;
}

NdArray discrete_divergence(const std::vector<NdArray>& c) {
  if (c.empty()) throw std::invalid_argument("no components");
  NdArray d(c[0].extents());
  for (std::size_t i = 0; i < c.size(); ++i) d += backward_diff(c[i], static_cast<int>(i));
  return d;
}

NdArray block_divergence(const BlockKey& key, int nd, const std::vector<const NdArray*>& d) {
  NdArray out(d[0]->extents());
  for (int a = 0; a < nd; ++a) {
    const auto& s = key.axes[static_cast<std::size_t>(a)];
    const double w = std::ldexp(1.0, s.level);
    const NdArray& x = *d[static_cast<std::size_t>(a)];
    if (s.wavelet)
      out += (4.0 * w) * x;
    else
      out += w * backward_diff(x, a);
  }
  return out;
}

}  // namespace dfw
