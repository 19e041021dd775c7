#include "dfw/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfw {

StaggeredField StaggeredField::staggered(int ndim, std::size_t n) {
  StaggeredField f = collocated(ndim, n, ndim);
  for (int i = 0; i < ndim; ++i) f.offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.5;
  return f;
}

StaggeredField StaggeredField::collocated(int ndim, std::size_t n, int ncomp) {
  if (ndim < 1 || ndim > 3) throw std::invalid_argument("field dimension must be 1 to 3");
  if (!is_power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
  StaggeredField f;
  f.ndim = ndim;
  f.n = n;
  f.comp.assign(static_cast<std::size_t>(ncomp), NdArray(Extents::cube(ndim, n)));
  f.offset.assign(static_cast<std::size_t>(ncomp), {0.0, 0.0, 0.0});
  return f;
}

bool StaggeredField::has_standard_stagger() const {
  if (static_cast<int>(comp.size()) != ndim) return false;
  for (int i = 0; i < ndim; ++i)
    for (int a = 0; a < ndim; ++a)
      if (offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] != (i == a ? 0.5 : 0.0)) return false;
  return true;
}

StaggeredField StaggeredField::zeros_like() const {
  StaggeredField z = *this;
  for (auto& c : z.comp) c.fill(0.0);
  return z;
}

StaggeredField& StaggeredField::operator+=(const StaggeredField& o) {
  if (o.comp.size() != comp.size()) throw std::invalid_argument("component count mismatch");
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] += o.comp[i];
  return *this;
}

StaggeredField& StaggeredField::operator-=(const StaggeredField& o) {
  if (o.comp.size() != comp.size()) throw std::invalid_argument("component count mismatch");
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] -= o.comp[i];
  return *this;
}

StaggeredField& StaggeredField::operator*=(double s) {
  for (auto& c : comp) c *= s;
  return *this;
}

StaggeredField operator+(StaggeredField a, const StaggeredField& b) { return a += b; }
StaggeredField operator-(StaggeredField a, const StaggeredField& b) { return a -= b; }
StaggeredField operator*(double s, StaggeredField a) { return a *= s; }

double norm_l2(const StaggeredField& f) {
  double s = 0.0;
  for (const auto& c : f.comp) {
    const double n = norm_l2(c);
    s += n * n;
  }
  return std::sqrt(s);
}

Layout div_layout(int ndim) {
  Layout l(static_cast<std::size_t>(ndim));
  for (int i = 0; i < ndim; ++i) {
    l[static_cast<std::size_t>(i)].fill(SplineDegree::Deg1);
    l[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = SplineDegree::Deg2;
  }
  return l;
}

Layout curl_layout(int ndim) {
  Layout l(static_cast<std::size_t>(ndim));
  for (int i = 0; i < ndim; ++i) {
    l[static_cast<std::size_t>(i)].fill(SplineDegree::Deg2);
    l[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = SplineDegree::Deg1;
  }
  return l;
}

namespace {

double basis_shift(Space s) { return s == Space::Sharp ? 0.5 : 0.0; }
double basis_center(SplineDegree d) { return d == SplineDegree::Deg2 ? 0.5 : 0.0; }

NdArray stencil(const NdArray& a, int axis, double wm, double w0, double wp) {
  NdArray out = w0 * a;
  out += wm * shifted(a, axis, 1);
  out += wp * shifted(a, axis, -1);
  return out;
}

// Multiplies every DFT mode by prod_a factor(a, q_a), where q_a is the signed wavenumber.
template <class F>
ComplexArray modulate(ComplexArray c, int ndim, F&& factor) {
  const Extents& ext = c.ext;
  std::vector<std::vector<cplx>> tables(static_cast<std::size_t>(ndim));
  for (int a = 0; a < ndim; ++a) {
    auto& t = tables[static_cast<std::size_t>(a)];
    t.resize(ext[a]);
    for (std::size_t i = 0; i < ext[a]; ++i) t[i] = factor(a, wavenumber(i, ext[a]));
  }
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    const auto idx = unravel(ext, i);
    cplx f = 1.0;
    for (int a = 0; a < ndim; ++a) f *= tables[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    c.data[i] *= f;
  }
  return c;
}

}  // namespace

long center_offset(double sample_offset, Space space, SplineDegree degree) {
  const double o = sample_offset - basis_shift(space) - basis_center(degree);
  const double r = std::round(o);
  if (std::abs(o - r) > 1e-12)
    throw std::invalid_argument("sample sites do not coincide with basis centers for this space");
  return static_cast<long>(r);
}

std::vector<double> quasi_interp_1d(const std::vector<double>& f, SplineDegree degree, SampleSites sites) {
  const std::size_t n = f.size();
  if (n == 0) return {};
  if (degree == SplineDegree::Deg1) return f;
  std::vector<double> c(n);
  auto at = [&](long i) { return f[static_cast<std::size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n))]; };
  for (long l = 0; l < static_cast<long>(n); ++l) {
    if (sites == SampleSites::Knots)
      c[static_cast<std::size_t>(l)] = 0.625 * (at(l) + at(l + 1)) - 0.125 * (at(l - 1) + at(l + 2));
    else
      c[static_cast<std::size_t>(l)] = (-at(l - 1) + 10.0 * at(l) - at(l + 1)) / 8.0;
  }
  return c;
}

cplx dual_scaling_fourier(SplineDegree degree, double xi, int depth) {
  double prod = 1.0;
  for (int j = 1; j <= depth; ++j) prod *= 2.0 - std::cos(std::ldexp(xi, -j));
  const double half = 0.5 * xi;
  const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
  if (degree == SplineDegree::Deg1) return sinc * sinc * prod;
  return std::polar(sinc * prod, -half);
}

NdArray interp_scalar(const NdArray& samples, const std::array<double, 3>& offset, const Degrees& degrees,
                      Space space, Interp mode) {
  const int nd = samples.ndim();
  const std::size_t n = samples.extent(0);
  if (mode == Interp::Fourier) {
    const double tau = basis_shift(space);
    const ComplexArray c = modulate(dft_forward(samples), nd, [&](int a, long q) {
      const auto ua = static_cast<std::size_t>(a);
      const double xi = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(samples.extent(a));
      return std::conj(dual_scaling_fourier(degrees[ua], xi)) * std::polar(1.0, xi * (tau - offset[ua]));
    });
    ComplexArray spatial = c;
    fft_nd(spatial, true);
    return real_part(spatial);
  }
  NdArray r = samples;
  if (mode == Interp::Exact) {
    ComplexArray c = modulate(dft_forward(samples), nd, [&](int a, long q) -> cplx {
      if (degrees[static_cast<std::size_t>(a)] == SplineDegree::Deg1) return 1.0;
      const double xi = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
      return 8.0 / (6.0 + 2.0 * std::cos(xi));
    });
    fft_nd(c, true);
    r = real_part(c);
  } else {
    for (int a = 0; a < nd; ++a)
      if (degrees[static_cast<std::size_t>(a)] == SplineDegree::Deg2) r = stencil(r, a, -0.125, 1.25, -0.125);
  }
  for (int a = 0; a < nd; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const long o = center_offset(offset[ua], space, degrees[ua]);
    if (o != 0) r = shifted(r, a, o);
  }
  return r;
}

NdArray eval_scalar(const NdArray& coeffs, const std::array<double, 3>& offset, const Degrees& degrees, Space space) {
  NdArray r = coeffs;
  for (int a = 0; a < coeffs.ndim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (degrees[ua] == SplineDegree::Deg2) r = stencil(r, a, 0.125, 0.75, 0.125);
    const long o = center_offset(offset[ua], space, degrees[ua]);
    if (o != 0) r = shifted(r, a, -o);
  }
  return r;
}

std::vector<NdArray> interp_field(const StaggeredField& f, const Layout& layout, Space space, Interp mode) {
  if (layout.size() != f.comp.size()) throw std::invalid_argument("layout does not match the component count");
  std::vector<NdArray> out;
  out.reserve(f.comp.size());
  for (std::size_t i = 0; i < f.comp.size(); ++i) out.push_back(interp_scalar(f.comp[i], f.offset[i], layout[i], space, mode));
  return out;
}

StaggeredField eval_at_grid(const std::vector<NdArray>& coeffs, const Layout& layout, Space space,
                            const StaggeredField& sites) {
  if (coeffs.size() != sites.comp.size() || layout.size() != coeffs.size())
    throw std::invalid_argument("component count mismatch");
  StaggeredField out = sites;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.comp[i] = eval_scalar(coeffs[i], sites.offset[i], layout[i], space);
  return out;
}

std::vector<NdArray> fourier_project(const StaggeredField& f, const Layout& layout, Space space) {
  return interp_field(f, layout, space, Interp::Fourier);
}

}  // namespace dfw
