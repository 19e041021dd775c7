#include "dfw/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dfw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<long, 3> wavevector(const Extents& ext, std::size_t flat) {
  const auto idx = unravel(ext, flat);
  std::array<long, 3> q{0, 0, 0};
  for (int a = 0; a < ext.ndim; ++a) q[static_cast<std::size_t>(a)] = wavenumber(idx[static_cast<std::size_t>(a)], ext[a]);
  return q;
}

double q_norm_sq(const std::array<long, 3>& q) {
  return static_cast<double>(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
}

bool touches_nyquist(const std::array<long, 3>& q, const Extents& ext) {
  for (int a = 0; a < ext.ndim; ++a)
    if (2 * q[static_cast<std::size_t>(a)] == static_cast<long>(ext[a])) return true;
  return false;
}

ComplexArray phase_shift(ComplexArray c, const std::array<double, 3>& offset, double sign) {
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    const auto q = wavevector(c.ext, i);
    double ph = 0.0;
    for (int a = 0; a < c.ext.ndim; ++a)
      ph += static_cast<double>(q[static_cast<std::size_t>(a)]) * offset[static_cast<std::size_t>(a)] / static_cast<double>(c.ext[a]);
    if (ph != 0.0) c.data[i] *= std::polar(1.0, sign * kTwoPi * ph);
  }
  return c;
}

ComplexArray derivative(const ComplexArray& c, int axis) {
  ComplexArray d = c;
  for (std::size_t i = 0; i < d.data.size(); ++i) {
    const auto q = wavevector(d.ext, i);
    d.data[i] *= cplx(0.0, kTwoPi * static_cast<double>(q[static_cast<std::size_t>(axis)]));
  }
  return d;
}

void truncate_two_thirds(ComplexArray& c) {
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    const auto q = wavevector(c.ext, i);
    for (int a = 0; a < c.ext.ndim; ++a)
      if (3 * std::abs(q[static_cast<std::size_t>(a)]) > static_cast<long>(c.ext[a])) {
        c.data[i] = 0.0;
        break;
      }
  }
}

void zero_nyquist(ComplexArray& c) {
  for (std::size_t i = 0; i < c.data.size(); ++i)
    if (touches_nyquist(wavevector(c.ext, i), c.ext)) c.data[i] = 0.0;
}

SpectralField empty_like(int ndim, std::size_t n, int ncomp) {
  SpectralField f;
  f.ndim = ndim;
  f.n = n;
  f.comp.assign(static_cast<std::size_t>(ncomp), ComplexArray(Extents::cube(ndim, n)));
  return f;
}

}  // namespace

ComplexArray to_spectral(const NdArray& samples, const std::array<double, 3>& offset) {
  return phase_shift(dft_forward(samples), offset, -1.0);
}

SpectralField to_spectral(const StaggeredField& f) {
  SpectralField s;
  s.ndim = f.ndim;
  s.n = f.n;
  for (std::size_t i = 0; i < f.comp.size(); ++i) s.comp.push_back(to_spectral(f.comp[i], f.offset[i]));
  return s;
}

NdArray sample(const ComplexArray& modes, const std::array<double, 3>& offset) {
  ComplexArray c = phase_shift(modes, offset, 1.0);
  fft_nd(c, true);
  return real_part(c);
}

StaggeredField sample(const SpectralField& f, const std::vector<std::array<double, 3>>& offsets) {
  if (offsets.size() != f.comp.size()) throw std::invalid_argument("offset count does not match components");
  StaggeredField out = StaggeredField::collocated(f.ndim, f.n, static_cast<int>(f.comp.size()));
  out.offset = offsets;
  for (std::size_t i = 0; i < f.comp.size(); ++i) out.comp[i] = sample(f.comp[i], offsets[i]);
  return out;
}

StaggeredField sample_staggered(const SpectralField& f) {
  return sample(f, StaggeredField::staggered(f.ndim, f.n).offset);
}

SpectralField leray_project(SpectralField f) {
  const Extents& ext = f.comp.at(0).ext;
  const int nd = f.ndim;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto q = wavevector(ext, i);
    const double q2 = q_norm_sq(q);
    if (q2 == 0.0) continue;
    cplx dot = 0.0;
    for (int a = 0; a < nd; ++a) dot += static_cast<double>(q[static_cast<std::size_t>(a)]) * f.comp[static_cast<std::size_t>(a)][i];
    for (int a = 0; a < nd; ++a) f.comp[static_cast<std::size_t>(a)][i] -= static_cast<double>(q[static_cast<std::size_t>(a)]) * dot / q2;
  }
  return f;
}

double spectral_divergence(const SpectralField& f) {
  const Extents& ext = f.comp.at(0).ext;
  double m = 0.0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto q = wavevector(ext, i);
    cplx dot = 0.0;
    for (int a = 0; a < f.ndim; ++a) dot += static_cast<double>(q[static_cast<std::size_t>(a)]) * f.comp[static_cast<std::size_t>(a)][i];
    m = std::max(m, std::abs(dot));
  }
  return m;
}

double inner(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.comp.size(); ++c)
    for (std::size_t i = 0; i < a.comp[c].data.size(); ++i) s += (std::conj(a.comp[c][i]) * b.comp[c][i]).real();
  return s;
}

double norm(const SpectralField& a) { return std::sqrt(inner(a, a)); }

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  SpectralField r = a;
  for (std::size_t c = 0; c < r.comp.size(); ++c)
    for (std::size_t i = 0; i < r.comp[c].data.size(); ++i) r.comp[c][i] -= b.comp[c][i];
  return r;
}

SpectralField gen_random_spectral(int ndim, std::size_t n, double exponent, std::uint64_t seed, bool project) {
  if (!is_power_of_two(n)) throw std::invalid_argument("grid size must be a power of two");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f = empty_like(ndim, n, ndim);
  const Extents ext = Extents::cube(ndim, n);
  for (auto& comp : f.comp) {
    NdArray noise(ext);
    for (auto& v : noise.flat()) v = gauss(rng);
    comp = dft_forward(noise);
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const auto q = wavevector(ext, i);
      const double q2 = q_norm_sq(q);
      const double mag = std::abs(comp[i]);
      if (q2 == 0.0 || touches_nyquist(q, ext) || mag == 0.0) {
        comp[i] = 0.0;
        continue;
      }
      comp[i] *= std::pow(q2, -0.25 * (exponent + ndim - 1)) / mag;
    }
  }
  if (project) f = leray_project(std::move(f));
  const double rms = norm(f);
  if (rms > 0.0)
    for (auto& comp : f.comp)
      for (auto& v : comp.data) v /= rms;
  return f;
}

StaggeredField gen_divfree_random(int ndim, std::size_t n, double exponent, std::uint64_t seed) {
  return sample_staggered(gen_random_spectral(ndim, n, exponent, seed, true));
}

StaggeredField gen_compressible_random(int ndim, std::size_t n, double exponent, std::uint64_t seed) {
  return sample_staggered(gen_random_spectral(ndim, n, exponent, seed, false));
}

std::vector<double> energy_spectrum(const SpectralField& f) {
  const Extents& ext = f.comp.at(0).ext;
  std::vector<double> e(f.n / 2 + 1, 0.0);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::lround(std::sqrt(q_norm_sq(wavevector(ext, i)))));
    if (k >= e.size()) continue;
    for (const auto& c : f.comp) e[k] += 0.5 * std::norm(c[i]);
  }
  return e;
}

std::vector<Vortex> default_vortices() {
  return {{0.375, 0.5, 0.06, 1.0}, {0.625, 0.5, 0.06, 1.0}, {0.5, 0.75, 0.06, -0.5}};
}

NdArray vortex_vorticity(std::size_t n, const std::vector<Vortex>& vortices) {
  NdArray w(Extents{n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = static_cast<double>(i) / static_cast<double>(n), y = static_cast<double>(j) / static_cast<double>(n);
      double s = 0.0;
      for (const auto& v : vortices) {
        const double amp = v.circulation / (kTwoPi * v.radius * v.radius);
        for (int px = -2; px <= 2; ++px)
          for (int py = -2; py <= 2; ++py) {
            const double dx = x - v.x - px, dy = y - v.y - py;
            s += amp * std::exp(-(dx * dx + dy * dy) / (2.0 * v.radius * v.radius));
          }
      }
      w(i, j) = s;
    }
  return w;
}

SpectralField gen_vortices_spectral(std::size_t n, const std::vector<Vortex>& vortices) {
  ComplexArray w = to_spectral(vortex_vorticity(n, vortices));
  zero_nyquist(w);
  SpectralField f = empty_like(2, n, 2);
  for (std::size_t i = 0; i < w.data.size(); ++i) {
    const auto q = wavevector(w.ext, i);
    const double q2 = q_norm_sq(q);
    if (q2 == 0.0) continue;
    const cplx psi = w[i] / (kTwoPi * kTwoPi * q2);
    f.comp[0][i] = cplx(0.0, kTwoPi * static_cast<double>(q[1])) * psi;
    f.comp[1][i] = -cplx(0.0, kTwoPi * static_cast<double>(q[0])) * psi;
  }
  return f;
}

StaggeredField gen_vortices(std::size_t n, const std::vector<Vortex>& vortices) {
  return sample_staggered(gen_vortices_spectral(n, vortices));
}

NdArray vorticity(const SpectralField& f) {
  if (f.ndim != 2) throw std::invalid_argument("vorticity is implemented for 2D fields");
  ComplexArray w = derivative(f.comp[1], 0);
  const ComplexArray d = derivative(f.comp[0], 1);
  for (std::size_t i = 0; i < w.data.size(); ++i) w[i] -= d[i];
  return sample(w);
}

NdArray vorticity(const StaggeredField& f) { return vorticity(to_spectral(f)); }

GradientField gen_gradient(int ndim, const ComplexArray& p_modes) {
  GradientField g;
  g.p_modes = p_modes;
  const std::size_t n = p_modes.ext[0];
  g.grad_modes = empty_like(ndim, n, ndim);
  for (int a = 0; a < ndim; ++a) g.grad_modes.comp[static_cast<std::size_t>(a)] = derivative(p_modes, a);
  g.grad = sample_staggered(g.grad_modes);
  g.p = sample(p_modes);
  return g;
}

GradientField gen_gradient(int ndim, std::size_t n, const std::function<double(const std::array<double, 3>&)>& p) {
  NdArray ps(Extents::cube(ndim, n));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto idx = unravel(ps.extents(), i);
    std::array<double, 3> x{0, 0, 0};
    for (int a = 0; a < ndim; ++a)
      x[static_cast<std::size_t>(a)] = static_cast<double>(idx[static_cast<std::size_t>(a)]) / static_cast<double>(n);
    ps[i] = p(x);
  }
  ComplexArray modes = to_spectral(ps);
  zero_nyquist(modes);
  return gen_gradient(ndim, modes);
}

ComplexArray random_potential(int ndim, std::size_t n, double exponent, std::uint64_t seed) {
  const SpectralField f = gen_random_spectral(ndim, n, exponent, seed, false);
  ComplexArray p = f.comp[0];
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    const double q2 = q_norm_sq(wavevector(p.ext, i));
    if (q2 > 0.0) p[i] /= kTwoPi * std::sqrt(q2);
  }
  return p;
}

SpectralField nonlinear_term(const SpectralField& u_in, bool dealias) {
  SpectralField u = u_in;
  if (dealias)
    for (auto& c : u.comp) truncate_two_thirds(c);
  const std::size_t nc = u.comp.size();
  std::vector<NdArray> phys;
  for (const auto& c : u.comp) phys.push_back(sample(c));
  SpectralField out = empty_like(u.ndim, u.n, static_cast<int>(nc));
  for (std::size_t a = 0; a < nc; ++a) {
    NdArray acc(phys[0].extents());
    for (int b = 0; b < u.ndim; ++b) {
      const NdArray grad = sample(derivative(u.comp[a], b));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += phys[static_cast<std::size_t>(b)][i] * grad[i];
    }
    out.comp[a] = to_spectral(acc);
    if (dealias) truncate_two_thirds(out.comp[a]);
    zero_nyquist(out.comp[a]);
  }
  return out;
}

SpectralField taylor_green(std::size_t n) {
  NdArray u(Extents{n, n}), v(Extents{n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const double y = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      u(i, j) = std::sin(x) * std::cos(y);
      v(i, j) = -std::cos(x) * std::sin(y);
    }
  SpectralField f;
  f.ndim = 2;
  f.n = n;
  f.comp = {to_spectral(u), to_spectral(v)};
  return f;
}

}  // namespace dfw
