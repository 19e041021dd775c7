#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "dfw/fft.hpp"
#include "dfw/sampling.hpp"

namespace dfw {

/// Fourier series coefficients of a periodic vector field on the unit torus,
/// u(x) = sum_q u_q exp(2 pi i q.x), stored in DFT index order (wavenumber
/// of index i is wavenumber(i, n)).
struct SpectralField {
  int ndim = 0;
  std::size_t n = 0;
  std::vector<ComplexArray> comp;
};

/// Series coefficients from samples, undoing each component's sample offset.
SpectralField to_spectral(const StaggeredField& f);
ComplexArray to_spectral(const NdArray& samples, const std::array<double, 3>& offset = {0, 0, 0});

/// Exact trigonometric evaluation at (m + offset) / N.
NdArray sample(const ComplexArray& modes, const std::array<double, 3>& offset = {0, 0, 0});
StaggeredField sample(const SpectralField& f, const std::vector<std::array<double, 3>>& offsets);
StaggeredField sample_staggered(const SpectralField& f);

/// u_q - q (q.u_q) / |q|^2 for q != 0; the mean is kept.
SpectralField leray_project(SpectralField f);
/// max_q |q.u_q|.
double spectral_divergence(const SpectralField& f);
/// Mean of u.v over the torus (Parseval).
double inner(const SpectralField& a, const SpectralField& b);
double norm(const SpectralField& a);

SpectralField operator-(const SpectralField& a, const SpectralField& b);

/// Random-phase field with energy spectrum E(k) ~ k^-exponent, unit RMS,
/// Nyquist modes zeroed. Leray-projected unless `project` is false.
SpectralField gen_random_spectral(int ndim, std::size_t n, double exponent, std::uint64_t seed, bool project = true);
StaggeredField gen_divfree_random(int ndim, std::size_t n, double exponent, std::uint64_t seed);
/// Random field with both divergence-free and gradient parts.
StaggeredField gen_compressible_random(int ndim, std::size_t n, double exponent, std::uint64_t seed);

/// Shell-averaged energy spectrum E(k), k = 0 .. n/2.
std::vector<double> energy_spectrum(const SpectralField& f);

struct Vortex {
  double x, y;
  double radius;
  double circulation;
};

/// Three Gaussian vortices, one negative with half the intensity.
std::vector<Vortex> default_vortices();
/// Periodized Gaussian vorticity sum_v G/(2 pi r^2) exp(-|x - c|^2 / (2 r^2)) at the grid points.
NdArray vortex_vorticity(std::size_t n, const std::vector<Vortex>& vortices);
/// Velocity u = (d psi/dy, -d psi/dx) with -lap psi = vorticity (zero-mean part).
SpectralField gen_vortices_spectral(std::size_t n, const std::vector<Vortex>& vortices);
StaggeredField gen_vortices(std::size_t n, const std::vector<Vortex>& vortices);

/// Spectral curl of a 2D field at the collocated grid points.
NdArray vorticity(const SpectralField& f);
NdArray vorticity(const StaggeredField& f);

struct GradientField {
  StaggeredField grad;
  NdArray p;
  SpectralField grad_modes;
  ComplexArray p_modes;
};

/// grad p at the staggered sites and p at the grid points, from the modes of p.
GradientField gen_gradient(int ndim, const ComplexArray& p_modes);
/// Same, from a trigonometric polynomial p sampled at the grid points.
GradientField gen_gradient(int ndim, std::size_t n, const std::function<double(const std::array<double, 3>&)>& p);
/// Random smooth potential with spectrum exponent as for gen_random_spectral.
ComplexArray random_potential(int ndim, std::size_t n, double exponent, std::uint64_t seed);

/// (u.grad) u, products on the grid and derivatives spectrally; 2/3-rule
/// truncation of inputs and output when `dealias` is set.
SpectralField nonlinear_term(const SpectralField& u, bool dealias = true);

/// u = (sin 2 pi x cos 2 pi y, -cos 2 pi x sin 2 pi y).
SpectralField taylor_green(std::size_t n);

}  // namespace dfw
