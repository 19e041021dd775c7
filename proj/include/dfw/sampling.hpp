#pragma once

#include <array>
#include <vector>

#include "dfw/fft.hpp"
#include "dfw/fwt.hpp"
#include "dfw/ndarray.hpp"
#include "dfw/splines.hpp"

namespace dfw {

/// Plain spaces use phi(Nx - k); sharp spaces the half-shifted phi(Nx - 1/2 - k).
enum class Space { Plain, Sharp };

/// How point samples become spline coefficients.
///  Quasi: local 3-tap rule, exact for quadratics, order 4.
///  Fourier: biorthogonal projection of the trigonometric interpolant.
///  Exact: periodic spline interpolation (DFT deconvolution).
enum class Interp { Quasi, Fourier, Exact };

/// Where 1D samples sit relative to a degree-2 basis: at its knots or at its centers.
enum class SampleSites { Knots, Centers };

/// Periodic vector field on an N^d grid; component c is sampled at (m + offset[c]) / N.
struct StaggeredField {
  int ndim = 0;
  std::size_t n = 0;
  std::vector<NdArray> comp;
  std::vector<std::array<double, 3>> offset;

  /// Component i sampled half a cell along axis i (the divergence-free layout).
  static StaggeredField staggered(int ndim, std::size_t n);
  static StaggeredField collocated(int ndim, std::size_t n, int ncomp);

  bool has_standard_stagger() const;
  StaggeredField zeros_like() const;
  StaggeredField& operator+=(const StaggeredField& o);
  StaggeredField& operator-=(const StaggeredField& o);
  StaggeredField& operator*=(double s);
};

StaggeredField operator+(StaggeredField a, const StaggeredField& b);
StaggeredField operator-(StaggeredField a, const StaggeredField& b);
StaggeredField operator*(double s, StaggeredField a);
double norm_l2(const StaggeredField& f);

/// Per-component degree layouts. Div: Deg2 along the component's own axis.
/// Curl: Deg1 along the component's own axis.
using Layout = std::vector<Degrees>;
Layout div_layout(int ndim);
Layout curl_layout(int ndim);

/// Index offset o such that coefficient k sits on sample k - o; throws when the
/// sample sites are not the basis centers.
long center_offset(double sample_offset, Space space, SplineDegree degree);

std::vector<double> quasi_interp_1d(const std::vector<double>& samples, SplineDegree degree,
                                    SampleSites sites = SampleSites::Knots);

/// Scalar versions for one component.
NdArray interp_scalar(const NdArray& samples, const std::array<double, 3>& offset, const Degrees& degrees,
                      Space space, Interp mode);
NdArray eval_scalar(const NdArray& coeffs, const std::array<double, 3>& offset, const Degrees& degrees,
                    Space space);

/// Spline coefficients (level J) of every component, in the given layout.
std::vector<NdArray> interp_field(const StaggeredField& f, const Layout& layout, Space space, Interp mode);

/// Evaluates the expansion at the sample sites of `sites` (only its offsets are used).
StaggeredField eval_at_grid(const std::vector<NdArray>& coeffs, const Layout& layout, Space space,
                            const StaggeredField& sites);

/// Fourier transform of the dual scaling function, infinite product truncated at `depth`.
cplx dual_scaling_fourier(SplineDegree degree, double xi, int depth = 40);

/// Biorthogonal projection of a trigonometric field onto the layout's spline spaces.
std::vector<NdArray> fourier_project(const StaggeredField& f, const Layout& layout, Space space = Space::Plain);

}  // namespace dfw
