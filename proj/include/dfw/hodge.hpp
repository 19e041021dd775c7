#pragma once

#include <utility>
#include <vector>

#include "dfw/curlfree.hpp"
#include "dfw/divfree.hpp"
#include "dfw/sampling.hpp"

namespace dfw {

struct HodgeConfig {
  /// Stop once the l2 norm of the residual samples drops below epsilon times the input norm.
  double epsilon = 1e-8;
  int max_iter = 500;
  /// Fourier applies to the first interpolation only; later residuals use Quasi.
  Interp interp = Interp::Quasi;
  bool record_history = true;
  /// Wavelet levels per axis; negative selects a coarsest block of length 4.
  int levels = -1;
};

struct HodgeResult {
  int ndim = 0;
  std::size_t n = 0;
  /// Sums over iterations of the kept divergence-free and gradient coefficients.
  DivFreeCoeffs div;
  CurlFreeCoeffs curl;  // empty in 3D
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
  /// Pointwise residual left after the last iteration.
  StaggeredField residual;
  double input_norm = 0.0;
};

/// Iterative split of a staggered 2D field into divergence-free and gradient
/// wavelet expansions. In 3D only the divergence-free part is extracted; the
/// loop stops when an iteration removes less than epsilon of the input norm.
HodgeResult hodge_decompose(const StaggeredField& field, const HodgeConfig& cfg = {});

/// (u_div, u_curl) at the input sample sites; u_curl is zero in 3D.
std::pair<StaggeredField, StaggeredField> reconstruct_parts(const HodgeResult& r);

/// Pressure at the grid points m / N, mean removed (2D only).
NdArray hodge_pressure(const HodgeResult& r);

/// Pointwise evaluation of coefficient expansions at standard staggered sites.
StaggeredField eval_divfree(const DivFreeCoeffs& d, std::size_t n);
StaggeredField eval_curlfree(const CurlFreeCoeffs& c, std::size_t n);

}  // namespace dfw
