#pragma once

#include <map>
#include <vector>

#include "dfw/fwt.hpp"
#include "dfw/sampling.hpp"

namespace dfw {

/// One pyramid per vector component, all with the same mode, shape and levels.
struct VectorCoeffs {
  std::vector<Pyramid> comp;

  int ndim() const { return comp.empty() ? 0 : comp.front().ndim(); }
  PyramidMode mode() const { return comp.front().mode; }
};

/// Transforms level-J coefficient arrays component by component.
VectorCoeffs analyze_vector(const std::vector<NdArray>& coeffs, const Layout& layout, PyramidMode mode,
                            int levels = -1);
std::vector<NdArray> synthesize_vector(const VectorCoeffs& v);

/// Coefficients of one block after a change of basis.
/// Detail blocks: `main` holds ndim-1 arrays (the divergence-free or gradient
/// parameters), `rest` one complement array.
/// The coarse block: `main` holds the ndim projected component arrays, `rest`
/// the ndim remainder arrays (gradient split: one potential array in `main`).
struct SplitBlock {
  std::vector<NdArray> main;
  std::vector<NdArray> rest;
};

struct SplitCoeffs {
  PyramidMode mode = PyramidMode::Anisotropic;
  Extents ext;
  std::array<int, 3> jmin{0, 0, 0};
  Layout layout;
  std::map<BlockKey, SplitBlock> blocks;

  int ndim() const { return ext.ndim; }
  std::size_t main_count() const;
};

/// d_div / d_n coefficients.
struct DivFreeCoeffs : SplitCoeffs {};

/// Generic change of basis for any mode and dimension.
DivFreeCoeffs to_divfree(const VectorCoeffs& v);
VectorCoeffs from_divfree(const DivFreeCoeffs& d);

DivFreeCoeffs to_divfree_iso2d(const VectorCoeffs& v);
VectorCoeffs from_divfree_iso2d(const DivFreeCoeffs& d);
DivFreeCoeffs to_divfree_aniso2d(const VectorCoeffs& v);
VectorCoeffs from_divfree_aniso2d(const DivFreeCoeffs& d);
DivFreeCoeffs to_divfree_iso3d(const VectorCoeffs& v);
VectorCoeffs from_divfree_iso3d(const DivFreeCoeffs& d);
DivFreeCoeffs to_divfree_aniso3d(const VectorCoeffs& v);
VectorCoeffs from_divfree_aniso3d(const DivFreeCoeffs& d);

/// Copy with every complement array zeroed.
DivFreeCoeffs divfree_part(const DivFreeCoeffs& d);
/// Relative l2 norm of the complement arrays against all coefficients.
double complement_ratio(const DivFreeCoeffs& d);

/// Backward-difference divergence of level-J coefficients in the div layout:
/// D = sum_i (c_i - c_i shifted one cell back along axis i). Zero exactly when
/// the spline field is divergence-free.
NdArray discrete_divergence(const std::vector<NdArray>& coeffs);

/// Per-block divergence: sum_i L_i d_i with L = 4 * 2^j on wavelet axes and
/// 2^j (1 - shift) on scaling axes. Zero exactly for divergence-free blocks.
NdArray block_divergence(const BlockKey& key, int ndim, const std::vector<const NdArray*>& d);

/// Axis weights used by the anisotropic (2^level) and isotropic (1) frames.
double frame_weight(PyramidMode mode, const AxisScale& s);

}  // namespace dfw
