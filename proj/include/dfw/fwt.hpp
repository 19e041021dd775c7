#pragma once

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "dfw/kernels.hpp"
#include "dfw/ndarray.hpp"
#include "dfw/splines.hpp"

namespace dfw {

enum class PyramidMode { Anisotropic, Isotropic };

/// Scale of a block along one axis. A wavelet axis at level j holds 2^j detail
/// coefficients; a scaling axis at level j holds 2^j coarse coefficients.
struct AxisScale {
  bool wavelet = false;
  int level = 0;
  auto operator<=>(const AxisScale&) const = default;
};

struct BlockKey {
  std::array<AxisScale, 3> axes{};
  auto operator<=>(const BlockKey&) const = default;

  int wavelet_count(int ndim) const;
  bool is_scaling(int ndim) const { return wavelet_count(ndim) == 0; }
};

using Degrees = std::array<SplineDegree, 3>;

/// Multilevel coefficients of one scalar field, one array per block.
struct Pyramid {
  PyramidMode mode = PyramidMode::Anisotropic;
  Extents ext;
  Degrees degrees{SplineDegree::Deg1, SplineDegree::Deg1, SplineDegree::Deg1};
  std::array<int, 3> jmin{0, 0, 0};
  std::map<BlockKey, NdArray> blocks;

  int ndim() const { return ext.ndim; }
  std::size_t coefficient_count() const;
};

/// Level count that leaves a coarsest block of length 4 (0 for n <= 4).
int default_levels(std::size_t n);

/// Block layout of a pyramid with the given shape, without data.
std::vector<BlockKey> block_keys(PyramidMode mode, const Extents& ext, const std::array<int, 3>& jmin);
Extents block_extents(const BlockKey& key, int ndim);
std::array<std::size_t, 3> block_origin(const BlockKey& key, int ndim);

/// Same shape as `p`, all coefficients zero; optionally with different degrees.
Pyramid zeros_like(const Pyramid& p);

/// Splits a Mallat-layout array into blocks and back.
Pyramid from_mallat(const NdArray& mallat, PyramidMode mode, const Degrees& degrees, const std::array<int, 3>& jmin);
NdArray to_mallat(const Pyramid& p);

Pyramid dwt_periodic(const std::vector<double>& signal, SplineDegree degree, int levels);
std::vector<double> idwt_periodic(const Pyramid& p);

/// Full 1D transform along each axis in turn; levels[a] < 0 selects default_levels.
Pyramid anisotropic_forward(const NdArray& field, const Degrees& degrees, std::array<int, 3> levels = {-1, -1, -1});
NdArray anisotropic_inverse(const Pyramid& p);

/// One step along every axis per level; requires equal axis lengths.
Pyramid isotropic_forward(const NdArray& field, const Degrees& degrees, int levels = -1);
NdArray isotropic_inverse(const Pyramid& p);

/// Forward or inverse in the pyramid's own mode.
Pyramid forward(const NdArray& field, PyramidMode mode, const Degrees& degrees, int levels = -1);
NdArray inverse(const Pyramid& p);

/// One periodic level along `axis`, restricted to the sub-box [0, box). Exposed for
/// testing kernel dispatch; `ks` defaults to the active kernel set.
void analyze_axis(NdArray& a, int axis, const std::array<std::size_t, 3>& box, SplineDegree degree,
                  const kernels::KernelSet* ks = nullptr);
void synthesize_axis(NdArray& a, int axis, const std::array<std::size_t, 3>& box, SplineDegree degree,
                     const kernels::KernelSet* ks = nullptr);

}  // namespace dfw
