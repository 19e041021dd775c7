#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dfw/divfree.hpp"

namespace dfw {

/// Position of one divergence-free detail coefficient.
struct CoeffRef {
  BlockKey key;
  std::size_t array = 0;  // index into SplitBlock::main
  std::size_t index = 0;  // flat index within the array
};

/// Detail coefficients ordered by decreasing normalized magnitude.
/// Ties keep the (block, array, index) order.
struct Ranking {
  std::vector<CoeffRef> order;
  std::vector<double> magnitude;  // normalized, same order
};

/// L2 norm of the vector field spanned by a unit coefficient in
/// blocks.at(key).main[array]; independent of the position within the block.
double basis_norm(const DivFreeCoeffs& d, const BlockKey& key, std::size_t array);

Ranking rank_coefficients(const DivFreeCoeffs& d);

/// Number of divergence-free detail coefficients (the coarse block excluded).
std::size_t detail_count(const DivFreeCoeffs& d);

/// Keeps the n largest detail coefficients and the whole coarse block; other
/// divergence-free coefficients become zero. Complement arrays pass through.
DivFreeCoeffs nbest_select(const DivFreeCoeffs& d, std::size_t n);
DivFreeCoeffs nbest_select(const DivFreeCoeffs& d, const Ranking& r, std::size_t n);

/// Keeps detail coefficients whose normalized magnitude exceeds `threshold`.
DivFreeCoeffs threshold_select(const DivFreeCoeffs& d, double threshold);

struct CurvePoint {
  std::size_t n = 0;
  double err = 0.0;
};

struct CompressionCurve {
  std::vector<CurvePoint> points;
  std::size_t total_coeffs = 0;
  double slope = 0.0;
  std::pair<std::size_t, std::size_t> region{0, 0};  // [first, last) point indices used by the fit
};

/// Roughly `count` distinct integers spaced logarithmically over [1, total].
std::vector<std::size_t> log_spaced_counts(std::size_t total, std::size_t count);

/// Relative L2 error of the n-term approximation against the full expansion,
/// measured on the staggered samples of the field.
CompressionCurve compression_curve(const DivFreeCoeffs& d, const std::vector<std::size_t>& counts);

/// Least-squares slope s of log err = -s log N + c over points whose index lies
/// in [lo, hi) * size; zero errors are skipped. Throws if fewer than 3 points
/// remain. Negative fits are clamped to 0.
double fit_slope(CompressionCurve& curve, std::pair<double, double> region = {0.2, 0.8});

/// 1 - relative L2 error when keeping a fraction of the detail coefficients.
double captured_fraction(const DivFreeCoeffs& d, double fraction);

/// Divergence-free coefficients with zero coarse block and detail magnitudes
/// i^-(s + 1/2), i = 1..total, placed at random positions with random signs.
DivFreeCoeffs planted_power_law(int ndim, std::size_t n, double s, std::uint64_t seed,
                                PyramidMode mode = PyramidMode::Anisotropic);

/// All-zero divergence-free coefficients for an n^ndim grid.
DivFreeCoeffs zero_divfree(int ndim, std::size_t n, PyramidMode mode, int levels = -1);

}  // namespace dfw
