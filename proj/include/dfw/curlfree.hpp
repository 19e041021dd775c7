#pragma once

#include "dfw/divfree.hpp"

namespace dfw {

/// d_curl / d_N coefficients of a 2D field in the curl layout (sharp spaces).
/// Detail blocks with one scaling axis carry the one-dimensional edge terms of
/// the pressure expansion; the coarse block stores a least-squares potential.
struct CurlFreeCoeffs : SplitCoeffs {};

CurlFreeCoeffs to_curlfree_aniso2d(const VectorCoeffs& v);
VectorCoeffs from_curlfree_aniso2d(const CurlFreeCoeffs& c);

/// Copy with every complement array zeroed.
CurlFreeCoeffs curlfree_part(const CurlFreeCoeffs& c);

/// Degree-2 x degree-2 spline coefficients (level J, sharp space) of the pressure.
NdArray pressure_coefficients(const CurlFreeCoeffs& c);

/// Pressure sampled at the collocated grid points m / N, mean removed.
NdArray reconstruct_pressure(const CurlFreeCoeffs& c);

}  // namespace dfw
