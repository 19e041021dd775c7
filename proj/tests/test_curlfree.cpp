#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dfw/curlfree.hpp"
#include "dfw/oracle.hpp"
#include "helpers.hpp"

using namespace dfw;
using testing::random_array;
using testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

BlockKey wavelet_key(int j1, int j2) {
  BlockKey k;
  k.axes[0] = {true, j1};
  k.axes[1] = {true, j2};
  return k;
}

VectorCoeffs single_block(const BlockKey& key, double d1, double d2) {
  const Layout layout = curl_layout(2);
  VectorCoeffs v;
  for (int i = 0; i < 2; ++i) {
    Pyramid p;
    p.mode = PyramidMode::Anisotropic;
    p.ext = Extents::cube(2, 4);
    p.degrees = layout[static_cast<std::size_t>(i)];
    p.blocks.emplace(key, NdArray(block_extents(key, 2), i == 0 ? d1 : d2));
    v.comp.push_back(std::move(p));
  }
  return v;
}

VectorCoeffs random_curl_coeffs(std::size_t n, std::uint64_t seed) {
  return analyze_vector({random_array(Extents::cube(2, n), seed), random_array(Extents::cube(2, n), seed + 1)},
                        curl_layout(2), PyramidMode::Anisotropic);
}

CurlFreeCoeffs analyze_gradient(const StaggeredField& g, Interp mode) {
  const Layout cl = curl_layout(2);
  return to_curlfree_aniso2d(analyze_vector(interp_field(g, cl, Space::Sharp, mode), cl, PyramidMode::Anisotropic));
}

NdArray zero_mean(NdArray p) {
  double m = 0.0;
  for (double v : p.flat()) m += v;
  m /= static_cast<double>(p.size());
  for (auto& v : p.flat()) v -= m;
  return p;
}

}  // namespace

TEST_CASE("frame values at j = (0,0)") {
  const BlockKey k = wavelet_key(0, 0);
  {
    const CurlFreeCoeffs c = to_curlfree_aniso2d(single_block(k, 1.0, 1.0));
    CHECK(c.blocks.at(k).main[0][0] == 1.0);
    CHECK(c.blocks.at(k).rest[0][0] == 0.0);
  }
  {
    const CurlFreeCoeffs c = to_curlfree_aniso2d(single_block(k, 1.0, -1.0));
    CHECK(c.blocks.at(k).main[0][0] == 0.0);
    CHECK(c.blocks.at(k).rest[0][0] == 1.0);
  }
}

TEST_CASE("a unit gradient coefficient at j = (1,2) has weights (2,4)") {
  const BlockKey k = wavelet_key(1, 2);
  CurlFreeCoeffs c = to_curlfree_aniso2d(single_block(k, 0.0, 0.0));
  c.blocks.at(k).main[0].fill(1.0);
  const VectorCoeffs v = from_curlfree_aniso2d(c);
  for (double x : v.comp[0].blocks.at(k).flat()) CHECK(x == 2.0);
  for (double x : v.comp[1].blocks.at(k).flat()) CHECK(x == 4.0);
}

// Unit inputs probe the columns of (inverse matrix) * (matrix).
TEST_CASE("frame inverse is exact at equal scales") {
  for (int j1 = 0; j1 < 4; ++j1)
    for (int j2 = 0; j2 < 4; ++j2) {
      const BlockKey k = wavelet_key(j1, j2);
      for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.3, -2.5}}) {
        const VectorCoeffs v = from_curlfree_aniso2d(to_curlfree_aniso2d(single_block(k, a, b)));
        const double e0 = std::abs(v.comp[0].blocks.at(k)[0] - a), e1 = std::abs(v.comp[1].blocks.at(k)[0] - b);
        if (j1 == j2 && a * b == 0.0) {
          CHECK(e0 == 0.0);
          CHECK(e1 == 0.0);
        } else {
          CHECK(e0 < 1e-15 * (1.0 + std::abs(a)));
          CHECK(e1 < 1e-15 * (1.0 + std::abs(b)));
        }
      }
    }
}

TEST_CASE("roundtrip on random 64^2 coefficients") {
  const VectorCoeffs v = random_curl_coeffs(64, 21);
  const VectorCoeffs w = from_curlfree_aniso2d(to_curlfree_aniso2d(v));
  for (int i = 0; i < 2; ++i)
    for (const auto& [k, b] : v.comp[static_cast<std::size_t>(i)].blocks)
      CHECK(max_abs_diff(b, w.comp[static_cast<std::size_t>(i)].blocks.at(k)) < 1e-12);
}

TEST_CASE("rejects coefficients in the divergence-free layout") {
  const VectorCoeffs v = analyze_vector({random_array(Extents::cube(2, 16), 1), random_array(Extents::cube(2, 16), 2)},
                                        div_layout(2), PyramidMode::Anisotropic);
  CHECK_THROWS_AS(to_curlfree_aniso2d(v), std::invalid_argument);
  const VectorCoeffs iso = analyze_vector({random_array(Extents::cube(2, 16), 1), random_array(Extents::cube(2, 16), 2)},
                                          curl_layout(2), PyramidMode::Isotropic);
  CHECK_THROWS_AS(to_curlfree_aniso2d(iso), std::invalid_argument);
}

TEST_CASE("pressure of zero coefficients is zero") {
  const CurlFreeCoeffs c = to_curlfree_aniso2d(random_curl_coeffs(32, 3));
  CurlFreeCoeffs z = c;
  for (auto& [k, b] : z.blocks) {
    for (auto& a : b.main) a.fill(0.0);
    for (auto& a : b.rest) a.fill(0.0);
  }
  CHECK(max_abs(reconstruct_pressure(z)) == 0.0);
}

TEST_CASE("pressure is linear and ignores the complement") {
  const CurlFreeCoeffs c = to_curlfree_aniso2d(random_curl_coeffs(32, 5));
  const NdArray p = reconstruct_pressure(c);
  CurlFreeCoeffs c3 = c;
  for (auto& [k, b] : c3.blocks)
    for (auto& a : b.main) a *= 3.0;
  CHECK(rel_diff(reconstruct_pressure(c3), 3.0 * p) < 1e-13);
  CHECK(max_abs_diff(reconstruct_pressure(curlfree_part(c)), p) == 0.0);
}

TEST_CASE("gradient fields have no complement") {
  const GradientField g = gen_gradient(2, random_potential(2, 64, 5.0, 17));
  const CurlFreeCoeffs c = analyze_gradient(g.grad, Interp::Fourier);
  double rest = 0.0, all = 0.0;
  for (const auto& [k, b] : c.blocks) {
    for (const auto& a : b.rest) rest += std::pow(norm_l2(a), 2);
    for (const auto& a : b.main) all += std::pow(norm_l2(a), 2);
  }
  CHECK(std::sqrt(rest / (rest + all)) < 1e-10);
}

TEST_CASE("pressure of cos 2 pi x") {
  for (Interp mode : {Interp::Quasi, Interp::Fourier}) {
    const GradientField g = gen_gradient(2, 64, [](const std::array<double, 3>& x) { return std::cos(2 * kPi * x[0]); });
    const NdArray p = reconstruct_pressure(analyze_gradient(g.grad, mode));
    CHECK(rel_diff(p, zero_mean(g.p)) <= 1e-2);
  }
}

TEST_CASE("gradient expansion is the exact derivative of the pressure spline") {
  const std::size_t n = 32;
  const GradientField g = gen_gradient(2, random_potential(2, n, 3.0, 6));
  const CurlFreeCoeffs c = curlfree_part(analyze_gradient(g.grad, Interp::Quasi));
  const Layout cl = curl_layout(2);
  const std::vector<NdArray> u = synthesize_vector(from_curlfree_aniso2d(c));
  const NdArray pc = pressure_coefficients(c);
  // d/dx sum c_k phi1(Nx - k) = N sum (c_k - c_{k-1}) phi0(Nx - k).
  for (int i = 0; i < 2; ++i) {
    NdArray d = static_cast<double>(n) * (pc - shifted(pc, i, 1));
    CHECK(rel_diff(u[static_cast<std::size_t>(i)], d) < 1e-12);
  }
  // Same statement at the sample sites.
  const StaggeredField sites = StaggeredField::staggered(2, n);
  const StaggeredField uv = eval_at_grid(u, cl, Space::Sharp, sites);
  for (int i = 0; i < 2; ++i) {
    const NdArray d = static_cast<double>(n) * (pc - shifted(pc, i, 1));
    const NdArray ev = eval_scalar(d, sites.offset[static_cast<std::size_t>(i)], cl[static_cast<std::size_t>(i)], Space::Sharp);
    CHECK(rel_diff(uv.comp[static_cast<std::size_t>(i)], ev) < 1e-12);
  }
}
