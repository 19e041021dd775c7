#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dfw/hodge.hpp"
#include "dfw/oracle.hpp"
#include "helpers.hpp"

using namespace dfw;
using testing::random_array;
using testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// Samples of a divergence-free spline expansion with random coefficients.
StaggeredField spline_divfree_field(int nd, std::size_t n, std::uint64_t seed) {
  const Layout layout = div_layout(nd);
  std::vector<NdArray> c;
  for (int i = 0; i < nd; ++i) c.push_back(random_array(Extents::cube(nd, n), seed + static_cast<std::uint64_t>(i)));
  const DivFreeCoeffs d = divfree_part(to_divfree(analyze_vector(c, layout, PyramidMode::Anisotropic)));
  return eval_divfree(d, n);
}

double tail_slope(const std::vector<double>& h) {
  const std::size_t first = h.size() / 2;
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  const auto k = static_cast<double>(h.size() - first);
  for (std::size_t i = first; i < h.size(); ++i) {
    mx += static_cast<double>(i) / k;
    my += std::log(h[i]) / k;
  }
  for (std::size_t i = first; i < h.size(); ++i) {
    sxy += (static_cast<double>(i) - mx) * (std::log(h[i]) - my);
    sxx += (static_cast<double>(i) - mx) * (static_cast<double>(i) - mx);
  }
  return sxy / sxx;
}

NdArray zero_mean(NdArray p) {
  double m = 0.0;
  for (double v : p.flat()) m += v;
  m /= static_cast<double>(p.size());
  for (auto& v : p.flat()) v -= m;
  return p;
}

}  // namespace

TEST_CASE("zero field") {
  const HodgeResult r = hodge_decompose(StaggeredField::staggered(2, 16));
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.residual_history.empty());
  const auto [d, c] = reconstruct_parts(r);
  CHECK(norm_l2(d) == 0.0);
  CHECK(norm_l2(c) == 0.0);
  CHECK(max_abs(hodge_pressure(r)) == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  const StaggeredField f = gen_compressible_random(2, 16, 2.0, 1);
  HodgeConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(hodge_decompose(f, cfg), std::invalid_argument);
  cfg = {};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(hodge_decompose(f, cfg), std::invalid_argument);
  CHECK_THROWS_AS(hodge_decompose(StaggeredField::collocated(2, 16, 2)), std::invalid_argument);
}

TEST_CASE("a field in the divergence-free spline space is split in one iteration") {
  const StaggeredField f = spline_divfree_field(2, 32, 4);
  HodgeConfig cfg;
  cfg.interp = Interp::Exact;
  const HodgeResult r = hodge_decompose(f, cfg);
  REQUIRE(!r.residual_history.empty());
  CHECK(r.residual_history.front() < 1e-10);
  CHECK(r.iterations == 1);
  const auto [d, c] = reconstruct_parts(r);
  CHECK(norm_l2(c) < 1e-10 * norm_l2(f));
  CHECK(rel_diff(d.comp[0], f.comp[0]) < 1e-10);
}

TEST_CASE("smooth gradient field") {
  const GradientField g = gen_gradient(2, 64, [](const std::array<double, 3>& x) {
    return std::cos(2 * kPi * x[0]) + std::sin(2 * kPi * x[1]);
  });
  const HodgeResult r = hodge_decompose(g.grad);
  CHECK(r.converged);
  const auto [d, c] = reconstruct_parts(r);
  CHECK(norm_l2(d) < 1e-3 * norm_l2(g.grad));
  CHECK(rel_diff(hodge_pressure(r), zero_mean(g.p)) <= 1e-2);
}

TEST_CASE("parts add up to the input minus the recorded residual") {
  const StaggeredField f = gen_compressible_random(2, 32, 5.0 / 3.0, 2);
  HodgeConfig cfg;
  cfg.epsilon = 1e-9;
  const HodgeResult r = hodge_decompose(f, cfg);
  REQUIRE(r.converged);
  const auto [d, c] = reconstruct_parts(r);
  StaggeredField sum = d + c;
  sum -= f;
  CHECK(std::abs(norm_l2(sum) / norm_l2(f) - r.residual_history.back()) < 1e-10);
  StaggeredField gap = sum + r.residual;
  CHECK(norm_l2(gap) < 1e-10 * norm_l2(f));
  CHECK(r.residual_history.back() < cfg.epsilon);
  for (double h : r.residual_history) CHECK(std::isfinite(h));

  // The accumulated divergence-free coefficients are discretely divergence-free.
  const auto coeffs = synthesize_vector(from_divfree(r.div));
  CHECK(norm_l2(discrete_divergence(coeffs)) < 1e-10 * std::hypot(norm_l2(coeffs[0]), norm_l2(coeffs[1])));
}

TEST_CASE("monotone exponential tail") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (Interp mode : {Interp::Quasi, Interp::Fourier, Interp::Exact}) {
      CAPTURE(seed);
      HodgeConfig cfg;
      cfg.epsilon = 1e-6;
      cfg.interp = mode;
      const HodgeResult r = hodge_decompose(gen_compressible_random(2, 32, 5.0 / 3.0, seed), cfg);
      CHECK(r.converged);
      const auto& h = r.residual_history;
      for (std::size_t i = 3; i < h.size(); ++i) CHECK(h[i] < h[i - 1]);
      CHECK(tail_slope(h) < -0.01);
    }
  }
}

TEST_CASE("non-convergence is reported, not thrown") {
  HodgeConfig cfg;
  cfg.max_iter = 3;
  const HodgeResult r = hodge_decompose(gen_compressible_random(2, 32, 5.0 / 3.0, 5), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.residual_history.size() == 3);
}

TEST_CASE("history recording can be switched off") {
  HodgeConfig cfg;
  cfg.record_history = false;
  cfg.epsilon = 1e-4;
  const HodgeResult r = hodge_decompose(gen_compressible_random(2, 16, 5.0 / 3.0, 5), cfg);
  CHECK(r.converged);
  CHECK(r.residual_history.empty());
  CHECK(r.iterations > 0);
}

TEST_CASE("rerunning on the divergence-free part leaves almost no gradient") {
  HodgeConfig cfg;
  const HodgeResult r = hodge_decompose(gen_compressible_random(2, 32, 5.0 / 3.0, 6), cfg);
  const StaggeredField u_div = reconstruct_parts(r).first;
  const HodgeResult r2 = hodge_decompose(u_div, cfg);
  CHECK(r2.converged);
  CHECK(norm_l2(reconstruct_parts(r2).second) <= 10 * cfg.epsilon * norm_l2(u_div));
}

TEST_CASE("Taylor-Green advection has no divergence-free part") {
  const StaggeredField f = sample_staggered(nonlinear_term(taylor_green(32)));
  const HodgeResult r = hodge_decompose(f);
  CHECK(r.converged);
  CHECK(norm_l2(reconstruct_parts(r).first) < 1e-2 * norm_l2(f));
}

TEST_CASE("agrees with the Leray projection on an advection term") {
  const SpectralField u = gen_random_spectral(2, 64, 5.0 / 3.0, 7, true);
  const SpectralField nl = nonlinear_term(u);
  const StaggeredField f = sample_staggered(nl);
  const StaggeredField leray = sample_staggered(leray_project(nl));
  HodgeConfig cfg;
  cfg.epsilon = 1e-6;
  StaggeredField diff = reconstruct_parts(hodge_decompose(f, cfg)).first;
  diff -= leray;
  CHECK(norm_l2(diff) <= 0.05 * norm_l2(f));
}

TEST_CASE("3D extracts the divergence-free part only") {
  const StaggeredField f = gen_divfree_random(3, 16, 5.0 / 3.0, 3);
  const HodgeResult r = hodge_decompose(f);
  CHECK(r.converged);
  CHECK(r.curl.blocks.empty());
  const auto [d, c] = reconstruct_parts(r);
  CHECK(norm_l2(c) == 0.0);
  StaggeredField gap = d + r.residual;
  gap -= f;
  CHECK(norm_l2(gap) < 1e-10 * norm_l2(f));
  CHECK(norm_l2(r.residual) < 0.1 * norm_l2(f));
  CHECK_THROWS_AS(hodge_pressure(r), std::invalid_argument);

  HodgeConfig cfg;
  cfg.interp = Interp::Exact;
  const StaggeredField s = spline_divfree_field(3, 8, 9);
  const HodgeResult rs = hodge_decompose(s, cfg);
  CHECK(rs.residual_history.front() < 1e-10);
}
