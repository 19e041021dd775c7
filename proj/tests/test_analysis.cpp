#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dfw/analysis.hpp"
#include "dfw/oracle.hpp"
#include "helpers.hpp"

using namespace dfw;
using testing::random_array;

namespace {

DivFreeCoeffs random_divfree(std::size_t n, PyramidMode mode, std::uint64_t seed) {
  std::vector<NdArray> c{random_array(Extents::cube(2, n), seed), random_array(Extents::cube(2, n), seed + 1)};
  return to_divfree(analyze_vector(c, div_layout(2), mode));
}

bool same_coeffs(const DivFreeCoeffs& a, const DivFreeCoeffs& b) {
  for (const auto& [k, blk] : a.blocks) {
    const SplitBlock& o = b.blocks.at(k);
    for (std::size_t i = 0; i < blk.main.size(); ++i)
      if (max_abs_diff(blk.main[i], o.main[i]) != 0.0) return false;
    for (std::size_t i = 0; i < blk.rest.size(); ++i)
      if (max_abs_diff(blk.rest[i], o.rest[i]) != 0.0) return false;
  }
  return true;
}

std::size_t nonzero_details(const DivFreeCoeffs& d) {
  std::size_t c = 0;
  for (const auto& [k, b] : d.blocks) {
    if (k.is_scaling(d.ndim())) continue;
    for (const auto& m : b.main)
      for (double v : m.flat()) c += v != 0.0;
  }
  return c;
}

}  // namespace

TEST_CASE("selection extremes") {
  const DivFreeCoeffs d = divfree_part(random_divfree(32, PyramidMode::Anisotropic, 1));
  const std::size_t total = detail_count(d);
  CHECK(total == d.main_count() - 2 * 4 * 4);
  CHECK(same_coeffs(nbest_select(d, total), d));

  const DivFreeCoeffs z = nbest_select(d, 0);
  CHECK(nonzero_details(z) == 0);
  for (const auto& [k, b] : z.blocks)
    if (k.is_scaling(2))
      for (std::size_t i = 0; i < b.main.size(); ++i) CHECK(max_abs_diff(b.main[i], d.blocks.at(k).main[i]) == 0.0);

  CHECK(nonzero_details(nbest_select(d, 17)) == 17);
  CHECK_THROWS_AS(nbest_select(d, total + 1), std::invalid_argument);
}

TEST_CASE("one detail coefficient is reproduced by N = 1") {
  DivFreeCoeffs d = zero_divfree(2, 32, PyramidMode::Isotropic);
  for (auto& [k, b] : d.blocks)
    if (!k.is_scaling(2) && k.axes[0].level == 4) {
      b.main[0](3, 1) = -2.5;
      break;
    }
  const CompressionCurve c = compression_curve(d, {0, 1});
  CHECK(c.points[0].err == doctest::Approx(1.0));
  CHECK(c.points[1].err == 0.0);
}

TEST_CASE("count and threshold selections coincide") {
  const DivFreeCoeffs d = divfree_part(random_divfree(32, PyramidMode::Anisotropic, 2));
  const Ranking r = rank_coefficients(d);
  for (std::size_t i = 1; i < r.magnitude.size(); ++i) REQUIRE(r.magnitude[i] <= r.magnitude[i - 1]);
  for (std::size_t n : {1, 10, 100, 500}) CHECK(same_coeffs(nbest_select(d, r, n), threshold_select(d, r.magnitude[n])));
}

TEST_CASE("ranking weights scale with the frame") {
  const DivFreeCoeffs d = zero_divfree(2, 64, PyramidMode::Anisotropic);
  double coarse = 0.0, fine = 0.0;
  for (const auto& [k, b] : d.blocks) {
    if (!k.axes[0].wavelet || !k.axes[1].wavelet) continue;
    const double w = basis_norm(d, k, 0);
    CHECK(w > 0.0);
    if (k.axes[0].level == 2 && k.axes[1].level == 2) coarse = w;
    if (k.axes[0].level == 5 && k.axes[1].level == 5) fine = w;
  }
  // Anisotropic divergence-free functions carry weights 2^j1, 2^j2.
  CHECK(fine / coarse == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("log-spaced counts") {
  const auto c = log_spaced_counts(4080, 30);
  CHECK(c.front() == 1);
  CHECK(c.back() == 4080);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
  CHECK(log_spaced_counts(0, 10).empty());
  CHECK(log_spaced_counts(5, 1) == std::vector<std::size_t>{5});
}

TEST_CASE("compression curves end at zero") {
  for (auto mode : {PyramidMode::Anisotropic, PyramidMode::Isotropic}) {
    const DivFreeCoeffs d = divfree_part(random_divfree(32, mode, 3));
    const CompressionCurve c = compression_curve(d, log_spaced_counts(detail_count(d), 20));
    CHECK(c.points.back().err < 1e-14);
    CHECK(c.total_coeffs == detail_count(d));
  }
}

// The frame is not orthogonal, so monotonicity holds for structured fields
// but not for white coefficients (those can exceed 1 at mid N).
TEST_CASE("compression curves of structured fields are monotone") {
  std::vector<DivFreeCoeffs> fields;
  for (double s : {0.75, 1.0, 1.5}) fields.push_back(planted_power_law(2, 64, s, 2));
  const StaggeredField v = gen_vortices(64, default_vortices());
  fields.push_back(divfree_part(
      to_divfree(analyze_vector(fourier_project(v, div_layout(2)), div_layout(2), PyramidMode::Anisotropic))));
  for (const auto& d : fields) {
    const CompressionCurve c = compression_curve(d, log_spaced_counts(detail_count(d), 30));
    for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].err <= c.points[i - 1].err + 1e-15);
  }
}

TEST_CASE("planted power laws") {
  for (double s : {0.75, 1.0, 1.5, 2.0}) {
    for (auto mode : {PyramidMode::Anisotropic, PyramidMode::Isotropic}) {
      CAPTURE(s);
      const DivFreeCoeffs d = planted_power_law(2, 64, s, 5, mode);
      CompressionCurve c = compression_curve(d, log_spaced_counts(detail_count(d), 30));
      const double fit = fit_slope(c);
      CHECK(fit == doctest::Approx(s).epsilon(0.1 / s));
      CHECK(c.slope == fit);
      CHECK(c.region.second > c.region.first);
    }
  }
  const DivFreeCoeffs d3 = planted_power_law(3, 16, 1.0, 5);
  CompressionCurve c3 = compression_curve(d3, log_spaced_counts(detail_count(d3), 30));
  CHECK(fit_slope(c3) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("white coefficients follow the l2 tail sum") {
  // All normalized magnitudes equal: err(N)^2 ~ (T - N) / T.
  DivFreeCoeffs d = planted_power_law(2, 64, -0.5, 8);
  const std::size_t total = detail_count(d);
  const CompressionCurve c = compression_curve(d, {total / 4, total / 2, 3 * total / 4});
  for (const auto& p : c.points) {
    const double expect = std::sqrt(1.0 - static_cast<double>(p.n) / static_cast<double>(total));
    CHECK(p.err == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_CASE("slope fitting edge cases") {
  CompressionCurve flat;
  for (std::size_t n : {1, 2, 4, 8, 16, 32}) flat.points.push_back({n, 0.3});
  CHECK(fit_slope(flat, {0.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(fit_slope(flat, {0.0, 0.3}), std::invalid_argument);
  CompressionCurve rising;
  for (std::size_t n : {1, 2, 4, 8}) rising.points.push_back({n, static_cast<double>(n)});
  CHECK(fit_slope(rising, {0.0, 1.0}) == 0.0);
}

TEST_CASE("vortex fields compress well") {
  const StaggeredField v = gen_vortices(128, default_vortices());
  const DivFreeCoeffs d = to_divfree(analyze_vector(fourier_project(v, div_layout(2)), div_layout(2), PyramidMode::Anisotropic));
  CHECK(complement_ratio(d) < 1e-8);
  CHECK(captured_fraction(divfree_part(d), 0.05) >= 0.99);
  CHECK(captured_fraction(divfree_part(d), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(captured_fraction(d, 1.5), std::invalid_argument);
}
