#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "dfw/divfree.hpp"
#include "dfw/oracle.hpp"
#include "dfw/sampling.hpp"
#include "helpers.hpp"

using namespace dfw;
using testing::random_array;
using testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

double slope(const std::vector<double>& ns, const std::vector<double>& errs) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mx += std::log2(ns[i]);
    my += std::log2(errs[i]);
  }
  mx /= static_cast<double>(ns.size());
  my /= static_cast<double>(ns.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sxy += (std::log2(ns[i]) - mx) * (std::log2(errs[i]) - my);
    sxx += (std::log2(ns[i]) - mx) * (std::log2(ns[i]) - mx);
  }
  return sxy / sxx;
}

// Field sampled at its stagger sites from an analytic vector function.
StaggeredField sample_field(int nd, std::size_t n, const std::function<double(int, const std::array<double, 3>&)>& f) {
  StaggeredField s = StaggeredField::staggered(nd, n);
  for (int c = 0; c < nd; ++c) {
    NdArray& a = s.comp[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto idx = unravel(a.extents(), i);
      std::array<double, 3> x{0, 0, 0};
      for (int ax = 0; ax < nd; ++ax)
        x[static_cast<std::size_t>(ax)] =
            (static_cast<double>(idx[static_cast<std::size_t>(ax)]) + s.offset[static_cast<std::size_t>(c)][static_cast<std::size_t>(ax)]) /
            static_cast<double>(n);
      a[i] = f(c, x);
    }
  }
  return s;
}

double smooth(int c, const std::array<double, 3>& x) {
  return std::sin(2 * kPi * x[0] + c) * std::cos(2 * kPi * x[1]) + 0.3 * std::cos(4 * kPi * x[1] - c);
}

// Reference infinite product prod_j m*(xi / 2^j) of the dual lowpass symbol,
// m*(xi) = sum_k h*_k exp(-i k xi) with the table values (sum 1).
std::complex<double> dual_product(SplineDegree d, double xi, int depth) {
  const FilterBank fb = filter_bank(d);
  std::complex<double> p = 1.0;
  for (int j = 1; j <= depth; ++j) {
    const double x = xi / std::ldexp(1.0, j);
    std::complex<double> m = 0.0;
    for (std::size_t k = 0; k < fb.h_star.c.size(); ++k)
      m += fb.h_star.c[k] * std::polar(1.0, -static_cast<double>(fb.h_star.start + static_cast<long>(k)) * x);
    p *= m;
  }
  return p;
}

}  // namespace

TEST_CASE("quasi-interpolation reproduces constants") {
  const std::vector<double> ones(16, 1.0);
  for (auto sites : {SampleSites::Knots, SampleSites::Centers})
    for (double c : quasi_interp_1d(ones, SplineDegree::Deg2, sites)) CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> s = testing::random_vector(16, 3);
  CHECK(quasi_interp_1d(s, SplineDegree::Deg1) == s);
}

TEST_CASE("knot rule on a linear function") {
  const std::size_t n = 32;
  std::vector<double> f(n);
  for (std::size_t l = 0; l < n; ++l) f[l] = static_cast<double>(l) / n;
  const auto c = quasi_interp_1d(f, SplineDegree::Deg2, SampleSites::Knots);
  for (std::size_t l = 1; l + 2 < n; ++l) {
    CHECK(c[l] == doctest::Approx((static_cast<double>(l) + 0.5) / n).epsilon(1e-14));
    // Spline value at knot l: (c_l + c_{l-1}) / 2, phi1(0) = phi1(1) = 1/2.
    if (l >= 2) CHECK((c[l] + c[l - 1]) / 2 == doctest::Approx(f[l]).epsilon(1e-14));
  }
}

TEST_CASE("quasi-interpolation has order 4") {
  for (auto sites : {SampleSites::Knots, SampleSites::Centers}) {
    std::vector<double> ns, errs;
    for (std::size_t n : {16, 32, 64, 128}) {
      const double shift = sites == SampleSites::Knots ? 0.0 : 0.5;
      std::vector<double> f(n);
      for (std::size_t l = 0; l < n; ++l) f[l] = std::sin(2 * kPi * (static_cast<double>(l) + shift) / n);
      const auto c = quasi_interp_1d(f, SplineDegree::Deg2, sites);
      double err = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        // Knots: site m = knot between phi1(.-m) and phi1(.-m+1). Centers: site m + 1/2 = center of phi1(.-m).
        const double v = sites == SampleSites::Knots ? 0.5 * (c[m] + c[(m + n - 1) % n])
                                                     : 0.75 * c[m] + 0.125 * (c[(m + n - 1) % n] + c[(m + 1) % n]);
        err = std::max(err, std::abs(v - f[m]));
      }
      ns.push_back(static_cast<double>(n));
      errs.push_back(err);
    }
    const double s = slope(ns, errs);
    CHECK(s >= -4.3);
    CHECK(s <= -3.7);
  }
}

TEST_CASE("field interpolation and evaluation") {
  SUBCASE("constant fields give constant coefficients") {
    StaggeredField f = StaggeredField::staggered(2, 16);
    for (auto& c : f.comp) c.fill(2.5);
    for (Space sp : {Space::Plain, Space::Sharp})
      for (Interp m : {Interp::Quasi, Interp::Fourier, Interp::Exact}) {
        const Layout layout = sp == Space::Plain ? div_layout(2) : curl_layout(2);
        for (const auto& c : interp_field(f, layout, sp, m))
          for (double v : c.flat()) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));
      }
  }
  SUBCASE("exact interpolation inverts evaluation") {
    for (int nd : {2, 3}) {
      const std::size_t n = nd == 2 ? 32 : 8;
      StaggeredField f = StaggeredField::staggered(nd, n);
      for (int c = 0; c < nd; ++c) f.comp[static_cast<std::size_t>(c)] = random_array(Extents::cube(nd, n), 10 + c);
      for (Space sp : {Space::Plain, Space::Sharp}) {
        const Layout layout = sp == Space::Plain ? div_layout(nd) : curl_layout(nd);
        const StaggeredField back = eval_at_grid(interp_field(f, layout, sp, Interp::Exact), layout, sp, f);
        for (int c = 0; c < nd; ++c) CHECK(rel_diff(back.comp[static_cast<std::size_t>(c)], f.comp[static_cast<std::size_t>(c)]) < 1e-12);
      }
    }
  }
  SUBCASE("a single coefficient samples the scaling functions") {
    const Layout layout = div_layout(2);
    std::vector<NdArray> c{NdArray(Extents::cube(2, 8)), NdArray(Extents::cube(2, 8))};
    c[0](3, 5) = 1.0;
    const StaggeredField s = eval_at_grid(c, layout, Space::Plain, StaggeredField::staggered(2, 8));
    std::vector<double> vals(s.comp[0].flat().begin(), s.comp[0].flat().end());
    std::sort(vals.rbegin(), vals.rend());
    CHECK(vals[0] == 0.75);
    CHECK(vals[1] == 0.125);
    CHECK(vals[2] == 0.125);
    CHECK(vals[3] == 0.0);
    CHECK(max_abs(s.comp[1]) == 0.0);
  }
  SUBCASE("zero coefficients evaluate to zero") {
    const std::vector<NdArray> c{NdArray(Extents::cube(2, 8)), NdArray(Extents::cube(2, 8))};
    const StaggeredField s = eval_at_grid(c, curl_layout(2), Space::Sharp, StaggeredField::staggered(2, 8));
    CHECK(norm_l2(s) == 0.0);
  }
  SUBCASE("interp then eval has order 4 on smooth fields") {
    for (Space sp : {Space::Plain, Space::Sharp}) {
      const Layout layout = sp == Space::Plain ? div_layout(2) : curl_layout(2);
      std::vector<double> ns, errs;
      for (std::size_t n : {16, 32, 64, 128}) {
        const StaggeredField f = sample_field(2, n, smooth);
        StaggeredField d = eval_at_grid(interp_field(f, layout, sp, Interp::Quasi), layout, sp, f);
        d -= f;
        double err = 0.0;
        for (const auto& c : d.comp) err = std::max(err, max_abs(c));
        ns.push_back(static_cast<double>(n));
        errs.push_back(err);
      }
      const double s = slope(ns, errs);
      CHECK(s >= -4.3);
      CHECK(s <= -3.7);
    }
  }
}

TEST_CASE("sample sites must be basis centers") {
  CHECK(center_offset(0.5, Space::Plain, SplineDegree::Deg2) == center_offset(0.5, Space::Plain, SplineDegree::Deg2));
  CHECK_NOTHROW(center_offset(0.0, Space::Plain, SplineDegree::Deg1));
  CHECK_THROWS_AS(center_offset(0.25, Space::Plain, SplineDegree::Deg1), std::invalid_argument);
  CHECK_THROWS_AS(center_offset(0.0, Space::Plain, SplineDegree::Deg2), std::invalid_argument);
  CHECK_NOTHROW(center_offset(0.0, Space::Sharp, SplineDegree::Deg2));
}

TEST_CASE("dual scaling Fourier transform") {
  CHECK(std::abs(dual_scaling_fourier(SplineDegree::Deg1, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(dual_scaling_fourier(SplineDegree::Deg2, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(dual_scaling_fourier(SplineDegree::Deg1, 2 * kPi)) < 1e-15);
  CHECK(std::abs(dual_scaling_fourier(SplineDegree::Deg1, kPi, 40) - dual_scaling_fourier(SplineDegree::Deg1, kPi, 80)) < 1e-12);
  for (auto d : {SplineDegree::Deg1, SplineDegree::Deg2})
    for (double xi : {-4.0 * kPi, -2.5, -0.3, 0.7, kPi, 3.9, 4.0 * kPi}) {
      CAPTURE(xi);
      CHECK(std::abs(dual_scaling_fourier(d, xi) - dual_product(d, xi, 60)) < 1e-12);
    }
}

TEST_CASE("Fourier projection") {
  SUBCASE("constant field") {
    StaggeredField f = StaggeredField::staggered(2, 16);
    for (auto& c : f.comp) c.fill(-1.25);
    for (const auto& c : fourier_project(f, div_layout(2)))
      for (double v : c.flat()) CHECK(v == doctest::Approx(-1.25).epsilon(1e-14));
  }
  // Projection onto the hat axes is second order, so the two rules differ at O(N^-2).
  SUBCASE("agrees with quasi-interpolation up to the projection error") {
    std::vector<double> ns, diffs;
    for (std::size_t n : {32, 64, 128}) {
      const StaggeredField f = sample_field(2, n, smooth);
      const auto a = fourier_project(f, div_layout(2));
      const auto b = interp_field(f, div_layout(2), Space::Plain, Interp::Quasi);
      double d = 0.0;
      for (std::size_t c = 0; c < 2; ++c) d = std::max(d, max_abs_diff(a[c], b[c]));
      ns.push_back(static_cast<double>(n));
      diffs.push_back(d);
    }
    CHECK(diffs.back() < 1e-3);
    const double sl = slope(ns, diffs);
    CHECK(sl < -1.9);
    CHECK(sl > -2.1);
  }
  SUBCASE("keeps the discrete divergence of incompressible fields at zero") {
    for (std::size_t n : {64, 128}) {
      const StaggeredField f = gen_divfree_random(2, n, 5.0 / 3.0, 31);
      const auto c = fourier_project(f, div_layout(2));
      CHECK(norm_l2(discrete_divergence(c)) < 1e-10 * std::hypot(norm_l2(c[0]), norm_l2(c[1])));
    }
  }
}
