#include "dfw/splines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dfw {

const char* to_string(SplineDegree d) { return d == SplineDegree::Deg1 ? "Deg1" : "Deg2"; }

Taps FilterBank::scaled(const Taps& t) const {
  Taps out = t;
  for (auto& v : out.c) v *= normalization;
  return out;
}

FilterBank filter_bank(SplineDegree degree) {
  FilterBank b;
  b.degree = degree;
  b.normalization = std::numbers::sqrt2;
  if (degree == SplineDegree::Deg1) {
    b.h_star = {{-1.0 / 8, 1.0 / 4, 3.0 / 4, 1.0 / 4, -1.0 / 8}, -2};
    b.g_star = {{-1.0 / 4, 1.0 / 2, -1.0 / 4}, 0};
    b.h = {{1.0 / 4, 1.0 / 2, 1.0 / 4}, -1};
    b.g = {{-1.0 / 8, -1.0 / 4, 3.0 / 4, -1.0 / 4, -1.0 / 8}, -1};
  } else {
    b.h_star = {{-1.0 / 4, 3.0 / 4, 3.0 / 4, -1.0 / 4}, -1};
    b.g_star = {{1.0 / 8, -3.0 / 8, 3.0 / 8, -1.0 / 8}, -1};
    b.h = {{1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8}, -1};
    b.g = {{-1.0 / 4, -3.0 / 4, 3.0 / 4, 1.0 / 4}, -1};
  }
  return b;
}

double eval_scaling(SplineDegree degree, double x) {
  if (degree == SplineDegree::Deg1) return std::max(0.0, 1.0 - std::abs(x));
  // Quadratic B-spline on [-1, 2].
  const double t = x + 1.0;
  if (t <= 0.0 || t >= 3.0) return 0.0;
  if (t < 1.0) return 0.5 * t * t;
  if (t < 2.0) return 0.5 * (-2.0 * t * t + 6.0 * t - 3.0);
  const double u = 3.0 - t;
  return 0.5 * u * u;
}

double eval_scaling_deriv(SplineDegree degree, double x) {
  if (degree == SplineDegree::Deg1) {
    if (x <= -1.0 || x >= 1.0 || x == 0.0) return 0.0;
    return x < 0.0 ? 1.0 : -1.0;
  }
  return eval_scaling(SplineDegree::Deg1, x) - eval_scaling(SplineDegree::Deg1, x - 1.0);
}

namespace {

template <class Phi>
double two_scale(SplineDegree degree, double x, Phi&& phi) {
  // The table taps times sqrt2, and the outer sqrt2, combine to a factor 2.
  const Taps g = filter_bank(degree).g;
  double s = 0.0;
  for (int k = g.start; k <= g.last(); ++k) s += g.at(k) * phi(2.0 * x - k);
  return 2.0 * s;
}

}  // namespace

double eval_wavelet(SplineDegree degree, double x) {
  if (x <= -1.0 || x >= 2.0) return 0.0;
  return two_scale(degree, x, [degree](double y) { return eval_scaling(degree, y); });
}

double eval_wavelet_deriv(SplineDegree degree, double x) {
  if (x <= -1.0 || x >= 2.0) return 0.0;
  return 2.0 * two_scale(degree, x, [degree](double y) { return eval_scaling_deriv(degree, y); });
}

double scaling_norm_sq(SplineDegree degree) {
  return integrate_half_grid([degree](double x) { return std::pow(eval_scaling(degree, x), 2); }, -1.0, 2.0);
}

double wavelet_norm_sq(SplineDegree degree) {
  return integrate_half_grid([degree](double x) { return std::pow(eval_wavelet(degree, x), 2); }, -1.0, 2.0);
}

}  // namespace dfw
