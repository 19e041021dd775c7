#pragma once

#include <vector>

namespace dfw {

/// Deg1 spans the piecewise-linear spaces (phi0, psi0), Deg2 the quadratic ones (phi1, psi1).
enum class SplineDegree { Deg1, Deg2 };

const char* to_string(SplineDegree d);

/// Finite filter with taps c[0..size) sitting at indices start..start+size-1.
struct Taps {
  std::vector<double> c;
  int start = 0;

  int size() const { return static_cast<int>(c.size()); }
  int last() const { return start + size() - 1; }
  double at(int l) const { return (l < start || l > last()) ? 0.0 : c[static_cast<std::size_t>(l - start)]; }
};

/// Biorthogonal spline filter quadruple. The stored taps are the rational table
/// values; the transform taps are those multiplied by `normalization` (sqrt 2).
struct FilterBank {
  SplineDegree degree;
  Taps h, g, h_star, g_star;
  double normalization;

  Taps scaled(const Taps& t) const;
};

FilterBank filter_bank(SplineDegree degree);

/// phi0 is the hat on [-1, 1]; phi1 the quadratic B-spline on [-1, 2] with phi1' = phi0 - phi0(. - 1).
double eval_scaling(SplineDegree degree, double x);
double eval_scaling_deriv(SplineDegree degree, double x);

/// psi(x) = sqrt2 * sum_k g_k phi(2x - k), support [-1, 2] for both degrees.
double eval_wavelet(SplineDegree degree, double x);
double eval_wavelet_deriv(SplineDegree degree, double x);

/// Squared L2 norms, computed by exact piecewise quadrature.
double scaling_norm_sq(SplineDegree degree);
double wavelet_norm_sq(SplineDegree degree);

/// Exact integral of a piecewise polynomial of degree <= 5 with breakpoints on the half-integers.
template <class F>
double integrate_half_grid(F&& f, double a, double b);

}  // namespace dfw

#include <cmath>

namespace dfw {

template <class F>
double integrate_half_grid(F&& f, double a, double b) {
  // 3-point Gauss-Legendre per half-unit cell is exact up to degree 5.
  static const double node = std::sqrt(0.6);
  double sum = 0.0;
  for (double lo = a; lo < b - 1e-12; lo += 0.5) {
    const double mid = lo + 0.25;
    const double r = 0.25;
    sum += r * (5.0 / 9.0 * f(mid - r * node) + 8.0 / 9.0 * f(mid) + 5.0 / 9.0 * f(mid + r * node));
  }
  return sum;
}

}  // namespace dfw
