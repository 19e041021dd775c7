#include "dfw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dfw/splines.hpp"

namespace dfw {

namespace {

StaggeredField evaluate(const DivFreeCoeffs& d) {
  const StaggeredField sites = StaggeredField::staggered(d.ndim(), d.ext.n[0]);
  return eval_at_grid(synthesize_vector(from_divfree(d)), d.layout, Space::Plain, sites);
}

double axis_norm_sq(SplineDegree deg, bool wavelet) { return wavelet ? wavelet_norm_sq(deg) : scaling_norm_sq(deg); }

}  // namespace

double basis_norm(const DivFreeCoeffs& d, const BlockKey& key, std::size_t array) {
  const int nd = d.ndim();
  const SplitBlock& src = d.blocks.at(key);
  DivFreeCoeffs one;
  one.mode = d.mode;
  one.ext = d.ext;
  one.jmin = d.jmin;
  one.layout = d.layout;
  SplitBlock b;
  for (const auto& m : src.main) b.main.emplace_back(m.extents());
  for (const auto& r : src.rest) b.rest.emplace_back(r.extents());
  b.main.at(array).flat()[0] = 1.0;
  one.blocks.emplace(key, std::move(b));
  const VectorCoeffs v = from_divfree(one);

  double total = 0.0;
  for (int i = 0; i < nd; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    double factor = 1.0;
    for (int a = 0; a < nd; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      factor *= axis_norm_sq(d.layout[ui][ua], key.axes[ua].wavelet);
    }
    double sum = 0.0;
    for (double x : v.comp[ui].blocks.at(key).flat()) sum += x * x;
    total += factor * sum;
  }
  return std::sqrt(total);
}

std::size_t detail_count(const DivFreeCoeffs& d) {
  std::size_t count = 0;
  for (const auto& [key, b] : d.blocks) {
    if (key.is_scaling(d.ndim())) continue;
    for (const auto& m : b.main) count += m.size();
  }
  return count;
}

Ranking rank_coefficients(const DivFreeCoeffs& d) {
  Ranking r;
  r.order.reserve(detail_count(d));
  std::vector<double> mag;
  mag.reserve(r.order.capacity());
  for (const auto& [key, b] : d.blocks) {
    if (key.is_scaling(d.ndim())) continue;
    for (std::size_t m = 0; m < b.main.size(); ++m) {
      const double w = basis_norm(d, key, m);
      const auto flat = b.main[m].flat();
      for (std::size_t i = 0; i < flat.size(); ++i) {
        r.order.push_back({key, m, i});
        mag.push_back(w * std::abs(flat[i]));
      }
    }
  }
  std::vector<std::size_t> perm(r.order.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  Ranking sorted;
  sorted.order.reserve(perm.size());
  sorted.magnitude.reserve(perm.size());
  for (std::size_t p : perm) {
    sorted.order.push_back(r.order[p]);
    sorted.magnitude.push_back(mag[p]);
  }
  return sorted;
}

DivFreeCoeffs nbest_select(const DivFreeCoeffs& d, const Ranking& r, std::size_t n) {
  if (n > r.order.size()) throw std::invalid_argument("n exceeds the number of detail coefficients");
  DivFreeCoeffs out = d;
  for (auto& [key, b] : out.blocks) {
    if (key.is_scaling(d.ndim())) continue;
    for (auto& m : b.main) m.fill(0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const CoeffRef& c = r.order[i];
    out.blocks.at(c.key).main[c.array].flat()[c.index] = d.blocks.at(c.key).main[c.array].flat()[c.index];
  }
  return out;
}

DivFreeCoeffs nbest_select(const DivFreeCoeffs& d, std::size_t n) { return nbest_select(d, rank_coefficients(d), n); }

DivFreeCoeffs threshold_select(const DivFreeCoeffs& d, double threshold) {
  const Ranking r = rank_coefficients(d);
  const auto n = static_cast<std::size_t>(
      std::find_if(r.magnitude.begin(), r.magnitude.end(), [&](double m) { return !(m > threshold); }) - r.magnitude.begin());
  return nbest_select(d, r, n);
}

std::vector<std::size_t> log_spaced_counts(std::size_t total, std::size_t count) {
  std::vector<std::size_t> out;
  if (total == 0 || count == 0) return out;
  if (count == 1) return {total};
  const double lt = std::log(static_cast<double>(total));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    auto v = static_cast<std::size_t>(std::llround(std::exp(t * lt)));
    v = std::clamp<std::size_t>(v, 1, total);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

CompressionCurve compression_curve(const DivFreeCoeffs& d, const std::vector<std::size_t>& counts) {
  const Ranking r = rank_coefficients(d);
  const StaggeredField full = evaluate(d);
  const double ref = norm_l2(full);
  CompressionCurve curve;
  curve.total_coeffs = r.order.size();
  for (std::size_t n : counts) {
    StaggeredField diff = evaluate(nbest_select(d, r, std::min(n, r.order.size())));
    diff -= full;
    curve.points.push_back({n, ref > 0.0 ? norm_l2(diff) / ref : 0.0});
  }
  return curve;
}

double fit_slope(CompressionCurve& curve, std::pair<double, double> region) {
  const auto size = static_cast<double>(curve.points.size());
  const auto first = static_cast<std::size_t>(std::ceil(region.first * size));
  const auto last = std::min(curve.points.size(), static_cast<std::size_t>(std::ceil(region.second * size)));
  std::vector<double> x, y;
  for (std::size_t i = first; i < last; ++i) {
    const CurvePoint& p = curve.points[i];
    if (p.err <= 0.0 || p.n == 0) continue;
    x.push_back(std::log(static_cast<double>(p.n)));
    y.push_back(std::log(p.err));
  }
  if (x.size() <= 2) throw std::invalid_argument("slope fit needs at least 3 points with nonzero error");
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double s = sxx > 0.0 ? std::max(0.0, -sxy / sxx) : 0.0;
  curve.slope = s;
  curve.region = {first, last};
  return s;
}

double captured_fraction(const DivFreeCoeffs& d, double fraction) {
  if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("fraction must lie in [0, 1]");
  const std::size_t total = detail_count(d);
  const auto n = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
  const CompressionCurve c = compression_curve(d, {n});
  return 1.0 - c.points.front().err;
}

DivFreeCoeffs zero_divfree(int ndim, std::size_t n, PyramidMode mode, int levels) {
  const Layout layout = div_layout(ndim);
  const std::vector<NdArray> zero(static_cast<std::size_t>(ndim), NdArray(Extents::cube(ndim, n)));
  return divfree_part(to_divfree(analyze_vector(zero, layout, mode, levels)));
}

DivFreeCoeffs planted_power_law(int ndim, std::size_t n, double s, std::uint64_t seed, PyramidMode mode) {
  DivFreeCoeffs d = zero_divfree(ndim, n, mode);
  std::vector<CoeffRef> refs;
  std::vector<double> weight;
  for (const auto& [key, b] : d.blocks) {
    if (key.is_scaling(ndim)) continue;
    for (std::size_t m = 0; m < b.main.size(); ++m) {
      const double w = basis_norm(d, key, m);
      for (std::size_t i = 0; i < b.main[m].size(); ++i) {
        refs.push_back({key, m, i});
        weight.push_back(w);
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(refs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t rank = 0; rank < perm.size(); ++rank) {
    const std::size_t p = perm[rank];
    const double mag = std::pow(static_cast<double>(rank + 1), -(s + 0.5)) / weight[p];
    d.blocks.at(refs[p].key).main[refs[p].array].flat()[refs[p].index] = sign(rng) ? mag : -mag;
  }
  return d;
}

}  // namespace dfw
